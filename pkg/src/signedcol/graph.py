"""Simple undirected graphs with stable vertex and edge indexing."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``.

    ``edges[i]`` is the i-th edge as a pair ``(u, v)`` with ``u < v``; edge
    indices follow input order and never change. Use :func:`build_graph`
    rather than calling the constructor directly.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    edge_index: dict[tuple[int, int], int] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def index_of(self, u: int, v: int) -> int:
        """Index of edge ``uv``; raises KeyError if absent."""
        return self.edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_index

    def components(self) -> list[list[int]]:
        """Connected components, each in BFS order from its lowest vertex."""
        seen = [False] * self.n
        out = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in sorted(self.adjacency[u]):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(comp)
        return out


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise VertexOutOfRange(f"vertex {v} not in 0..{n - 1}")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, normalising each edge to ``(min, max)``.

    Loops and repeated edges (in either orientation) are rejected rather
    than dropped.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    norm: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        _check_vertex(u, n)
        _check_vertex(v, n)
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in index:
            raise DuplicateEdge(f"edge {e} given more than once")
        index[e] = len(norm)
        norm.append(e)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(norm), tuple(frozenset(a) for a in adj), index)


@dataclass(frozen=True)
class ColourClassSubgraph:
    """Subgraph of ``parent`` induced by ``members``."""

    parent: Graph
    members: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    def neighbours(self, v: int) -> list[int]:
        return sorted(w for w in self.parent.adjacency[v] if w in self.members)


def induced_subgraph(g: Graph, members: Iterable[int]) -> ColourClassSubgraph:
    members = frozenset(members)
    for v in members:
        _check_vertex(v, g.n)
    edges = tuple(e for e in g.edges if e[0] in members and e[1] in members)
    return ColourClassSubgraph(g, members, edges)


@dataclass(frozen=True)
class BipartitionResult:
    """Either ``sides`` (vertex -> 0/1) or ``odd_cycle`` is set, never both."""

    sides: Optional[dict[int, int]] = None
    odd_cycle: Optional[list[int]] = None

    @property
    def ok(self) -> bool:
        return self.sides is not None

    def __bool__(self) -> bool:
        return self.ok


def is_bipartite(sub: ColourClassSubgraph) -> BipartitionResult:
    """BFS 2-colouring of an induced subgraph.

    On failure the odd cycle is read off the two BFS-tree paths from the
    endpoints of the offending edge back to their common ancestor.
    """
    side: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    depth: dict[int, int] = {}
    for root in sorted(sub.members):
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sub.neighbours(u):
                if w not in side:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif side[w] == side[u]:
                    return BipartitionResult(odd_cycle=_tree_cycle(u, w, parent, depth))
    return BipartitionResult(sides=side)


def _tree_cycle(u: int, w: int, parent: dict, depth: dict) -> list[int]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; right is walked back without it
    return left + right[-2::-1]


def euler_planarity_bound(g: Graph) -> bool:
    """Necessary condition for planarity: ``m <= 3n - 6`` when ``n >= 3``."""
    return g.n < 3 or g.m <= 3 * g.n - 6
