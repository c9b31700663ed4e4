"""Signatures, switching, and one signature per switching class."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .graph import Graph, VertexOutOfRange


class GraphMismatch(ValueError):
    pass


Signature = tuple[int, ...]


@dataclass(frozen=True)
class SignedGraph:
    graph: Graph
    sigma: Signature

    def __post_init__(self) -> None:
        if len(self.sigma) != self.graph.m:
            raise ValueError(
                f"signature has {len(self.sigma)} signs for {self.graph.m} edges"
            )
        if any(s not in (1, -1) for s in self.sigma):
            raise ValueError("signs must be +1 or -1")

    def sign(self, u: int, v: int) -> int:
        return self.sigma[self.graph.index_of(u, v)]

    def negative_edges(self) -> list[tuple[int, int]]:
        return [e for e, s in zip(self.graph.edges, self.sigma) if s < 0]


def signed(g: Graph, sigma: Sequence[int]) -> SignedGraph:
    return SignedGraph(g, tuple(sigma))


def all_positive(g: Graph) -> Signature:
    return (1,) * g.m


def signature_bits(sigma: Sequence[int]) -> str:
    """Report form of a signature: one ``+``/``-`` per edge index."""
    return "".join("+" if s > 0 else "-" for s in sigma)


def parse_signature_bits(bits: str) -> Signature:
    try:
        return tuple({"+": 1, "-": -1}[c] for c in bits)
    except KeyError as exc:
        raise ValueError(f"bad signature character {exc.args[0]!r}") from None


def switch(sg: SignedGraph, s: Iterable[int]) -> SignedGraph:
    s = set(s)
    for v in s:
        if not 0 <= v < sg.graph.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{sg.graph.n - 1}")
    sigma = tuple(
        -sign if ((u in s) != (v in s)) else sign
        for (u, v), sign in zip(sg.graph.edges, sg.sigma)
    )
    return SignedGraph(sg.graph, sigma)


def spanning_forest(g: Graph) -> list[int]:
    """Edge indices of the BFS forest grown from the lowest vertex of each
    component, neighbours taken in increasing order."""
    seen = [False] * g.n
    tree = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if not seen[w]:
                    seen[w] = True
                    tree.append(g.index_of(u, w))
                    queue.append(w)
    return tree


def enumerate_signature_classes(
    g: Graph, shard: int = 0, workers: int = 1
) -> Iterator[Signature]:
    """Yield one signature per switching class.

    Forest edges are fixed at +1; the cotree edges run over all sign
    patterns in binary counting order (``+`` before ``-``, first cotree
    edge most significant). With ``workers > 1`` only patterns whose
    ordinal is congruent to ``shard`` are produced.
    """
    forest = set(spanning_forest(g))
    cotree = [i for i in range(g.m) if i not in forest]
    for ordinal, pattern in enumerate(product((1, -1), repeat=len(cotree))):
        if ordinal % workers != shard:
            continue
        sigma = [1] * g.m
        for i, s in zip(cotree, pattern):
            sigma[i] = s
        yield tuple(sigma)


def class_count(g: Graph) -> int:
    return 2 ** (g.m - g.n + len(g.components()))


def is_switching_equivalent(a: SignedGraph, b: SignedGraph) -> bool:
    """Brute force over switching sets that avoid vertex 0 (test-sized only)."""
    if a.graph.n != b.graph.n or a.graph.edges != b.graph.edges:
        raise GraphMismatch("signed graphs have different underlying graphs")
    n = a.graph.n
    if n > 16:
        raise ValueError("brute-force switching check limited to n <= 16")
    target = b.sigma
    for mask in range(1 << max(n - 1, 0)):
        s = {v + 1 for v in range(n - 1) if mask >> v & 1}
        if switch(a, s).sigma == target:
            return True
    return False


def cycle_sign(sg: SignedGraph, cycle: Sequence[int]) -> int:
    """Product of edge signs around a closed vertex sequence."""
    prod = 1
    for u, v in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        prod *= sg.sign(u, v)
    return prod


def canonical_switch_set(sg: SignedGraph) -> set[int]:
    """Vertices to switch so that every spanning-forest edge becomes positive.

    Switching by this set maps ``sg`` onto the representative of its class
    produced by :func:`enumerate_signature_classes`.
    """
    g = sg.graph
    potential = [0] * g.n
    for root in range(g.n):
        if potential[root]:
            continue
        potential[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if not potential[w]:
                    potential[w] = potential[u] * sg.sign(u, w)
                    queue.append(w)
    return {v for v in range(g.n) if potential[v] < 0}


def class_representative(sg: SignedGraph) -> Signature:
    return switch(sg, canonical_switch_set(sg)).sigma
