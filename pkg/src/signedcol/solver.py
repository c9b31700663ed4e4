"""Exact signed k-colouring.

A signed k-colouring maps vertices into ``{-q..-1, 1..q}`` (k = 2q) or
``{-q..-1, 0, 1..q}`` (k = 2q + 1) so that ``f(x) != sign(xy) * f(y)`` on
every edge. The backtracking search, the brute-force oracle and the CNF
export all share this constraint model but nothing else.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .signed import SignedGraph

DEFAULT_BRUTE_FORCE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class PartialAssignment(ValueError):
    pass


class AmbiguousModel(ValueError):
    pass


class InvalidModel(ValueError):
    pass


@dataclass(frozen=True)
class ColourSet:
    k: int
    values: tuple[int, ...]

    def index(self, colour: int) -> int:
        return self.values.index(colour)

    def __contains__(self, colour: int) -> bool:
        return colour in self.values

    def __len__(self) -> int:
        return len(self.values)


def colour_set(k: int) -> ColourSet:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    q = k // 2
    values = list(range(-q, 0))
    if k % 2:
        values.append(0)
    values.extend(range(1, q + 1))
    return ColourSet(k, tuple(values))


@dataclass(frozen=True)
class SignedColouring:
    """Colour of vertex ``v`` is ``values[v]``; drawn from ``colour_set(k)``."""

    k: int
    values: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def negated(self) -> "SignedColouring":
        return SignedColouring(self.k, tuple(-c for c in self.values))


ColouringLike = Union[SignedColouring, Sequence[Optional[int]], Mapping[int, int]]


def _as_values(f: ColouringLike, n: int) -> list[int]:
    if isinstance(f, SignedColouring):
        values = list(f.values)
    elif isinstance(f, Mapping):
        values = [f.get(v) for v in range(n)]
    else:
        values = list(f)
    if len(values) != n or any(c is None for c in values):
        raise PartialAssignment(f"colouring does not cover all {n} vertices")
    return values


def is_proper(sg: SignedGraph, f: ColouringLike) -> bool:
    """True iff ``f(u) != sign * f(v)`` on every edge (and colours are in
    the colour set, when ``f`` records its k)."""
    values = _as_values(f, sg.graph.n)
    if isinstance(f, SignedColouring):
        allowed = colour_set(f.k)
        if any(c not in allowed for c in values):
            return False
    return all(values[u] != s * values[v] for (u, v), s in zip(sg.graph.edges, sg.sigma))


class Search:
    """Backtracking search for one (signed graph, k) instance.

    Domains are bitmasks over positions in ``colour_set(k).values``. The
    next vertex is the one with the fewest remaining colours, then highest
    degree, then lowest index. Assigning colour c at v removes
    ``sign(vw) * c`` from each uncoloured neighbour w, and a branch dies as
    soon as some domain empties.

    With ``symmetry`` set, the first branching vertex only receives
    non-negative colours: negating a proper colouring gives another one, so
    nothing is lost.
    """

    def __init__(
        self,
        sg: SignedGraph,
        k: int,
        max_nodes: Optional[int] = None,
        deadline: Optional[float] = None,
    ):
        self.sg = sg
        self.colours = colour_set(k)
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        g = sg.graph
        self.nbrs: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for (u, v), s in zip(g.edges, sg.sigma):
            self.nbrs[u].append((v, s))
            self.nbrs[v].append((u, s))
        vals = self.colours.values
        self.neg = [vals.index(-c) for c in vals]
        self.degree = [len(a) for a in self.nbrs]

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"search exceeded {self.max_nodes} nodes")
        if self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("search exceeded its time budget")

    def _select(self, domains: list[int], colour: list[int]) -> int:
        best, best_key = -1, None
        for v in range(len(domains)):
            if colour[v] >= 0:
                continue
            key = (domains[v].bit_count(), -self.degree[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def solutions(self, symmetry: bool = True) -> Iterator[SignedColouring]:
        n = self.sg.graph.n
        k = self.colours.k
        full = (1 << k) - 1
        root_mask = full
        if symmetry:
            root_mask = sum(1 << i for i, c in enumerate(self.colours.values) if c >= 0)
        vals = self.colours.values
        colour = [-1] * n

        def extend(domains: list[int], depth: int) -> Iterator[SignedColouring]:
            if depth == n:
                yield SignedColouring(k, tuple(vals[i] for i in colour))
                return
            v = self._select(domains, colour)
            allowed = domains[v] & (root_mask if depth == 0 else full)
            for i in range(k):
                if not allowed >> i & 1:
                    continue
                self._tick()
                nd = domains[:]
                dead = False
                for w, s in self.nbrs[v]:
                    if colour[w] < 0:
                        nd[w] &= ~(1 << (i if s > 0 else self.neg[i]))
                        if not nd[w]:
                            dead = True
                            break
                if dead:
                    continue
                colour[v] = i
                yield from extend(nd, depth + 1)
                colour[v] = -1

        yield from extend([full] * n, 0)


def solve_k(
    sg: SignedGraph,
    k: int,
    max_nodes: Optional[int] = None,
    deadline: Optional[float] = None,
) -> Optional[SignedColouring]:
    """First proper colouring from ``colour_set(k)``, or None if none exists.

    Raises BudgetExceeded when a node or wall-clock budget runs out; the
    verdict is never guessed.
    """
    search = Search(sg, k, max_nodes, deadline)
    found = next(search.solutions(), None)
    if found is not None and not is_proper(sg, found):
        raise AssertionError("search produced an improper colouring")
    return found


def all_colourings(sg: SignedGraph, k: int) -> Iterator[SignedColouring]:
    """Every proper colouring, each exactly once (symmetry cut disabled)."""
    for f in Search(sg, k).solutions(symmetry=False):
        yield f


def chromatic_number(sg: SignedGraph, **budget) -> int:
    """Least k admitting a signed k-colouring; 0 for the empty graph.

    k is scanned upward from 1 rather than bisected, so no monotonicity in
    k is assumed. The scan stops by k = max degree + 1, where greedy
    colouring always succeeds.
    """
    if sg.graph.n == 0:
        return 0
    k = 1
    while solve_k(sg, k, **budget) is None:
        k += 1
    return k


def brute_force_k(
    sg: SignedGraph, k: int, budget: int = DEFAULT_BRUTE_FORCE_BUDGET
) -> Optional[SignedColouring]:
    """Exhaustive enumeration of ``k ** n`` assignments in lexicographic order."""
    n = sg.graph.n
    cs = colour_set(k)
    if k**n > budget:
        raise BudgetExceeded(f"{k}^{n} assignments exceeds budget {budget}")
    checks = list(zip(sg.graph.edges, sg.sigma))
    for values in product(cs.values, repeat=n):
        if all(values[u] != s * values[v] for (u, v), s in checks):
            return SignedColouring(k, values)
    return None


# --- CNF export ---------------------------------------------------------------


@dataclass(frozen=True)
class CNFFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"


def cnf_var(v: int, colour: int, k: int) -> int:
    return v * k + colour_set(k).index(colour) + 1


def encode_cnf(sg: SignedGraph, k: int) -> CNFFormula:
    """One variable per (vertex, colour): ``x(v, c) = v*k + index(c) + 1``.

    Clause order: at-least-one per vertex, pairwise at-most-one per vertex,
    then for each edge (in index order) and colour c the clause
    ``-x(u, c) | -x(v, sign*c)``.
    """
    cs = colour_set(k)
    n = sg.graph.n

    def x(v: int, i: int) -> int:
        return v * k + i + 1

    clauses: list[tuple[int, ...]] = []
    for v in range(n):
        clauses.append(tuple(x(v, i) for i in range(k)))
    for v in range(n):
        for a, b in combinations(range(k), 2):
            clauses.append((-x(v, a), -x(v, b)))
    for (u, v), s in zip(sg.graph.edges, sg.sigma):
        for i, c in enumerate(cs.values):
            if s * c in cs:
                clauses.append((-x(u, i), -x(v, cs.index(s * c))))
    return CNFFormula(n * k, tuple(clauses))


def parse_dimacs(text: str) -> CNFFormula:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            _, kind, nv, _nc = line.split()
            if kind != "cnf":
                raise ValueError(f"not a cnf problem line: {line!r}")
            num_vars = int(nv)
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise ValueError("missing 'p cnf' line")
    if current:
        clauses.append(tuple(current))
    return CNFFormula(num_vars, tuple(clauses))


def decode_cnf_model(
    model: Union[Iterable[int], Mapping[int, bool]], sg: SignedGraph, k: int
) -> SignedColouring:
    """Read a colouring off a model given as DIMACS literals or ``{var: bool}``."""
    if isinstance(model, Mapping):
        true = {var for var, val in model.items() if val}
    else:
        true = {lit for lit in model if lit > 0}
    cs = colour_set(k)
    values = []
    for v in range(sg.graph.n):
        chosen = [c for i, c in enumerate(cs.values) if v * k + i + 1 in true]
        if len(chosen) != 1:
            raise AmbiguousModel(f"vertex {v} has {len(chosen)} true colour variables")
        values.append(chosen[0])
    f = SignedColouring(k, tuple(values))
    if not is_proper(sg, f):
        raise InvalidModel("model violates an edge constraint")
    return f
