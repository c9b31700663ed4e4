"""From a 2-list assignment to a list colouring with bipartite colour classes.

Pipeline: lists -> signature -> signed 4-colouring f -> list colouring phi
-> per-class side map ``|f(v)|``. Each step is a separate function so the
intermediate objects can be inspected and tested on their own.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

from .graph import Graph, induced_subgraph
from .signed import Signature, SignedGraph
from .solver import SignedColouring, all_colourings, is_proper, solve_k


class MissingList(ValueError):
    pass


class WrongColourSet(ValueError):
    pass


class WitnessFailure(AssertionError):
    """A colour class where ``|f|`` is not a proper 2-colouring.

    Unreachable for inputs produced by this module's own pipeline.
    """

    def __init__(self, colour: int, edge: tuple[int, int], message: str):
        super().__init__(
            f"colour {colour}, edge {edge}: {message} "
            "(this contradicts the construction and indicates an implementation bug)"
        )
        self.colour = colour
        self.edge = edge


@dataclass(frozen=True)
class ListAssignment:
    """``lists[v] == (low, high)`` with ``0 < low < high``."""

    lists: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for v, pair in enumerate(self.lists):
            if pair is None:
                raise MissingList(f"vertex {v} has no list")
            lo, hi = pair
            if not (0 < lo < hi):
                raise ValueError(f"list of vertex {v} must be two distinct positive colours: {pair}")

    @classmethod
    def from_sets(cls, sets: Sequence) -> "ListAssignment":
        pairs = []
        for v, s in enumerate(sets):
            if s is None:
                raise MissingList(f"vertex {v} has no list")
            s = sorted(set(s))
            if len(s) != 2:
                raise ValueError(f"list of vertex {v} must have exactly two colours: {s}")
            pairs.append((s[0], s[1]))
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.lists)

    def low(self, v: int) -> int:
        return self.lists[v][0]

    def high(self, v: int) -> int:
        return self.lists[v][1]

    def text(self) -> str:
        return "".join(f"{v}: {lo} {hi}\n" for v, (lo, hi) in enumerate(self.lists))

    def compact(self) -> str:
        """Report form, e.g. ``1.2,2.3``."""
        return ",".join(f"{lo}.{hi}" for lo, hi in self.lists)

    def digest(self) -> str:
        return hashlib.sha256(self.compact().encode()).hexdigest()[:16]


def parse_list_compact(text: str) -> ListAssignment:
    if not text:
        return ListAssignment(())
    return ListAssignment(tuple(tuple(map(int, p.split("."))) for p in text.split(",")))


def parse_list_file(text: str, n: Optional[int] = None) -> ListAssignment:
    """Parse ``v: a b`` lines (``#`` starts a comment); ``a < b`` is enforced."""
    found: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        parts = rest.split()
        if not sep or len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'v: a b', got {raw!r}")
        v, a, b = int(head), int(parts[0]), int(parts[1])
        if not 0 < a < b:
            raise ValueError(f"line {lineno}: need 0 < a < b, got {a} {b}")
        if v in found:
            raise ValueError(f"line {lineno}: vertex {v} listed twice")
        found[v] = (a, b)
    size = n if n is not None else (max(found) + 1 if found else 0)
    missing = [v for v in range(size) if v not in found]
    if missing:
        raise MissingList(f"no list for vertices {missing}")
    extra = [v for v in found if v >= size]
    if extra:
        raise ValueError(f"lists given for nonexistent vertices {extra}")
    return ListAssignment(tuple(found[v] for v in range(size)))


@dataclass(frozen=True)
class ListColouring:
    phi: tuple[int, ...]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.phi):
            out.setdefault(c, []).append(v)
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class BipartiteWitness:
    """For each colour i, ``sides[i]`` maps the members of class i to 1 or 2."""

    sides: dict[int, dict[int, int]]


@dataclass(frozen=True)
class SignatureUncolourable:
    """The signature built from the lists admits no signed 4-colouring."""

    graph: Graph
    sigma: Signature


def _require_total(g: Graph, L: ListAssignment) -> None:
    if len(L) != g.n:
        raise MissingList(f"list assignment covers {len(L)} of {g.n} vertices")


def build_signature(g: Graph, L: ListAssignment, check: bool = False) -> Signature:
    """Edge ``uv`` is negative iff ``low(u) == high(v)`` or ``low(v) == high(u)``.

    With ``check`` set, assert that the two conditions never hold together
    (they cannot, since ``low < high`` on every list).
    """
    _require_total(g, L)
    sigma = []
    for u, v in g.edges:
        a = L.low(u) == L.high(v)
        b = L.low(v) == L.high(u)
        if check and a and b:
            raise AssertionError(f"both negative-edge conditions hold on {(u, v)}")
        sigma.append(-1 if a or b else 1)
    return tuple(sigma)


def derive_phi(f: SignedColouring, L: ListAssignment) -> ListColouring:
    """High colour where f is positive, low colour where f is negative."""
    if len(f) != len(L):
        raise MissingList(f"colouring has {len(f)} vertices, lists cover {len(L)}")
    phi = []
    for v, c in enumerate(f.values):
        if c not in (-2, -1, 1, 2):
            raise WrongColourSet(f"vertex {v} has colour {c}, expected one of +-1, +-2")
        phi.append(L.high(v) if c > 0 else L.low(v))
    return ListColouring(tuple(phi))


def psi_witness(
    g: Graph,
    f: SignedColouring,
    phi: ListColouring,
    sigma: Optional[Signature] = None,
    L: Optional[ListAssignment] = None,
) -> BipartiteWitness:
    """Side map ``|f(v)|`` on every colour class, checked edge by edge.

    When ``sigma`` and ``L`` are given, each induced edge is also checked
    against its sign: a positive edge must join equal list ends with f of
    equal sign, a negative edge opposite list ends with f of opposite sign.
    """
    sides: dict[int, dict[int, int]] = {}
    for colour, members in phi.classes().items():
        side = {v: abs(f[v]) for v in members}
        sub = induced_subgraph(g, members)
        for u, v in sub.edges:
            if sigma is not None and L is not None:
                _replay_edge_case(colour, (u, v), sigma[g.index_of(u, v)], f, L)
            if side[u] == side[v]:
                raise WitnessFailure(colour, (u, v), f"both endpoints have |f| = {side[u]}")
        sides[colour] = side
    return BipartiteWitness(sides)


def _replay_edge_case(
    colour: int, edge: tuple[int, int], sign: int, f: SignedColouring, L: ListAssignment
) -> None:
    u, v = edge
    fu, fv = f[u], f[v]
    if sign > 0:
        same_low = colour == L.low(u) == L.low(v)
        same_high = colour == L.high(u) == L.high(v)
        if not (same_low or same_high):
            raise WitnessFailure(colour, edge, "positive edge joins different list ends")
        if (fu > 0) != (fv > 0):
            raise WitnessFailure(colour, edge, "positive edge with f of opposite signs")
        if fu == fv:
            raise WitnessFailure(colour, edge, "f is not proper on a positive edge")
    else:
        crossed = (colour == L.low(u) == L.high(v)) or (colour == L.high(u) == L.low(v))
        if not crossed:
            raise WitnessFailure(colour, edge, "negative edge joins equal list ends")
        if (fu > 0) == (fv > 0):
            raise WitnessFailure(colour, edge, "negative edge with f of equal signs")
        if fu == -fv:
            raise WitnessFailure(colour, edge, "f is not proper on a negative edge")


@dataclass(frozen=True)
class ReductionResult:
    sigma: Signature
    f: SignedColouring
    phi: ListColouring
    witness: BipartiteWitness


def reduce_with(g: Graph, L: ListAssignment, sigma: Signature, f: SignedColouring) -> ReductionResult:
    if not is_proper(SignedGraph(g, sigma), f):
        raise ValueError("f is not a proper signed colouring of (G, sigma)")
    phi = derive_phi(f, L)
    assert all(c in L.lists[v] for v, c in enumerate(phi.phi))
    witness = psi_witness(g, f, phi, sigma, L)
    return ReductionResult(sigma, f, phi, witness)


def list_colour_via_signature(
    g: Graph, L: ListAssignment, **budget
) -> Union[ReductionResult, SignatureUncolourable]:
    """Solve the signed 4-colouring for the list-derived signature and map
    the first solution back to a list colouring with its witness."""
    sigma = build_signature(g, L)
    f = solve_k(SignedGraph(g, sigma), 4, **budget)
    if f is None:
        return SignatureUncolourable(g, sigma)
    return reduce_with(g, L, sigma, f)


def all_reductions(g: Graph, L: ListAssignment) -> Iterator[ReductionResult]:
    """The pipeline applied to every proper signed 4-colouring."""
    sigma = build_signature(g, L)
    for f in all_colourings(SignedGraph(g, sigma), 4):
        yield reduce_with(g, L, sigma, f)


def relabel(L: ListAssignment, order: Mapping[int, int]) -> ListAssignment:
    """Apply a colour bijection; used to observe dependence on the colour order."""
    return ListAssignment.from_sets([(order[lo], order[hi]) for lo, hi in L.lists])
