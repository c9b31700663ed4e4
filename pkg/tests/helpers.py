"""Independent oracles shared by the test modules.

Nothing here calls into the search code of ``signedcol``; the oracles only
use the package's data types to read their inputs.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from pathlib import Path

import numpy as np
from hypothesis import strategies as st

from signedcol.formats import read_corpus
from signedcol.graph import Graph, build_graph

FIXTURES = Path(__file__).parent / "fixtures"


@lru_cache(maxsize=None)
def catalogue(max_n: int) -> tuple[Graph, ...]:
    """All non-isomorphic graphs on 1..max_n vertices, as emitted by geng."""
    graphs = read_corpus(FIXTURES / "graphs_1_6.g6", "graph6")
    return tuple(g for g in graphs if g.n <= max_n)


def triangle() -> Graph:
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


def complete(n: int) -> Graph:
    return build_graph(n, list(combinations(range(n), 2)))


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def ordinary_chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for c in range(1, g.n + 1):
        for colours in product(range(c), repeat=g.n):
            if all(colours[u] != colours[v] for u, v in g.edges):
                return c
    raise AssertionError("unreachable")


def signed_colourable_brute(g: Graph, sigma, values) -> bool:
    """Direct reading of the edge rule over an explicit colour list."""
    for f in product(values, repeat=g.n):
        if all(f[u] != s * f[v] for (u, v), s in zip(g.edges, sigma)):
            return True
    return False


def bipartite_brute(g: Graph, members) -> bool:
    members = sorted(members)
    edges = [(u, v) for u, v in g.edges if u in members and v in members]
    for sides in product((0, 1), repeat=len(members)):
        side = dict(zip(members, sides))
        if all(side[u] != side[v] for u, v in edges):
            return True
    return False


def switch_orbit(g: Graph, sigma) -> set[tuple]:
    orbit = set()
    for mask in range(1 << g.n):
        orbit.add(tuple(
            -s if ((mask >> u) & 1) != ((mask >> v) & 1) else s
            for (u, v), s in zip(g.edges, sigma)
        ))
    return orbit


def cnf_models(num_vars: int, clauses) -> np.ndarray:
    """Every satisfying assignment of a CNF, by exhaustive evaluation.

    Returns an int array of assignments (bit ``v-1`` is variable ``v``).
    """
    if num_vars > 24:
        raise ValueError("too many variables for exhaustive evaluation")
    assignments = np.arange(1 << num_vars, dtype=np.int64)
    ok = np.ones(assignments.shape, dtype=bool)
    for clause in clauses:
        sat = np.zeros(assignments.shape, dtype=bool)
        for lit in clause:
            bit = (assignments >> (abs(lit) - 1)) & 1
            sat |= (bit == 1) if lit > 0 else (bit == 0)
        ok &= sat
    return assignments[ok]


def graphs(max_n: int = 7, min_n: int = 0):
    """Hypothesis strategy for simple graphs on at most ``max_n`` vertices."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        pairs = list(combinations(range(n), 2))
        chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        return build_graph(n, [p for p, keep in zip(pairs, chosen) if keep])

    return build()
