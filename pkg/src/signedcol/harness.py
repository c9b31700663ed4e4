"""Batch scans over graph corpora.

``conjecture1`` checks signed 4-colourability of one signature per
switching class of every graph. The two ``conjecture2`` modes push 2-list
assignments (all of them, or a seeded sample) through the list-to-signature
pipeline and record whether every colour class came out bipartite.

Reports are one :class:`~signedcol.formats.ScanRecord` per line, sorted by
(graph, item) so that the worker count never changes the output.
"""
from __future__ import annotations

import hashlib
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import combinations, product
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .formats import ScanRecord, encode_graph6, read_corpus, write_report_line
from .graph import Graph, euler_planarity_bound, induced_subgraph, is_bipartite
from .reduction import (
    ListAssignment,
    SignatureUncolourable,
    WitnessFailure,
    build_signature,
    list_colour_via_signature,
    parse_list_compact,
    relabel,
)
from .signed import (
    SignedGraph,
    enumerate_signature_classes,
    parse_signature_bits,
    signature_bits,
)
from .solver import BudgetExceeded, SignedColouring, brute_force_k, is_proper, solve_k

log = logging.getLogger(__name__)

MODES = ("conjecture1", "conjecture2-exhaustive", "conjecture2-random")

EXIT_CLEAN = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2


class MissingCertificate(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    corpus: Optional[str] = None
    format: str = "graph6"
    mode: str = "conjecture1"
    palette: int = 4
    samples: int = 1000
    seed: int = 0
    workers: int = 1
    budget_nodes: Optional[int] = None
    budget_ms: Optional[float] = None
    max_assignments: int = 10**6
    full_signatures: bool = False
    permute_palette: bool = False
    timing: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.mode != "conjecture1" and self.palette < 2:
            raise ValueError("list modes need a palette of at least 2 colours")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass
class ScanResult:
    records: list[ScanRecord]

    @property
    def counterexamples(self) -> list[ScanRecord]:
        return [r for r in self.records if r.outcome in ("not-4-colourable", "witness-failure")]

    @property
    def exit_code(self) -> int:
        return EXIT_COUNTEREXAMPLE if self.counterexamples else EXIT_CLEAN

    def report_bytes(self, timing: bool = False) -> bytes:
        return b"".join(write_report_line(r, timing) for r in self.records)


def _digest(cert: str) -> str:
    return hashlib.sha256(cert.encode()).hexdigest()[:16]


def _colouring_text(values: Sequence[int]) -> str:
    return ",".join(map(str, values))


def _budget(cfg: ScanConfig) -> dict:
    deadline = None
    if cfg.budget_ms is not None:
        deadline = time.monotonic() + cfg.budget_ms / 1000
    return {"max_nodes": cfg.budget_nodes, "deadline": deadline}


# --- work items ---------------------------------------------------------------


def _signatures(g: Graph, cfg: ScanConfig) -> Iterator[tuple]:
    if cfg.full_signatures:
        return product((1, -1), repeat=g.m)
    return enumerate_signature_classes(g)


def _all_lists(n: int, palette: int) -> Iterator[ListAssignment]:
    pairs = list(combinations(range(1, palette + 1), 2))
    for choice in product(pairs, repeat=n):
        yield ListAssignment(choice)


def _random_lists(gid: int, n: int, cfg: ScanConfig) -> Iterator[ListAssignment]:
    rng = random.Random(f"{cfg.seed}:{gid}")
    pairs = list(combinations(range(1, cfg.palette + 1), 2))
    for _ in range(cfg.samples):
        yield ListAssignment(tuple(rng.choice(pairs) for _ in range(n)))


def _palette_order(gid: int, cfg: ScanConfig) -> dict[int, int]:
    colours = list(range(1, cfg.palette + 1))
    shuffled = colours[:]
    random.Random(f"perm:{cfg.seed}:{gid}").shuffle(shuffled)
    return dict(zip(colours, shuffled))


# --- per-item checks -------------------------------------------------------------


def _check_signature(gid: int, item: int, g: Graph, sigma: tuple, cfg: ScanConfig) -> ScanRecord:
    bits = signature_bits(sigma)
    start = time.perf_counter()
    try:
        f = solve_k(SignedGraph(g, sigma), 4, **_budget(cfg))
    except BudgetExceeded as exc:
        return ScanRecord(gid, item, bits or "empty", 4, "skipped", sig=bits, note=str(exc))
    elapsed = (time.perf_counter() - start) * 1000
    if f is None:
        log.warning("graph %d: signature %s is not 4-colourable", gid, bits)
        return ScanRecord(
            gid, item, bits or "empty", 4, "not-4-colourable", sig=bits,
            graph6=encode_graph6(g).decode(), elapsed_ms=elapsed,
        )
    cert = _colouring_text(f.values)
    return ScanRecord(
        gid, item, bits or "empty", 4, "colourable", sig=bits, cert=cert,
        digest=_digest(cert), elapsed_ms=elapsed,
    )


def _check_lists(gid: int, item: int, g: Graph, L: ListAssignment, cfg: ScanConfig) -> ScanRecord:
    start = time.perf_counter()
    try:
        result = list_colour_via_signature(g, L, **_budget(cfg))
    except BudgetExceeded as exc:
        return ScanRecord(gid, item, L.digest(), 4, "skipped", lists=L.compact(), note=str(exc))
    except WitnessFailure as exc:
        log.error("graph %d lists %s: %s", gid, L.compact(), exc)
        sigma = build_signature(g, L)
        return ScanRecord(
            gid, item, L.digest(), 4, "witness-failure", sig=signature_bits(sigma),
            lists=L.compact(), note=str(exc), graph6=encode_graph6(g).decode(),
        )
    elapsed = (time.perf_counter() - start) * 1000
    if isinstance(result, SignatureUncolourable):
        log.warning("graph %d lists %s: derived signature is not 4-colourable", gid, L.compact())
        return ScanRecord(
            gid, item, L.digest(), 4, "not-4-colourable", sig=signature_bits(result.sigma),
            lists=L.compact(), graph6=encode_graph6(g).decode(), elapsed_ms=elapsed,
        )
    cert = f"{_colouring_text(result.phi.phi)}/{_colouring_text(result.f.values)}"
    note = ""
    if cfg.permute_palette:
        note = _permuted_outcome(gid, g, L, cfg)
    return ScanRecord(
        gid, item, L.digest(), 4, "bipartite-classes-ok", sig=signature_bits(result.sigma),
        lists=L.compact(), cert=cert, digest=_digest(cert), note=note, elapsed_ms=elapsed,
    )


def _permuted_outcome(gid: int, g: Graph, L: ListAssignment, cfg: ScanConfig) -> str:
    """Rerun under a shuffled colour order; observed, never asserted."""
    permuted = relabel(L, _palette_order(gid, cfg))
    try:
        result = list_colour_via_signature(g, permuted, **_budget(cfg))
    except BudgetExceeded:
        return "permuted:skipped"
    except WitnessFailure:
        return "permuted:witness-failure"
    if isinstance(result, SignatureUncolourable):
        return "permuted:not-4-colourable"
    return "permuted:bipartite-classes-ok"


# --- scanning --------------------------------------------------------------------


def _scan_graph(gid: int, g: Graph, cfg: ScanConfig, shard: int) -> list[ScanRecord]:
    W = cfg.workers
    if not euler_planarity_bound(g):
        if shard != 0:
            return []
        return [ScanRecord(gid, 0, "graph", 4, "skipped", note="fails-euler-bound")]
    out = []
    if cfg.mode == "conjecture1":
        for item, sigma in enumerate(_signatures(g, cfg)):
            if item % W == shard:
                out.append(_check_signature(gid, item, g, sigma, cfg))
        return out
    if cfg.mode == "conjecture2-exhaustive":
        total = (cfg.palette * (cfg.palette - 1) // 2) ** g.n
        if total > cfg.max_assignments:
            if shard != 0:
                return []
            return [ScanRecord(
                gid, 0, "graph", 4, "skipped",
                note=f"{total}-assignments-exceed-budget-{cfg.max_assignments}",
            )]
        lists = _all_lists(g.n, cfg.palette)
    else:
        lists = _random_lists(gid, g.n, cfg)
    for item, L in enumerate(lists):
        if item % W == shard:
            out.append(_check_lists(gid, item, g, L, cfg))
    return out


def _scan_shard(graphs: Sequence[Graph], cfg: ScanConfig, shard: int) -> list[ScanRecord]:
    out = []
    for gid, g in enumerate(graphs):
        out.extend(_scan_graph(gid, g, cfg, shard))
    return out


def scan(cfg: ScanConfig, graphs: Optional[Sequence[Graph]] = None) -> ScanResult:
    """Run the configured mode over ``graphs`` (or the corpus named in cfg)."""
    if graphs is None:
        if cfg.corpus is None:
            raise ValueError("no corpus given")
        graphs = read_corpus(cfg.corpus, cfg.format)
    graphs = list(graphs)
    if cfg.workers == 1:
        records = _scan_shard(graphs, cfg, 0)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = pool.map(
                _scan_shard, [graphs] * cfg.workers, [cfg] * cfg.workers, range(cfg.workers)
            )
            records = [r for part in parts for r in part]
    records.sort(key=lambda r: r.sort_key)
    return ScanResult(records)


def scan_conjecture1(cfg: ScanConfig, graphs: Optional[Sequence[Graph]] = None) -> ScanResult:
    return scan(replace(cfg, mode="conjecture1"), graphs)


def scan_conjecture2(cfg: ScanConfig, graphs: Optional[Sequence[Graph]] = None) -> ScanResult:
    if not cfg.mode.startswith("conjecture2"):
        cfg = replace(cfg, mode="conjecture2-random")
    return scan(cfg, graphs)


def write_scan(
    result: ScanResult, out: Path, counterexamples: Optional[Path] = None, timing: bool = False
) -> None:
    out = Path(out)
    out.write_bytes(result.report_bytes(timing))
    cex = Path(counterexamples) if counterexamples else out.with_name(out.name + ".counterexamples")
    if result.counterexamples:
        cex.write_bytes(b"".join(write_report_line(r, timing) for r in result.counterexamples))
    elif cex.exists():
        cex.unlink()


# --- audit -------------------------------------------------------------------------


def verify_certificate(record: ScanRecord, corpus: Sequence[Graph]) -> bool:
    """Recheck a record from its stored certificate alone.

    Colourings are checked with :func:`is_proper`, colour classes with the
    BFS bipartiteness test; nothing from the original search is reused.
    A not-4-colourable verdict is rechecked by exhaustive enumeration.
    """
    if record.outcome == "skipped":
        raise MissingCertificate(f"graph {record.graph} item {record.item} was skipped")
    g = corpus[record.graph]
    sigma = parse_signature_bits(record.sig)
    if len(sigma) != g.m:
        return False
    sg = SignedGraph(g, sigma)
    if record.outcome == "not-4-colourable":
        if record.lists and build_signature(g, parse_list_compact(record.lists)) != sigma:
            return False
        return brute_force_k(sg, 4) is None
    if not record.cert and g.n > 0:
        raise MissingCertificate(f"graph {record.graph} item {record.item} has no certificate")
    if _digest(record.cert) != record.digest:
        return False
    try:
        if record.outcome == "colourable":
            values = tuple(map(int, record.cert.split(","))) if record.cert else ()
            f = SignedColouring(record.k, values)
            return len(f) == g.n and is_proper(sg, f)
        return _verify_list_certificate(g, sg, record)
    except ValueError:
        return False


def _verify_list_certificate(g: Graph, sg: SignedGraph, record: ScanRecord) -> bool:
    L = parse_list_compact(record.lists)
    if len(L) != g.n or build_signature(g, L) != sg.sigma:
        return False
    phi_text, _, f_text = record.cert.partition("/")
    phi = [int(c) for c in phi_text.split(",")] if phi_text else []
    f = SignedColouring(4, tuple(int(c) for c in f_text.split(","))) if f_text else None
    if len(phi) != g.n or any(c not in L.lists[v] for v, c in enumerate(phi)):
        return False
    if f is not None and not (len(f) == g.n and is_proper(sg, f)):
        return False
    for colour in set(phi):
        members = [v for v in range(g.n) if phi[v] == colour]
        if not is_bipartite(induced_subgraph(g, members)):
            return False
    return record.outcome == "bipartite-classes-ok"
