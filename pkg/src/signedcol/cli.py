"""Command-line entry point: ``signedcol <subcommand> ...``.

Exit codes: 0 success, 1 operational error (or failed audit), 2 a
counterexample candidate was found, 64 usage error. Every error path
writes exactly one ``error: <kind>: <message>`` line to stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness
from .formats import read_corpus, parse_report_line
from .graph import Graph, build_graph
from .reduction import SignatureUncolourable, list_colour_via_signature, parse_list_file
from .signed import SignedGraph, signature_bits
from .solver import chromatic_number, encode_cnf, solve_k

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def read_signed_edges(text: str) -> SignedGraph:
    """Parse ``u v s`` edge lines, ``s`` in ``+``/``-`` (default ``+``).

    An optional ``n <count>`` line fixes the vertex count; otherwise it is
    one more than the largest vertex mentioned. ``#`` starts a comment.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    signs: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if parts[0] == "n" and len(parts) == 2:
            n = int(parts[1])
            continue
        if len(parts) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v [+|-]', got {raw!r}")
        sign = parts[2] if len(parts) == 3 else "+"
        if sign not in ("+", "-"):
            raise ValueError(f"line {lineno}: sign must be + or -, got {sign!r}")
        edges.append((int(parts[0]), int(parts[1])))
        signs.append(1 if sign == "+" else -1)
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    g = build_graph(n, edges)
    sigma = [0] * g.m
    for (u, v), s in zip(edges, signs):
        sigma[g.index_of(u, v)] = s
    return SignedGraph(g, tuple(sigma))


def _load_graph(path: str, fmt: str) -> Graph:
    if fmt == "edges":
        return read_signed_edges(Path(path).read_text()).graph
    graphs = read_corpus(path, fmt)
    if not graphs:
        raise ValueError(f"{path} contains no graph")
    return graphs[0]


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    sg = read_signed_edges(Path(args.input).read_text())
    f = solve_k(sg, args.k, max_nodes=args.budget_nodes)
    if f is None:
        _write(f"UNSAT k={args.k}\n", args.out)
    else:
        _write(f"SAT k={args.k}\ncolouring {' '.join(map(str, f.values))}\n", args.out)
    return 0


def _cmd_chromatic(args) -> int:
    sg = read_signed_edges(Path(args.input).read_text())
    _write(f"{chromatic_number(sg)}\n", args.out)
    return 0


def _cmd_reduce(args) -> int:
    g = _load_graph(args.input, args.format)
    L = parse_list_file(Path(args.lists).read_text(), g.n)
    result = list_colour_via_signature(g, L, max_nodes=args.budget_nodes)
    if isinstance(result, SignatureUncolourable):
        _write(f"sigma {signature_bits(result.sigma)}\nSIGNATURE-UNCOLOURABLE\n", args.out)
        return harness.EXIT_COUNTEREXAMPLE
    lines = [
        f"sigma {signature_bits(result.sigma)}",
        f"f {' '.join(map(str, result.f.values))}",
        f"phi {' '.join(map(str, result.phi.phi))}",
    ]
    for colour, side in result.witness.sides.items():
        lines.append(f"class {colour} " + " ".join(f"{v}={s}" for v, s in sorted(side.items())))
    lines.append("witness ok")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    corpus = read_corpus(args.corpus, args.format)
    checked = skipped = failed = 0
    failures = []
    for lineno, line in enumerate(Path(args.input).read_bytes().splitlines(), 1):
        if not line.strip():
            continue
        record = parse_report_line(line)
        if record.outcome == "skipped":
            skipped += 1
            continue
        checked += 1
        if not harness.verify_certificate(record, corpus):
            failed += 1
            failures.append(f"FAIL line={lineno} graph={record.graph} item={record.item}")
    summary = f"checked={checked} skipped={skipped} failed={failed}"
    _write("\n".join(failures + [summary]) + "\n", args.out)
    return harness.EXIT_ERROR if failed else 0


def _cmd_scan(args) -> int:
    cfg = harness.ScanConfig(
        corpus=args.corpus,
        format=args.format,
        mode=args.mode,
        palette=args.palette,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
        budget_nodes=args.budget_nodes,
        budget_ms=args.budget_ms,
        max_assignments=args.max_assignments,
        full_signatures=args.full_signatures,
        permute_palette=args.permute_palette,
        timing=args.timing,
    )
    result = harness.scan(cfg)
    if args.out:
        harness.write_scan(result, Path(args.out), args.counterexamples, args.timing)
    else:
        sys.stdout.buffer.write(result.report_bytes(args.timing))
        if result.counterexamples and args.counterexamples:
            harness.write_scan(
                harness.ScanResult(result.counterexamples), Path(args.counterexamples),
                None, args.timing,
            )
    return result.exit_code


def _cmd_encode(args) -> int:
    sg = read_signed_edges(Path(args.input).read_text())
    _write(encode_cnf(sg, args.k).to_dimacs(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="signedcol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, k=False):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--budget-nodes", type=int, default=None)
        if k:
            p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("solve", help="signed k-colouring of a signed edge list")
    p.add_argument("input")
    common(p, k=True)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("chromatic", help="signed chromatic number")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=_cmd_chromatic)

    p = sub.add_parser("reduce", help="list colouring via the derived signature")
    p.add_argument("input")
    p.add_argument("--lists", required=True, help="list file, one 'v: a b' line per vertex")
    p.add_argument("--format", choices=["edges", "graph6", "sparse6", "planar-code"], default="edges")
    common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="audit the certificates in a scan report")
    p.add_argument("input", help="report file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=["graph6", "sparse6", "planar-code"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="batch scan a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=["graph6", "sparse6", "planar-code"], required=True)
    p.add_argument("--mode", choices=harness.MODES, default="conjecture1")
    p.add_argument("--palette", type=int, default=4)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget-ms", type=float, default=None)
    p.add_argument("--max-assignments", type=int, default=10**6)
    p.add_argument("--counterexamples", help="counterexample file (default: OUT.counterexamples)")
    p.add_argument("--full-signatures", action="store_true",
                   help="debug: scan all 2^m signatures instead of class representatives")
    p.add_argument("--permute-palette", action="store_true",
                   help="debug: rerun each list assignment under a shuffled colour order")
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to report lines")
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("encode-cnf", help="DIMACS CNF for signed k-colourability")
    p.add_argument("input")
    common(p, k=True)
    p.set_defaults(func=_cmd_encode)
    return parser


def _one_line(exc: BaseException) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "k", 1) < 1:
            raise UsageError("--k must be at least 1")
    except UsageError as exc:
        print(f"error: usage: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError, AssertionError) as exc:
        print(f"error: {type(exc).__name__}: {_one_line(exc)}", file=sys.stderr)
        return harness.EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
