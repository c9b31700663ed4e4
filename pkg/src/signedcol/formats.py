"""Readers for graph6, sparse6 and planar_code corpora, plus report lines.

graph6 and sparse6 follow McKay's ``formats.txt``: every byte carries six
bits, offset by 63, most significant bit first. planar_code follows the
plantri guide, restricted to the one-byte-per-entry variant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterator, Optional, Union

from .graph import Graph, build_graph

GRAPH6_HEADER = b">>graph6<<"
SPARSE6_HEADER = b">>sparse6<<"
PLANAR_CODE_HEADER = b">>planar_code<<"
MAX_ORDER = 258047

FORMATS = ("graph6", "sparse6", "planar_code")


class FormatError(ValueError):
    pass


class BadSizeField(FormatError):
    pass


class TruncatedRecord(FormatError):
    pass


class NonCanonicalByte(FormatError):
    pass


class MissingHeader(FormatError):
    pass


class AsymmetricAdjacency(FormatError):
    pass


def _as_bytes(record: Union[bytes, str]) -> bytes:
    if isinstance(record, str):
        record = record.encode("ascii")
    return record.rstrip(b"\r\n")


def _six_bit_values(data: bytes) -> list[int]:
    out = []
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise NonCanonicalByte(f"byte {byte} at offset {pos} outside 63..126")
        out.append(byte - 63)
    return out


def _read_size(data: bytes) -> tuple[int, int]:
    """Decode the size field; returns ``(n, bytes consumed)``."""
    if not data:
        raise TruncatedRecord("empty record")
    vals = _six_bit_values(data[:1])
    if vals[0] < 63:
        return vals[0], 1
    if len(data) >= 2 and data[1] == 126:
        raise BadSizeField(f"orders above {MAX_ORDER} are not supported")
    if len(data) < 4:
        raise TruncatedRecord("size field cut short")
    a, b, c = _six_bit_values(data[1:4])
    n = (a << 12) | (b << 6) | c
    if n < 63:
        raise BadSizeField(f"long size field used for n={n}")
    return n, 4


def _size_field(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= MAX_ORDER:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise BadSizeField(f"orders above {MAX_ORDER} are not supported")


def parse_graph6(record: Union[bytes, str]) -> Graph:
    data = _as_bytes(record)
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    n, start = _read_size(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = _six_bit_values(data[start:])
    if len(body) < need:
        raise TruncatedRecord(f"graph6 body has {len(body)} bytes, expected {need}")
    if len(body) > need:
        raise FormatError(f"graph6 body has {len(body) - need} trailing bytes")
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if (body[bit // 6] >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    return build_graph(n, edges)


def encode_graph6(g: Graph) -> bytes:
    """graph6 encoding of ``g``; used for fixtures and round-trip tests."""
    nbits = g.n * (g.n - 1) // 2
    bits = [0] * (nbits + (-nbits) % 6)
    for i, j in g.edges:
        bits[j * (j - 1) // 2 + i] = 1
    body = bytes(
        63 + int("".join(map(str, bits[p:p + 6])), 2) for p in range(0, len(bits), 6)
    )
    return _size_field(g.n) + body


def parse_sparse6(record: Union[bytes, str]) -> Graph:
    data = _as_bytes(record)
    if data.startswith(SPARSE6_HEADER):
        data = data[len(SPARSE6_HEADER):]
    if not data.startswith(b":"):
        raise FormatError("sparse6 record must start with ':'")
    n, start = _read_size(data[1:])
    body = _six_bit_values(data[1 + start:])
    width = max(1, (n - 1).bit_length())

    bits = [(b >> s) & 1 for b in body for s in range(5, -1, -1)]
    edges: list[tuple[int, int]] = []
    v = 0
    pos = 0
    while pos + 1 + width <= len(bits):
        b = bits[pos]
        x = 0
        for t in bits[pos + 1:pos + 1 + width]:
            x = (x << 1) | t
        pos += 1 + width
        if b:
            v += 1
        if x >= n or v >= n:
            # only padding may push past the last vertex
            break
        if x > v:
            v = x
        else:
            edges.append((x, v))
    return build_graph(n, edges)


@dataclass
class CorpusStream:
    """Iterate the graphs of one corpus file (or binary stream) in order.

    ``position`` is the index of the most recently yielded record.
    """

    source: Union[str, Path, BinaryIO]
    format: str
    position: int = field(default=-1, init=False)

    def __post_init__(self) -> None:
        fmt = self.format.replace("-", "_")
        if fmt not in FORMATS:
            raise ValueError(f"unknown corpus format {self.format!r}")
        self.format = fmt

    def _read(self) -> bytes:
        if isinstance(self.source, (str, Path)):
            return Path(self.source).read_bytes()
        return self.source.read()

    def __iter__(self) -> Iterator[Graph]:
        data = self._read()
        if self.format == "planar_code":
            records = parse_planar_code(data)
        else:
            records = self._lines(data)
        for g in records:
            self.position += 1
            yield g

    def _lines(self, data: bytes) -> Iterator[Graph]:
        parse = parse_graph6 if self.format == "graph6" else parse_sparse6
        header = GRAPH6_HEADER if self.format == "graph6" else SPARSE6_HEADER
        for lineno, line in enumerate(data.splitlines()):
            line = line.strip()
            if lineno == 0 and line.startswith(header):
                line = line[len(header):]
            if not line:
                continue
            try:
                yield parse(line)
            except FormatError as exc:
                raise type(exc)(f"record {self.position + 1}: {exc}") from None


def read_corpus(source, fmt: str) -> list[Graph]:
    return list(CorpusStream(source, fmt))


def parse_planar_code(stream: Union[bytes, BinaryIO]) -> Iterator[Graph]:
    """Yield the underlying simple graph of each planar_code record.

    Rotation order is discarded. Every edge must be listed by both of its
    endpoints.
    """
    data = stream if isinstance(stream, (bytes, bytearray)) else stream.read()
    if not data.startswith(PLANAR_CODE_HEADER):
        if data.startswith(b">>planar_code"):
            raise FormatError("only the header '>>planar_code<<' is supported")
        raise MissingHeader("planar_code stream must start with '>>planar_code<<'")
    pos = len(PLANAR_CODE_HEADER)
    index = 0
    while pos < len(data):
        n = data[pos]
        pos += 1
        if n == 0:
            raise FormatError(f"record {index}: two-byte planar_code entries not supported")
        lists: list[list[int]] = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise TruncatedRecord(f"record {index}: stream ends inside vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(f"record {index}: neighbour {b} exceeds n={n}")
                nbrs.append(b - 1)
            lists.append(nbrs)
        yield _planar_graph(n, lists, index)
        index += 1


def _planar_graph(n: int, lists: list[list[int]], index: int) -> Graph:
    adj = [set(lst) for lst in lists]
    edges = []
    for u, nbrs in enumerate(lists):
        if len(adj[u]) != len(nbrs):
            raise FormatError(f"record {index}: repeated neighbour at vertex {u + 1}")
        for w in nbrs:
            if u not in adj[w]:
                raise AsymmetricAdjacency(
                    f"record {index}: {u + 1} lists {w + 1} but not conversely"
                )
            if u < w:
                edges.append((u, w))
    return build_graph(n, edges)


def encode_planar_code(rotations: list[list[list[int]]]) -> bytes:
    """Serialise rotation systems (0-based neighbour lists) as planar_code."""
    out = bytearray(PLANAR_CODE_HEADER)
    for rot in rotations:
        out.append(len(rot))
        for nbrs in rot:
            out.extend(w + 1 for w in nbrs)
            out.append(0)
    return bytes(out)


# --- report lines -----------------------------------------------------------

REPORT_FIELDS = ("graph", "item", "object", "k", "outcome", "sig", "lists", "cert", "digest")
OUTCOMES = (
    "colourable",
    "not-4-colourable",
    "bipartite-classes-ok",
    "witness-failure",
    "skipped",
)


@dataclass(frozen=True)
class ScanRecord:
    """One scanned (graph, signature | list assignment) item."""

    graph: int
    item: int
    object: str
    k: int
    outcome: str
    sig: str = ""
    lists: str = ""
    cert: str = ""
    digest: str = ""
    note: str = ""
    graph6: str = ""
    elapsed_ms: Optional[float] = None

    def __post_init__(self) -> None:
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == "not-4-colourable" and not self.sig:
            raise ValueError("not-4-colourable records must carry the signature")

    @property
    def sort_key(self) -> tuple:
        return (self.graph, self.item, self.object)


def write_report_line(record: ScanRecord, timing: bool = False) -> bytes:
    """``key=value`` pairs separated by single spaces, newline-terminated.

    Empty fields are written as ``-``. ``elapsed_ms`` is only emitted when
    ``timing`` is set, so default reports stay byte-reproducible.
    """
    parts = []
    for name in REPORT_FIELDS:
        value = getattr(record, name)
        parts.append(f"{name}={value if value != '' else '-'}")
    if record.note:
        parts.append(f"note={record.note.replace(' ', '_')}")
    if record.graph6:
        parts.append(f"graph6={record.graph6}")
    if timing and record.elapsed_ms is not None:
        parts.append(f"elapsed_ms={record.elapsed_ms:.3f}")
    return (" ".join(parts) + "\n").encode("ascii")


def parse_report_line(line: Union[bytes, str]) -> ScanRecord:
    if isinstance(line, bytes):
        line = line.decode("ascii")
    fields = {}
    for part in line.split():
        key, sep, value = part.partition("=")
        if not sep:
            raise FormatError(f"malformed report field {part!r}")
        fields[key] = "" if value == "-" else value
    missing = [f for f in REPORT_FIELDS if f not in fields]
    if missing:
        raise FormatError(f"report line lacks {', '.join(missing)}")
    elapsed = fields.get("elapsed_ms")
    return ScanRecord(
        graph=int(fields["graph"]),
        item=int(fields["item"]),
        object=fields["object"],
        k=int(fields["k"]),
        outcome=fields["outcome"],
        sig=fields["sig"],
        lists=fields["lists"],
        cert=fields["cert"],
        digest=fields["digest"],
        note=fields.get("note", ""),
        graph6=fields.get("graph6", ""),
        elapsed_ms=float(elapsed) if elapsed else None,
    )
