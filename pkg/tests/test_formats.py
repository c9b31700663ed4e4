import io
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import FIXTURES, complete, graphs
from signedcol.formats import (
    AsymmetricAdjacency,
    BadSizeField,
    CorpusStream,
    FormatError,
    MissingHeader,
    NonCanonicalByte,
    ScanRecord,
    TruncatedRecord,
    encode_graph6,
    encode_planar_code,
    parse_graph6,
    parse_planar_code,
    parse_report_line,
    parse_sparse6,
    read_corpus,
    write_report_line,
)
from signedcol.graph import DuplicateEdge, GraphError, LoopEdge, build_graph


def edge_set(g):
    return {tuple(sorted(e)) for e in g.edges}


def test_graph6_hand_decoded_star():
    # 'D' = 5 vertices; '?' = 000000, '{' = 111100 -> bits 7..10 set: (0,4),(1,4),(2,4),(3,4)
    g = parse_graph6("D?{")
    assert g.n == 5
    assert edge_set(g) == {(0, 4), (1, 4), (2, 4), (3, 4)}
    assert edge_set(g) == set(nx.from_graph6_bytes(b"D?{").edges())


@pytest.mark.parametrize("record, n", [(b"?", 0), (b"@", 1)])
def test_graph6_edgeless(record, n):
    g = parse_graph6(record)
    assert (g.n, g.m) == (n, 0)
    assert nx.from_graph6_bytes(record).number_of_nodes() == n


def test_graph6_header_is_stripped():
    assert parse_graph6(b">>graph6<<D?{").m == 4


@pytest.mark.parametrize("record, exc", [
    (b"D?>", NonCanonicalByte),  # '>' is 62
    (b"D?", TruncatedRecord),
    (b"D?{?", FormatError),
    (b"~??", TruncatedRecord),
    (b"~~??????", BadSizeField),
    (b"~??A", BadSizeField),  # long size field for n = 2
    (b"", TruncatedRecord),
])
def test_graph6_errors(record, exc):
    with pytest.raises(exc):
        parse_graph6(record)


def test_graph6_long_size_field():
    g = build_graph(70, [(0, 69), (5, 6)])
    data = encode_graph6(g)
    assert data[:1] == b"~"
    assert data == nx.to_graph6_bytes(_nx(g), header=False).strip()
    assert edge_set(parse_graph6(data)) == {(0, 69), (5, 6)}


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_geng_corpus_matches_networkx_decoder():
    lines = (FIXTURES / "graphs_1_6.g6").read_bytes().split()
    for line, g in zip(lines, read_corpus(FIXTURES / "graphs_1_6.g6", "graph6")):
        ref = nx.from_graph6_bytes(line)
        assert g.n == ref.number_of_nodes()
        assert edge_set(g) == {tuple(sorted(e)) for e in ref.edges()}
        assert encode_graph6(g) == line


def test_sparse6_corpus_matches_graph6_corpus():
    g6 = read_corpus(FIXTURES / "graphs_1_6.g6", "graph6")
    s6 = read_corpus(FIXTURES / "graphs_1_6.s6", "sparse6")
    assert len(g6) == len(s6) == 208
    for a, b in zip(g6, s6):
        assert a.n == b.n and edge_set(a) == edge_set(b)


def test_sparse6_triangle_from_networkx():
    record = nx.to_sparse6_bytes(nx.complete_graph(3), header=False).strip()
    g = parse_sparse6(record)
    assert g.n == 3 and edge_set(g) == {(0, 1), (0, 2), (1, 2)}


@pytest.mark.parametrize("n", [1, 2, 5, 64])
def test_sparse6_empty_graph_from_networkx(n):
    record = nx.to_sparse6_bytes(nx.empty_graph(n), header=False).strip()
    g = parse_sparse6(record)
    assert (g.n, g.m) == (n, 0)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_sparse6_matches_networkx_encoder(g):
    record = nx.to_sparse6_bytes(_nx(g), header=False).strip()
    assert edge_set(parse_sparse6(record)) == edge_set(g)


def test_sparse6_requires_colon():
    with pytest.raises(FormatError):
        parse_sparse6(b"Bw")


def test_sparse6_rejects_loops_and_multi_edges():
    loop = nx.MultiGraph([(0, 0), (0, 1)])
    with pytest.raises(LoopEdge):
        parse_sparse6(nx.to_sparse6_bytes(loop, header=False).strip())
    multi = nx.MultiGraph([(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdge):
        parse_sparse6(nx.to_sparse6_bytes(multi, header=False).strip())


def test_planar_code_k4_fixture():
    (g,) = list(parse_planar_code((FIXTURES / "k4.pc").read_bytes()))
    assert g.n == 4 and edge_set(g) == set(combinations(range(4), 2))


def test_planar_code_octahedron_fixture():
    (g,) = list(parse_planar_code((FIXTURES / "octahedron.pc").read_bytes()))
    antipodes = {(0, 5), (1, 3), (2, 4)}
    assert g.n == 6
    assert edge_set(g) == set(combinations(range(6), 2)) - antipodes


def test_planar_code_triangulation_counts():
    graphs_ = read_corpus(FIXTURES / "triangulations_4_8.pc", "planar-code")
    counts = {}
    for g in graphs_:
        counts[g.n] = counts.get(g.n, 0) + 1
        assert g.m == 3 * g.n - 6
        assert nx.check_planarity(_nx(g))[0]
    assert counts == {4: 1, 5: 1, 6: 2, 7: 5, 8: 14}


def test_planar_code_two_vertex_record():
    (g,) = list(parse_planar_code(b">>planar_code<<" + bytes([2, 2, 0, 1, 0])))
    assert g.edges == ((0, 1),)


def test_planar_code_asymmetric():
    data = b">>planar_code<<" + bytes([3, 2, 0, 0, 0])
    with pytest.raises(AsymmetricAdjacency):
        list(parse_planar_code(data))


def test_planar_code_missing_header():
    with pytest.raises(MissingHeader):
        list(parse_planar_code(bytes([2, 2, 0, 1, 0])))


def test_planar_code_rejects_two_byte_variant():
    with pytest.raises(FormatError):
        list(parse_planar_code(b">>planar_code<<" + bytes([0, 2, 0])))


def test_planar_code_encoder_round_trip():
    rot = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]
    (g,) = list(parse_planar_code(encode_planar_code([rot])))
    assert edge_set(g) == edge_set(complete(4))


def test_planar_code_truncations_fail_cleanly():
    data = (FIXTURES / "triangulations_4_8.pc").read_bytes()
    full = len(read_corpus(io.BytesIO(data), "planar_code"))
    for cut in range(len(b">>planar_code<<") + 1, len(data)):
        try:
            got = list(parse_planar_code(data[:cut]))
        except TruncatedRecord:
            continue
        # a cut that lands on a record boundary is a shorter, valid stream
        assert len(got) < full


def test_graph6_truncations_fail_cleanly():
    for line in (FIXTURES / "graphs_1_6.g6").read_bytes().split():
        for cut in range(len(line)):
            try:
                g = parse_graph6(line[:cut])
            except FormatError:
                continue
            pytest.fail(f"prefix {line[:cut]!r} of {line!r} parsed as {g}")


def test_sparse6_truncations_never_crash():
    for line in (FIXTURES / "graphs_1_6.s6").read_bytes().split():
        for cut in range(len(line)):
            try:
                parse_sparse6(line[:cut])
            except (FormatError, GraphError):
                pass


def test_corpus_stream_positions():
    stream = CorpusStream(FIXTURES / "graphs_1_6.g6", "graph6")
    seen = []
    for _ in stream:
        seen.append(stream.position)
    assert seen == list(range(208))


def test_corpus_stream_reports_failing_record():
    bad = io.BytesIO(b"A_\nB>\n")
    with pytest.raises(NonCanonicalByte, match="record 1"):
        list(CorpusStream(bad, "graph6"))


def test_report_line_colourable():
    rec = ScanRecord(0, 3, "+-+", 4, "colourable", sig="+-+", cert="1,2,-1", digest="ab")
    line = write_report_line(rec)
    assert b"outcome=colourable" in line and b"k=4" in line
    assert line.endswith(b"\n") and line.count(b"\n") == 1
    assert parse_report_line(line) == rec


def test_report_line_counterexample_carries_signature():
    rec = ScanRecord(1, 0, "+--", 4, "not-4-colourable", sig="+--", graph6="Bw")
    line = write_report_line(rec)
    assert b"outcome=not-4-colourable" in line and b"sig=+--" in line
    with pytest.raises(ValueError):
        ScanRecord(1, 0, "x", 4, "not-4-colourable")


def test_report_line_list_outcome_and_timing():
    rec = ScanRecord(2, 5, "d", 4, "bipartite-classes-ok", lists="1.2,2.3", elapsed_ms=1.5)
    assert b"outcome=bipartite-classes-ok" in write_report_line(rec)
    assert b"elapsed_ms" not in write_report_line(rec)
    assert b"elapsed_ms=1.500" in write_report_line(rec, timing=True)
