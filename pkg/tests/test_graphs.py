import random

import pytest
from hypothesis import given, settings, strategies as st

from edgereg.errors import ParseError, PreconditionError
from edgereg.graphs import (bits, complement, encode_graph6, induced_subgraph,
                            is_bipartite, is_chordal, is_cochordal,
                            is_gap_free, make_graph, mask_of, parse_edge_list,
                            parse_graph, parse_graph6, suspension_graph)
from edgereg.corpora import (complete_bipartite, complete_graph, cycle_graph,
                             labeled_graphs, path_graph, random_graph)


def graphs_equal(g, h):
    return g.n == h.n and g.adj == h.adj


# --- parsing ---------------------------------------------------------------

def test_parse_edge_list_p3():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3 and set(g.edges()) == {(0, 1), (1, 2)}


def test_parse_edge_list_features():
    g = parse_edge_list("# comment\nn 5\n0 1\n\n1 2 # trailing\n0 1\n")
    assert g.n == 5 and g.edge_count() == 2  # duplicates collapse


def test_parse_edge_list_errors():
    with pytest.raises(ParseError, match="self-loop"):
        parse_edge_list("0 0")
    with pytest.raises(ParseError, match="line 1"):
        parse_edge_list("0 x")
    with pytest.raises(ParseError):
        parse_edge_list("n 2\n0 5")


def test_graph6_star_golden():
    g = parse_graph6("D?{")
    assert g.n == 5
    assert set(g.edges()) == {(0, 4), (1, 4), (2, 4), (3, 4)}
    assert encode_graph6(g) == "D?{"


def _naive_graph6_decode(s):
    # independent reference decoder, bit-by-bit from the format definition
    data = [ord(c) - 63 for c in s]
    n = data[0]
    stream = []
    for c in data[1:]:
        stream.extend((c >> k) & 1 for k in range(5, -1, -1))
    edges = []
    i = 0
    for col in range(1, n):
        for row in range(col):
            if stream[i]:
                edges.append((row, col))
            i += 1
    return n, set(edges)


def test_graph6_roundtrip_against_reference():
    rng = random.Random(7)
    for _ in range(50):
        g = random_graph(rng.randint(1, 12), rng, 0.5, require_edges=False)
        s = encode_graph6(g)
        n, edges = _naive_graph6_decode(s)
        assert n == g.n and edges == set(g.edges())
        assert graphs_equal(parse_graph6(s), g)


def test_graph6_corpus_file_byte_exact(tmp_path):
    rng = random.Random(11)
    lines = [encode_graph6(random_graph(rng.randint(2, 9), rng)) for _ in range(40)]
    path = tmp_path / "corpus.g6"
    path.write_text("\n".join(lines) + "\n")
    back = [encode_graph6(parse_graph6(l)) for l in path.read_text().splitlines()]
    assert back == lines


def test_graph6_errors():
    with pytest.raises(ParseError, match="length mismatch"):
        parse_graph6("D?")
    with pytest.raises(ParseError, match="invalid character"):
        parse_graph6("D?!")
    with pytest.raises(ParseError, match="non-ASCII"):
        parse_graph6("D?é")
    with pytest.raises(ParseError):
        parse_graph6("")


def test_parse_graph_dispatch():
    assert parse_graph("0 1", "edge-list").n == 2
    with pytest.raises(ParseError):
        parse_graph("0 1", "nope")


# --- complement ------------------------------------------------------------

def test_complement_k3_empty():
    assert complement(complete_graph(3)).edge_count() == 0


def test_complement_c5_self():
    c5c = complement(cycle_graph(5))
    assert set(c5c.edges()) == {(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)}
    # the complement is again a 5-cycle: 0-2-4-1-3-0
    assert all(c5c.degree(v) == 2 for v in range(5))
    assert is_bipartite(c5c) is None


@given(st.integers(2, 10), st.integers(0, 2 ** 45 - 1))
@settings(max_examples=60, deadline=None)
def test_complement_involution(n, seed):
    g = random_graph(n, random.Random(seed), 0.5, require_edges=False)
    assert graphs_equal(complement(complement(g)), g)


# --- induced subgraphs -----------------------------------------------------

def test_induced_subgraph_examples():
    c5 = cycle_graph(5)
    sub, mapping = induced_subgraph(c5, mask_of([0, 1, 2]))
    assert mapping == (0, 1, 2) and set(sub.edges()) == {(0, 1), (1, 2)}
    whole, _ = induced_subgraph(c5, c5.vertex_mask())
    assert graphs_equal(whole, c5)
    k4 = complete_graph(4)
    tri, _ = induced_subgraph(k4, mask_of([0, 2, 3]))
    assert graphs_equal(tri, complete_graph(3))
    empty, m = induced_subgraph(c5, 0)
    assert empty.n == 0 and m == ()


# --- bipartiteness ---------------------------------------------------------

def test_is_bipartite_examples():
    assert is_bipartite(cycle_graph(4)) == (mask_of([0, 2]), mask_of([1, 3]))
    assert is_bipartite(cycle_graph(5)) is None
    assert is_bipartite(make_graph(3, [])) == (0b111, 0)


# --- chordality ------------------------------------------------------------

def _has_induced_long_cycle(g):
    # brute force: some induced subgraph is a cycle of length >= 4
    for w in range(1 << g.n):
        verts = list(bits(w))
        if len(verts) < 4:
            continue
        sub, _ = induced_subgraph(g, w)
        if all(sub.degree(v) == 2 for v in range(sub.n)):
            seen = 1
            frontier = [0]
            while frontier:
                v = frontier.pop()
                for u in bits(sub.adj[v] & ~seen):
                    seen |= 1 << u
                    frontier.append(u)
            if seen == sub.vertex_mask():
                return True
    return False


def test_is_chordal_examples():
    assert is_chordal(complete_graph(4)) is not None
    assert is_chordal(cycle_graph(4)) is None
    assert is_chordal(cycle_graph(5)) is None


def test_is_chordal_vs_bruteforce_exhaustive_n5():
    for g in labeled_graphs(5):
        assert (is_chordal(g) is not None) == (not _has_induced_long_cycle(g))


def test_is_chordal_vs_bruteforce_sampled_n7():
    rng = random.Random(20240)
    for _ in range(300):
        g = random_graph(7, rng, rng.choice([0.3, 0.5, 0.7]), require_edges=False)
        assert (is_chordal(g) is not None) == (not _has_induced_long_cycle(g))


def test_peo_is_verified_ordering():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (2, 4)])
    peo = is_chordal(g)
    assert peo is not None and sorted(peo) == list(range(5))


# --- gap-free --------------------------------------------------------------

def _has_2k2(g):
    edges = list(g.edges())
    for i, (a, b) in enumerate(edges):
        for (c, d) in edges[i + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            cross = (g.has_edge(a, c) or g.has_edge(a, d)
                     or g.has_edge(b, c) or g.has_edge(b, d))
            if not cross:
                return True
    return False


def test_is_gap_free_examples():
    assert is_gap_free(complete_bipartite(2, 3))
    assert is_gap_free(complete_bipartite(3, 3))
    assert not is_gap_free(make_graph(4, [(0, 1), (2, 3)]))  # 2K2 itself
    assert is_gap_free(cycle_graph(5))


def test_is_gap_free_vs_2k2_search():
    for g in labeled_graphs(5):
        assert is_gap_free(g) == (not _has_2k2(g))
    rng = random.Random(5150)
    for _ in range(300):
        g = random_graph(7, rng, 0.4, require_edges=False)
        assert is_gap_free(g) == (not _has_2k2(g))


# --- suspension graph ------------------------------------------------------

def test_suspension_graph_examples():
    p3 = path_graph(3)
    assert graphs_equal(suspension_graph(p3, 0, 1), p3)
    p4 = path_graph(4)
    gp = suspension_graph(p4, 1, 2)
    assert set(gp.edges()) == {(0, 1), (1, 2), (2, 3), (0, 3)}  # P4 -> C4
    k3 = complete_graph(3)
    assert graphs_equal(suspension_graph(k3, 0, 1), k3)


def test_suspension_graph_precondition():
    with pytest.raises(PreconditionError):
        suspension_graph(path_graph(3), 0, 2)


def test_suspension_contains_and_idempotent():
    rng = random.Random(99)
    for _ in range(100):
        g = random_graph(rng.randint(2, 8), rng, 0.5)
        edges = list(g.edges())
        a, b = edges[rng.randrange(len(edges))]
        gp = suspension_graph(g, a, b)
        assert all(gp.has_edge(u, v) for u, v in g.edges())
        assert graphs_equal(suspension_graph(gp, a, b), gp)


def test_is_cochordal():
    assert is_cochordal(path_graph(3))
    assert not is_cochordal(cycle_graph(5))
    assert is_cochordal(complete_bipartite(3, 3))
