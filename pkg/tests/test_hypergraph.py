import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import K43_TEXT, two_section
from hyperconn import (
    Hypergraph,
    HypergraphError,
    check_two_design,
    components,
    degree_profile,
    diameter,
    gen_complete,
    gen_fano,
    gen_random,
    is_connected,
    parse_khg,
    remove_vertices,
    serialize_khg,
    validate,
)
from hyperconn.hypergraph import rank_subset, read_khg, unrank_subset, write_khg

import networkx as nx


# ---------------------------------------------------------------- parsing


def test_parse_k43(k43):
    H = parse_khg(K43_TEXT)
    assert (H.n, H.k, H.m) == (4, 3, 4)
    assert H == k43


def test_parse_single_edge():
    H = parse_khg("khg 1\n3 3\n1 2 3\n")
    assert (H.n, H.k, H.edges) == (3, 3, ((1, 2, 3),))


def test_parse_duplicate_vertex():
    with pytest.raises(HypergraphError, match="duplicate vertex"):
        parse_khg("khg 1\n4 3\n1 2 2\n")


def test_parse_comments_and_blank_lines():
    H = parse_khg("# header\nkhg 1\n\n4 3\n  # edges\n3 2 1\n")
    assert H.edges == ((1, 2, 3),)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("khg 2\n3 3\n", 1),
        ("khg 1\n3\n", 2),
        ("khg 1\n4 3\n1 2\n", 3),
        ("khg 1\n4 3\n1 2 3\n1 2 9\n", 4),
        ("khg 1\n4 3\n1 2 x\n", 3),
        ("khg 1\n4 3\n1 2 3\n3 2 1\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(HypergraphError) as info:
        parse_khg(text)
    assert info.value.lineno == lineno


def test_parse_empty_input():
    with pytest.raises(HypergraphError):
        parse_khg("")


def test_serialize_k43(k43):
    assert serialize_khg(k43) == K43_TEXT


def test_serialize_edgeless():
    assert serialize_khg(Hypergraph(5, 3, ())) == "khg 1\n5 3\n"


def test_serialize_fano(fano):
    text = serialize_khg(fano)
    assert len(text.splitlines()) == 9
    assert parse_khg(text) == fano


def test_file_round_trip(tmp_path, fano):
    p = tmp_path / "f.khg"
    write_khg(fano, p)
    assert read_khg(p) == fano


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.integers(2, 4), st.data())
def test_round_trip_random(n, k, data):
    k = min(k, n)
    m = data.draw(st.integers(0, math.comb(n, k)))
    H = gen_random(n, k, m, seed=data.draw(st.integers(0, 2**32 - 1)))
    assert parse_khg(serialize_khg(H)) == H


# ---------------------------------------------------------------- validation


def test_validate_ok(k43):
    validate(k43)


def test_validate_arity():
    with pytest.raises(HypergraphError, match="arity"):
        Hypergraph(4, 3, ((1, 2),))


def test_validate_range():
    with pytest.raises(HypergraphError, match="range"):
        Hypergraph(4, 3, ((1, 2, 9),))


def test_validate_duplicate_edge():
    with pytest.raises(HypergraphError, match="duplicate edge"):
        Hypergraph.from_edges(4, 3, [(1, 2, 3), (3, 2, 1)])


# ---------------------------------------------------------------- profiles


def test_degrees(k43, fano):
    p = degree_profile(k43)
    assert list(p.degrees) == [3, 3, 3, 3] and p.max_degree == 3
    assert list(degree_profile(fano).degrees) == [3] * 7
    assert list(degree_profile(Hypergraph(4, 3, ())).degrees) == [0] * 4


def test_components(k43, split):
    assert components(k43) == [[1, 2, 3, 4]]
    assert components(split) == [[1, 2, 3], [4, 5, 6]]
    assert components(Hypergraph(3, 3, ())) == [[1], [2], [3]]


def test_diameter(k43, chain, fano, split):
    assert diameter(k43) == 1
    assert diameter(chain) == 2
    assert diameter(fano) == 1
    assert math.isinf(diameter(split))


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 10), st.integers(0, 12), st.integers(0, 10**6))
def test_components_and_diameter_match_networkx(n, m, seed):
    H = gen_random(n, 3, min(m, math.comb(n, 3)), seed=seed)
    G = two_section(H)
    assert sorted(map(sorted, nx.connected_components(G))) == components(H)
    assert is_connected(H) == nx.is_connected(G)
    if nx.is_connected(G):
        assert diameter(H) == nx.diameter(G)


def test_remove_vertices(k43, chain, fano):
    assert remove_vertices(k43, [4]).edges == ((1, 2, 3),)
    H = remove_vertices(chain, [3])
    assert (H.n, H.m) == (4, 0)
    F = remove_vertices(fano, [7])
    assert (F.n, F.m) == (6, 4) and is_connected(F)


def test_remove_all_vertices_rejected(k43):
    with pytest.raises(HypergraphError):
        remove_vertices(k43, [1, 2, 3, 4])


# ---------------------------------------------------------------- generators


@pytest.mark.parametrize("n,k,m", [(4, 3, 4), (5, 2, 10), (6, 4, 15)])
def test_gen_complete(n, k, m):
    assert gen_complete(n, k).m == m


def test_gen_fano(fano):
    assert (fano.n, fano.k, fano.m) == (7, 3, 7)
    assert list(degree_profile(fano).degrees) == [3] * 7
    p = check_two_design(fano)
    assert (p.b, p.r, p.lam) == (7, 3, 1)


def test_gen_random_deterministic():
    assert gen_random(6, 3, 10, seed=1) == gen_random(6, 3, 10, seed=1)


def test_gen_random_forced_complete(k43):
    assert gen_random(4, 3, 4, seed=12345) == k43


def test_gen_random_connected():
    H = gen_random(10, 3, 12, seed=7, require_connected=True)
    assert H.m == 12 and nx.is_connected(two_section(H))


def test_gen_random_too_many_edges():
    with pytest.raises(HypergraphError):
        gen_random(4, 3, 5)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.data())
def test_colex_rank_round_trip(n, data):
    k = data.draw(st.integers(1, n))
    r = data.draw(st.integers(0, math.comb(n, k) - 1))
    s = unrank_subset(r, n, k)
    assert len(s) == k and max(s) <= n
    assert rank_subset(s) == r


def test_two_design(k43, chain):
    p = check_two_design(k43)
    assert (p.b, p.r, p.lam) == (4, 3, 2)
    assert check_two_design(chain) is None
