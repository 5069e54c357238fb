from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (
    brute_edge_connectivity,
    brute_isoperimetric,
    brute_vertex_connectivity,
    crossing,
    strong_delete_splits,
    triangle,
)
from hyperconn import (
    Hypergraph,
    boundary_edges,
    edge_connectivity,
    gen_random,
    isoperimetric_number,
    vertex_connectivity,
)
from hyperconn.invariants import EnumerationTooLarge


def test_boundary_edges(k43, split):
    c, i = boundary_edges(k43, {1})
    assert (len(c), len(i)) == (3, 0)
    c, i = boundary_edges(k43, {1, 2})
    assert (len(c), len(i)) == (4, 0)
    c, i = boundary_edges(split, {1, 2, 3})
    assert (len(c), len(i)) == (0, 1)


@pytest.mark.parametrize("S", [set(), {1, 2, 3, 4}, {0}, {5}])
def test_boundary_edges_rejects_bad_sides(k43, S):
    with pytest.raises(ValueError):
        boundary_edges(k43, S)


def test_isoperimetric_k43(k43):
    i, w = isoperimetric_number(k43)
    assert i == 2
    assert w.side == (1, 2)


def test_isoperimetric_fano(fano):
    i, w = isoperimetric_number(fano)
    assert i == 2
    assert len(w.side) == 3
    assert crossing(fano, w.side) == 6


def test_isoperimetric_disconnected(split):
    assert isoperimetric_number(split)[0] == 0


def test_edge_connectivity(k43, chain, split):
    assert edge_connectivity(k43) == (3, edge_connectivity(k43)[1])
    assert edge_connectivity(k43)[1].side == (1,)
    value, w = edge_connectivity(chain)
    assert value == 1
    # {1} and {1, 2} both cut only {1,2,3}; the smaller side is reported
    assert crossing(chain, w.side) == 1 and crossing(chain, (1, 2)) == 1
    assert edge_connectivity(split)[0] == 0


def test_vertex_connectivity(chain, glued, split):
    for H, size, known in [(chain, 1, (3,)), (glued, 2, (3, 4))]:
        value, cut = vertex_connectivity(H)
        assert value == size
        assert strong_delete_splits(H, cut) and strong_delete_splits(H, known)
    assert vertex_connectivity(triangle()) is None
    assert vertex_connectivity(split) == (0, ())


def test_enumeration_refused():
    with pytest.raises(EnumerationTooLarge):
        isoperimetric_number(Hypergraph(25, 3, ((1, 2, 3),)))


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 8), st.integers(3, 4), st.integers(1, 14), st.integers(0, 10**6))
def test_invariants_match_brute_force(n, k, m, seed):
    from math import comb

    H = gen_random(n, k, min(m, comb(n, k)), seed=seed)
    i, w = isoperimetric_number(H)
    assert i == brute_isoperimetric(H)
    assert Fraction(crossing(H, w.side), len(w.side)) == i
    e, w = edge_connectivity(H)
    assert e == brute_edge_connectivity(H) == crossing(H, w.side)
    vc = vertex_connectivity(H)
    want = brute_vertex_connectivity(H)
    assert (vc if vc is None else vc[0]) == want
