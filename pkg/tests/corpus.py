"""Hypergraph families and independent brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx

from hyperconn import Hypergraph, gen_complete, gen_fano, gen_random

K43_TEXT = "khg 1\n4 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n"


def two_triples() -> Hypergraph:
    return Hypergraph(6, 3, ((1, 2, 3), (4, 5, 6)))


def path_triples() -> Hypergraph:
    return Hypergraph(5, 3, ((1, 2, 3), (3, 4, 5)))


def glued_k43() -> Hypergraph:
    """Two copies of K_4^(3) sharing vertices 3 and 4."""
    edges = list(itertools.combinations([1, 2, 3, 4], 3)) + list(itertools.combinations([3, 4, 5, 6], 3))
    return Hypergraph.from_edges(6, 3, edges)


def triangle() -> Hypergraph:
    return gen_complete(3, 2)


def random_connected(count: int, sizes, ks, seed0: int = 0, extra=range(0, 7)):
    """Deterministic list of connected random k-graphs."""
    out = []
    s = seed0
    while len(out) < count:
        n = sizes[s % len(sizes)]
        k = ks[s % len(ks)]
        m = min(math.comb(n, k), max(2, n - 1 + extra[s % len(extra)]))
        out.append(gen_random(n, k, m, seed=s, require_connected=True))
        s += 1
    return out


def random_disconnected(count: int, seed0: int = 0):
    """Disconnected 3-graphs on n <= 10 vertices: sparse draws that happen to split."""
    out = []
    s = seed0
    while len(out) < count:
        n = 6 + s % 5
        m = 1 + s % 4
        H = gen_random(n, 3, m, seed=10_000 + s)
        if nx.number_connected_components(two_section(H)) > 1:
            out.append(H)
        s += 1
    return out


def oracle_corpus():
    """Twenty 3-graphs on 4 to 6 vertices, sparse to dense, some disconnected."""
    out = []
    for s in range(20):
        n = 4 + s % 3
        m = 1 + (s * 7) % math.comb(n, 3)
        out.append(gen_random(n, 3, m, seed=2000 + s))
    return out


def standard_corpus():
    """Named instances used by the determinism and CLI suites."""
    items = [(f"K{n}_{k}", gen_complete(n, k)) for n, k in [(4, 3), (5, 3), (6, 3), (5, 4), (4, 2), (6, 2)]]
    items.append(("fano", gen_fano()))
    items.append(("glued", glued_k43()))
    items.append(("two_triples", two_triples()))
    items.append(("path_triples", path_triples()))
    for i, H in enumerate(random_connected(6, sizes=(6, 7, 8, 9), ks=(3, 4), seed0=500)):
        items.append((f"random{i}", H))
    return items


ACCEPTANCE_LINES: list[str] = []


def record(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


# ------------------------------------------------------------------ oracles


def two_section(H: Hypergraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(1, H.n + 1))
    for e in H.edges:
        G.add_edges_from(itertools.combinations(e, 2))
    return G


def crossing(H: Hypergraph, S) -> int:
    s = set(S)
    return sum(1 for e in H.edges if 0 < len(s.intersection(e)) < H.k)


def brute_isoperimetric(H: Hypergraph) -> Fraction:
    verts = range(1, H.n + 1)
    return min(
        Fraction(crossing(H, S), len(S))
        for size in range(1, H.n // 2 + 1)
        for S in itertools.combinations(verts, size)
    )


def brute_edge_connectivity(H: Hypergraph) -> int:
    verts = range(1, H.n + 1)
    return min(crossing(H, S) for size in range(1, H.n) for S in itertools.combinations(verts, size))


def strong_delete_splits(H: Hypergraph, cut) -> bool:
    """Does deleting ``cut`` and every edge meeting it leave two or more components?"""
    cut = set(cut)
    G = nx.Graph()
    G.add_nodes_from(v for v in range(1, H.n + 1) if v not in cut)
    for e in H.edges:
        if cut.isdisjoint(e):
            G.add_edges_from(itertools.combinations(e, 2))
    return nx.number_connected_components(G) >= 2


def brute_vertex_connectivity(H: Hypergraph):
    if not nx.is_connected(two_section(H)):
        return 0
    for size in range(1, H.n - 1):
        if any(strong_delete_splits(H, cut) for cut in itertools.combinations(range(1, H.n + 1), size)):
            return size
    return None
