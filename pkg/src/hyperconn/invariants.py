"""Exact cut invariants by exhaustive subset enumeration.

Everything here is exponential in n on purpose; inputs above ``MAX_ENUM_N``
vertices are refused instead of approximated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .hypergraph import Hypergraph, components, remove_vertices

MAX_ENUM_N = 24
_CHUNK = 1 << 20


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CutWitness:
    side: tuple[int, ...]
    crossing_count: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


def _check_size(H: Hypergraph) -> None:
    if H.n < 2:
        raise ValueError(f"need at least 2 vertices, got n={H.n}")
    if H.n > MAX_ENUM_N:
        raise EnumerationTooLarge(f"subset enumeration refused for n={H.n} > {MAX_ENUM_N}")


def boundary_edges(H: Hypergraph, S: Iterable[int]):
    """Split the edges into (crossing, inside S); the rest lie inside the complement."""
    S = set(S)
    if not S or not S <= set(range(1, H.n + 1)) or len(S) == H.n:
        raise ValueError(f"S must be a nonempty proper subset of 1..{H.n}, got {sorted(S)}")
    crossing, internal = [], []
    for e in H.edges:
        inside = sum(v in S for v in e)
        if inside == H.k:
            internal.append(e)
        elif inside:
            crossing.append(e)
    return crossing, internal


def _edge_masks(H: Hypergraph) -> np.ndarray:
    return np.array([sum(1 << (v - 1) for v in e) for e in H.edges], dtype=np.int64)


def _crossing_counts(H: Hypergraph):
    """Yield (masks, crossing counts) chunks over all subsets 1..2^n - 2."""
    emasks = _edge_masks(H)
    full = (1 << H.n) - 1
    for start in range(1, full, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, full), dtype=np.int64)
        counts = np.zeros(masks.shape, dtype=np.int64)
        for em in emasks:
            hit = masks & em
            counts += (hit != 0) & (hit != em)
        yield masks, counts


def _popcount(masks: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(masks.shape, dtype=np.int64)
    for b in range(n):
        out += (masks >> b) & 1
    return out


def _mask_to_set(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v + 1 for v in range(n) if mask >> v & 1)


def _best_cut(H: Hypergraph, max_side: int, score) -> CutWitness:
    # Tie-break: smaller |S| first, then lexicographically smallest S.
    best = None
    for masks, counts in _crossing_counts(H):
        sizes = _popcount(masks, H.n)
        ok = sizes <= max_side
        masks, counts, sizes = masks[ok], counts[ok], sizes[ok]
        for s in np.unique(sizes):
            sel = sizes == s
            c = int(counts[sel].min())
            cands = masks[sel][counts[sel] == c]
            side = min(_mask_to_set(int(mk), H.n) for mk in cands)
            key = (score(c, int(s)), int(s), side)
            if best is None or key < best[0]:
                best = (key, CutWitness(side, c, Fraction(c, int(s))))
    return best[1]


def isoperimetric_number(H: Hypergraph) -> tuple[Fraction, CutWitness]:
    """min |E(S, S^c)| / |S| over 1 <= |S| <= n // 2, as an exact fraction."""
    _check_size(H)
    w = _best_cut(H, H.n // 2, lambda c, s: Fraction(c, s))
    return w.ratio, w


def edge_connectivity(H: Hypergraph) -> tuple[int, CutWitness]:
    """Fewest crossing edges over all bipartitions; 0 exactly when H is disconnected."""
    _check_size(H)
    w = _best_cut(H, H.n - 1, lambda c, s: c)
    return w.crossing_count, w


def vertex_connectivity(H: Hypergraph) -> Optional[tuple[int, tuple[int, ...]]]:
    """Smallest vertex set whose removal leaves at least two components.

    Isolated vertices count as components. A disconnected H has
    connectivity 0 (empty witness). Returns None when no vertex cut exists.
    """
    _check_size(H)
    if len(components(H)) > 1:
        return 0, ()
    for size in range(1, H.n - 1):
        for cut in itertools.combinations(range(1, H.n + 1), size):
            if len(components(remove_vertices(H, cut))) >= 2:
                return size, cut
    return None

