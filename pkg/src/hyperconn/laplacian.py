"""Laplacian tensor forms of a k-graph, evaluated edge by edge.

The order-k tensor itself is never built. For an edge e the form contributes
``sum_{v in e} x_v^k - k * prod_{v in e} x_v``, which is nonnegative on the
nonnegative orthant by the arithmetic-geometric mean inequality.

Substituting ``y = x^[k]`` turns the constrained minimisation over
``sum x_i^k = 1`` into a minimisation over the probability simplex of

    f(y) = sum_v d(v) y_v - k * sum_e GM_e(y),   GM_e(y) = (prod_{v in e} y_v)^(1/k)

which is convex: a linear term minus a nonnegative sum of concave geometric
means.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph


def ipow(x, k: int):
    """x**k for a nonnegative integer k by repeated squaring (exact for small k)."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def _as_vector(H: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != H.n:
        raise ValueError(f"expected a length-{H.n} vector, got shape {x.shape}")
    return x


def edge_term(e: Sequence[int], x) -> float:
    """Contribution of one edge (1-based vertex ids) to the Laplacian form."""
    vals = [float(x[v - 1]) for v in e]
    k = len(vals)
    return math.fsum(ipow(v, k) for v in vals) - k * math.prod(vals)


def edge_terms(H: Hypergraph, x) -> np.ndarray:
    x = _as_vector(H, x)
    if H.m == 0:
        return np.zeros(x.shape[:-1] + (0,))
    xe = x[..., H.edge_array()]
    return ipow(xe, H.k).sum(axis=-1) - H.k * np.prod(xe, axis=-1)


def laplacian_form(H: Hypergraph, x) -> float:
    """L x^k as a sum of per-edge terms (numpy's pairwise summation)."""
    return edge_terms(H, x).sum(axis=-1)


def laplacian_apply(H: Hypergraph, x) -> np.ndarray:
    """The vector L x^(k-1): d_i x_i^(k-1) minus, per edge at i, the product of the others."""
    x = _as_vector(H, x)
    out = H.degrees() * ipow(x, H.k - 1)
    E = H.edge_array()
    xe = x[E]
    for p in range(H.k):
        others = np.prod(np.delete(xe, p, axis=1), axis=1)
        np.subtract.at(out, E[:, p], others)
    return out


def eigen_residual(H: Hypergraph, x, lam: float) -> np.ndarray:
    """L x^(k-1) - lam * x^[k-1]; zero when (lam, x) is an H-eigenpair."""
    x = _as_vector(H, x)
    return laplacian_apply(H, x) - lam * ipow(x, H.k - 1)


def geometric_means(H: Hypergraph, y) -> np.ndarray:
    """(prod_{v in e} y_v)^(1/k) per edge; works on a batch of rows."""
    y = _as_vector(H, y)
    if H.m == 0:
        return np.zeros(y.shape[:-1] + (0,))
    return np.prod(y[..., H.edge_array()], axis=-1) ** (1.0 / H.k)


def objective_y(H: Hypergraph, y) -> float:
    """f(y) = d . y - k * sum_e GM_e(y); equals laplacian_form(H, y**(1/k))."""
    y = _as_vector(H, y)
    return y @ H.degrees() - H.k * geometric_means(H, y).sum(axis=-1)


def gradient_y(H: Hypergraph, y, eps: float = 0.0) -> np.ndarray:
    """Gradient of d . y - k * sum_e GM_e(y + eps).

    Component v is ``d(v) - sum_{e ni v} GM_e(y + eps) / (y_v + eps)``.
    With eps = 0 every vertex lying in an edge must have y_v > 0.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    y = _as_vector(H, y)
    z = y + eps
    E = H.edge_array()
    if eps == 0 and H.m and np.any(z[..., E] == 0):
        raise ZeroDivisionError("gradient undefined: zero coordinate on an edge with eps = 0")
    gm = geometric_means(H, z)
    g = np.broadcast_to(H.degrees().astype(float), y.shape).copy()
    if H.m:
        scatter_subtract(g, E, gm[..., :, None] / z[..., E])
    return g


def scatter_subtract(g: np.ndarray, E: np.ndarray, vals: np.ndarray) -> None:
    """g[..., E[i, p]] -= vals[..., i, p] in a fixed, data-independent order."""
    n = g.shape[-1]
    rows = int(np.prod(g.shape[:-1]))
    flat = g.reshape(-1)
    idx = (np.arange(rows)[:, None] * n + E.reshape(1, -1)).reshape(-1)
    np.subtract.at(flat, idx, vals.reshape(-1))


def agm_bounds(a) -> tuple[float, float, float]:
    """Gap A(a) - G(a) and the two lower bounds for it.

    rhs1 pairs the largest entry with the smallest, the second largest with
    the second smallest and so on: (1/n) sum_j (sqrt b_j - sqrt b_{n+1-j})^2
    with b sorted descending. rhs2 is the all-pairs version
    1/((n-1) n) sum_{i<j} (sqrt a_i - sqrt a_j)^2.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need a vector of length >= 2")
    if np.any(a < 0):
        raise ValueError("entries must be nonnegative")
    n = a.size
    arith = a.sum() / n
    prod = np.prod(a)
    if prod == 0.0 and np.all(a > 0) or not np.isfinite(prod):
        geo = float(np.exp(np.log(a).mean()))
    else:
        geo = float(prod ** (1.0 / n))
    r = np.sqrt(np.sort(a)[::-1])
    m = n // 2
    rhs1 = float(((r[:m] - r[::-1][:m]) ** 2).sum() / n)
    diff = r[:, None] - r[None, :]
    rhs2 = float((np.triu(diff, 1) ** 2).sum() / ((n - 1) * n))
    return float(arith - geo), rhs1, rhs2
