"""Analytic connectivity: minimise the Laplacian form on slices of the simplex.

For each excluded vertex j the subproblem is

    min f(y) = d . y - k * sum_e GM_e(y)   over   y >= 0, sum(y) = 1, y_j = 0

with ``y = x^[k]``. f is convex and positively 1-homogeneous. alpha(H) is the
smallest subproblem value.

Edges through j contribute only their degree term on the slice, so f splits
over the components of the remaining vertices linked by edges avoiding j.
Homogeneity puts the minimum on a single component, and inside a component
the minimiser is interior: at any boundary point some edge is partly
supported, and entering its zero coordinates has slope -inf.

Each subproblem is therefore solved as

1. entropic mirror descent (exponentiated gradient) on the eps-smoothed
   objective, batched over the uniform start and ``restarts`` Dirichlet(1)
   starts; iterates stay strictly positive;
2. at checkpoints, a Newton polish of every start restricted to each
   component, stopping once the best point passes the first-order
   certificate :func:`kkt_residual`.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .hypergraph import Hypergraph, components
from .laplacian import laplacian_form, objective_y, scatter_subtract

log = logging.getLogger(__name__)

MAX_GRID_POINTS = 10**8
SUPPORT_CLAMP = 1e-14
WINDOW = 50
FIRST_CHECKPOINT = 500


class SolverError(RuntimeError):
    pass


class GridTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-8
    max_iter: int = 50_000
    restarts: int = 8
    eps0: float = 1e-3
    eps_min: float = 1e-12
    eps_halve_every: int = 500
    seed: int = 0
    step0: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.restarts < 0:
            raise ValueError(f"restarts must be >= 0, got {self.restarts}")
        if not (self.eps0 >= self.eps_min >= 0 and self.eps_halve_every >= 1):
            raise ValueError("invalid smoothing schedule")
        if not self.step0 > 0:
            raise ValueError(f"step0 must be positive, got {self.step0}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")

    def eps_at(self, t: int) -> float:
        return max(self.eps0 * 0.5 ** ((t - 1) // self.eps_halve_every), self.eps_min)


@dataclass
class SolveOutcome:
    excluded_j: int
    value: float
    minimizer_x: np.ndarray
    kkt_residual: float
    iterations: int
    converged: bool


@dataclass
class AlphaResult:
    alpha: float
    argmin_j: int
    per_j: list[SolveOutcome] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return all(o.converged for o in self.per_j)


# ------------------------------------------------------------------ internals


class _Slice:
    """Arrays for one subproblem (0-based excluded vertex ``j``)."""

    def __init__(self, H: Hypergraph, j: int):
        self.n, self.k, self.j = H.n, H.k, j
        self.d = H.degrees().astype(float)
        self.E = H.edge_array()
        self.allowed = np.ones(H.n, dtype=bool)
        self.allowed[j] = False
        keep = ~(self.E == j).any(axis=1) if len(self.E) else np.zeros(0, dtype=bool)
        self.Ej = self.E[keep]
        self.parts = []
        for comp in _components_of(H.n, self.Ej, self.allowed):
            local = {v: i for i, v in enumerate(comp)}
            inside = np.array([e[0] in local for e in self.Ej], dtype=bool)
            Ec = np.array([[local[v] for v in e] for e in self.Ej[inside]], dtype=np.intp)
            self.parts.append((comp, Ec.reshape(-1, H.k)))

    def f(self, Y: np.ndarray) -> np.ndarray:
        if len(self.E) == 0:
            return Y @ self.d
        gm = np.prod(Y[..., self.E], axis=-1) ** (1.0 / self.k)
        return Y @ self.d - self.k * gm.sum(axis=-1)

    def grad(self, Y: np.ndarray, eps: float) -> np.ndarray:
        Z = Y + eps
        G = np.broadcast_to(self.d, Y.shape).copy()
        if len(self.E):
            ZE = Z[..., self.E]
            gm = np.prod(ZE, axis=-1) ** (1.0 / self.k)
            scatter_subtract(G, self.E, gm[..., :, None] / ZE)
        return G


def _components_of(n: int, E: np.ndarray, allowed: np.ndarray) -> list[np.ndarray]:
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in E:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                parent[r] = r0
    groups: dict[int, list[int]] = {}
    for v in np.flatnonzero(allowed):
        groups.setdefault(find(int(v)), []).append(int(v))
    return [np.array(g, dtype=np.intp) for g in sorted(groups.values())]


def _md_steps(S: _Slice, Y: np.ndarray, t0: int, t1: int, cfg: SolverConfig, last: np.ndarray):
    """Mirror descent iterations t0+1 .. t1. Returns (Y, t, window_converged, last)."""
    mask = ~S.allowed
    for t in range(t0 + 1, t1 + 1):
        G = S.grad(Y, cfg.eps_at(t))
        G[:, mask] = np.inf
        G -= G.min(axis=1, keepdims=True)  # shift invariant after renormalising
        Y = Y * np.exp(-(cfg.step0 / math.sqrt(t)) * G)
        Y /= Y.sum(axis=1, keepdims=True)
        if t % WINDOW == 0:
            cur = S.f(Y)
            if np.all(np.abs(cur - last) < cfg.tol):
                return Y, t, True, cur
            last = cur
    return Y, t1, False, last


def _newton_interior(S: _Slice, Ec: np.ndarray, dC: np.ndarray, z: np.ndarray, max_steps: int = 100):
    """Minimise dC . z - k sum GM over the open simplex of one component.

    Newton steps in coordinates scaled by z, where the Hessian of -k GM_e
    becomes (GM_e / k)(k I - 1 1^T) on the members of e.
    """
    k = S.k
    m = z.size

    def fc(w):
        return dC @ w - k * (np.prod(w[Ec], axis=1) ** (1.0 / k)).sum()

    def grad(w):
        we = w[Ec]
        gm = np.prod(we, axis=1) ** (1.0 / k)
        g = dC.copy()
        np.subtract.at(g, Ec.reshape(-1), (gm[:, None] / we).reshape(-1))
        return g, gm

    steps = 0
    for steps in range(1, max_steps + 1):
        g, gm = grad(z)
        spread = g.max() - g.min()
        if spread <= 1e-14 * (1.0 + np.abs(g).max()):
            break
        c = gm / k
        Hs = np.zeros((m, m))
        np.add.at(Hs, (Ec[:, :, None], Ec[:, None, :]), -c[:, None, None])
        np.add.at(Hs, (Ec, Ec), k * c[:, None])
        K = np.zeros((m + 1, m + 1))
        K[:m, :m] = Hs
        K[:m, m] = z
        K[m, :m] = z
        rhs = np.concatenate([-(z * g), [0.0]])
        try:
            s = np.linalg.solve(K, rhs)[:m]
        except np.linalg.LinAlgError:
            s = np.linalg.lstsq(K, rhs, rcond=None)[0][:m]
        step = z * s
        step -= z * step.sum()
        slope = float(g @ step)
        if not slope < 0:
            break
        neg = step < 0
        alpha = min(1.0, 0.99 * float((-z[neg] / step[neg]).min())) if neg.any() else 1.0
        f0 = fc(z)
        for attempt in range(60):
            trial = z + alpha * step
            if np.all(trial > 0):
                trial = trial / trial.sum()
                if fc(trial) <= f0 + 1e-4 * alpha * slope:
                    break
                # near the optimum the decrease drowns in rounding; judge by the gradient
                if attempt == 0 and alpha == 1.0:
                    g1 = grad(trial)[0]
                    if g1.max() - g1.min() < 0.5 * spread:
                        break
            alpha *= 0.5
        else:
            break
        z = trial
    return z, steps


def _polish(S: _Slice, y: np.ndarray):
    """Best point over all components, each polished from the restriction of y."""
    best_val, best_y, steps = math.inf, None, 0
    for comp, Ec in S.parts:
        if comp.size == 1 or len(Ec) == 0:
            # no edges inside: f is linear there, best at the lowest-degree vertex
            v = comp[np.argmin(S.d[comp])]
            cand = np.zeros(S.n)
            cand[v] = 1.0
        else:
            z = y[comp]
            mass = z.sum()
            z = z / mass if mass > 0 else np.full(comp.size, 1.0 / comp.size)
            z = (1.0 - 1e-6) * z + 1e-6 / comp.size
            z, s = _newton_interior(S, Ec, S.d[comp], z)
            steps += s
            cand = np.zeros(S.n)
            cand[comp] = z
        val = float(S.f(cand))
        if val < best_val:
            best_val, best_y = val, cand
    return best_y, steps


def _clamp(y: np.ndarray) -> np.ndarray:
    y = np.where(y < SUPPORT_CLAMP * y.max(), 0.0, y)
    return y / y.sum()


def _disconnected_witness(H: Hypergraph, j: int) -> np.ndarray:
    """Uniform weight on a component avoiding j (smallest first, so isolated vertices win)."""
    comps = [c for c in components(H) if j not in c]
    comp = min(comps, key=lambda c: (len(c), c))
    y = np.zeros(H.n)
    y[[v - 1 for v in comp]] = 1.0 / len(comp)
    return y


def _outcome(H: Hypergraph, j: int, y: np.ndarray, iterations: int, cfg: SolverConfig) -> SolveOutcome:
    x = y ** (1.0 / H.k)
    res = kkt_residual(H, y, j)
    value = float(laplacian_form(H, x))
    return SolveOutcome(j, value, x, res, iterations, bool(res <= 100 * cfg.tol))


# ------------------------------------------------------------------ public API


def kkt_residual(H: Hypergraph, y, j: int) -> float:
    """First-order optimality residual of a point on slice j.

    With g the gradient on the support and mu its minimum, the residual is
    the larger of the spread max|g_v - mu| over the support and the worst
    max(0, mu - g_v) over the zero coordinates other than j (there g_v is
    the one-sided derivative d(v)). It is infinite when some edge avoiding
    j is only partly supported: raising its zero coordinates together
    lowers f with unbounded slope, so such a point is never optimal.
    Zero certifies a global minimum of the convex subproblem.
    """
    y = np.asarray(y, dtype=float)
    _check_slice_point(H, y, j)
    k = H.k
    d = H.degrees().astype(float)
    E = H.edge_array()
    T = y > 0
    g = d.copy()
    for e in E:
        inside = int(T[e].sum())
        if inside == k:
            gm = np.prod(y[e]) ** (1.0 / k)
            g[e] -= gm / y[e]
        elif inside and not np.any(e == j - 1):
            return math.inf
    gT = g[T]
    mu = float(gT.min())
    res = float(np.max(np.abs(gT - mu)))
    zeros = ~T
    zeros[j - 1] = False
    if zeros.any():
        res = max(res, float(np.max(mu - d[zeros])))
    return max(res, 0.0)


def _check_slice_point(H: Hypergraph, y: np.ndarray, j: int) -> None:
    if y.shape != (H.n,):
        raise ValueError(f"expected length {H.n}, got shape {y.shape}")
    if not 1 <= j <= H.n:
        raise ValueError(f"excluded vertex {j} not in 1..{H.n}")
    if np.any(y < 0) or y[j - 1] != 0 or abs(y.sum() - 1.0) > 1e-9:
        raise ValueError("point is not on the simplex slice y >= 0, sum(y) = 1, y_j = 0")


def solve_subproblem(H: Hypergraph, j: int, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    """Minimise the Laplacian form over {x >= 0, sum x^k = 1, x_j = 0}."""
    if H.n < 2:
        raise ValueError("need at least 2 vertices")
    if not 1 <= j <= H.n:
        raise ValueError(f"excluded vertex {j} not in 1..{H.n}")
    if len(components(H)) > 1:
        return _outcome(H, j, _disconnected_witness(H, j), 0, cfg)

    S = _Slice(H, j - 1)
    rng = np.random.default_rng([cfg.seed, j])
    p = int(S.allowed.sum())
    Y = np.zeros((cfg.restarts + 1, H.n))
    Y[0, S.allowed] = 1.0 / p
    if cfg.restarts:
        Y[1:, S.allowed] = rng.dirichlet(np.ones(p), size=cfg.restarts)

    last = S.f(Y)
    t, checkpoint, total = 0, FIRST_CHECKPOINT, 0
    best_y, best_res = None, math.inf
    while True:
        Y, t, window_ok, last = _md_steps(S, Y, t, min(checkpoint, cfg.max_iter), cfg, last)
        if not np.all(np.isfinite(last)):
            raise SolverError(f"non-finite objective in subproblem j={j}")
        polish_steps = 0
        cands = []
        for row in Y:
            y, s = _polish(S, row)
            polish_steps += s
            y = _clamp(y)
            cands.append((float(objective_y(H, y)), kkt_residual(H, y, j), y))
        # values within rounding of the minimum are ties; prefer the smaller residual
        best_val = min(c[0] for c in cands)
        near = [c for c in cands if c[0] <= best_val + 1e-12 * (1.0 + abs(best_val))]
        _, best_res, best_y = min(near, key=lambda c: c[1])
        total = t + polish_steps
        log.debug("j=%d t=%d value=%.17g residual=%.3g", j, t, best_val, best_res)
        if best_res <= cfg.tol or t >= cfg.max_iter or window_ok and best_res <= 100 * cfg.tol:
            break
        checkpoint *= 2
    return _outcome(H, j, best_y, total, cfg)


def _solve_star(args):
    return solve_subproblem(*args)


def analytic_connectivity(H: Hypergraph, cfg: SolverConfig = SolverConfig(), jobs: int = 1) -> AlphaResult:
    """alpha(H) = min over j of the subproblem minima.

    Subproblems are independent and seeded by (cfg.seed, j), so the result
    does not depend on ``jobs``.
    """
    if H.n < 2:
        raise ValueError("analytic connectivity needs n >= 2")
    tasks = [(H, j, cfg) for j in range(1, H.n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_j = list(pool.map(_solve_star, tasks))
    else:
        per_j = [solve_subproblem(*t) for t in tasks]
    alpha = min(o.value for o in per_j)
    argmin = next(o.excluded_j for o in per_j if o.value <= alpha + cfg.tol)
    return AlphaResult(alpha, argmin, per_j)


def certify_upper(H: Hypergraph, x, j: int) -> float:
    """Laplacian form at a feasible point of slice j: an upper bound on alpha(H)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (H.n,):
        raise ValueError(f"expected length {H.n}, got shape {x.shape}")
    if not 1 <= j <= H.n:
        raise ValueError(f"excluded vertex {j} not in 1..{H.n}")
    if np.any(x < 0):
        raise ValueError("negative entry")
    if x[j - 1] != 0:
        raise ValueError(f"x_{j} must be 0")
    total = float((x ** H.k).sum())
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"sum of x_i^k is {total}, not within 1e-6 of 1")
    x = x / total ** (1.0 / H.k)
    return float(laplacian_form(H, x))


# ---------------------------------------------------------------- grid oracle


def _grid_count(p: int, M: int) -> int:
    return math.comb(M + p - 1, p - 1)


def _compositions(p: int, M: int, chunk: int = 200_000):
    """All p-tuples of nonnegative integers summing to M, in chunks (stars and bars)."""
    if p == 1:
        yield np.array([[M]], dtype=np.int64)
        return
    bars = combinations(range(M + p - 1), p - 1)
    while True:
        block = np.fromiter(
            (b for combo in _take(bars, chunk) for b in combo), dtype=np.int64
        ).reshape(-1, p - 1)
        if block.size == 0:
            return
        padded = np.hstack([
            np.full((len(block), 1), -1, dtype=np.int64), block,
            np.full((len(block), 1), M + p - 1, dtype=np.int64),
        ])
        yield np.diff(padded, axis=1) - 1


def _take(it, count):
    for _, item in zip(range(count), it):
        yield item


def _int_root(p: np.ndarray, k: int) -> np.ndarray:
    """p**(1/k) for nonnegative integers, exact when p is a perfect k-th power."""
    approx = p.astype(float) ** (1.0 / k)
    r = np.rint(approx).astype(np.int64)
    return np.where(r**k == p, r.astype(float), approx)


def grid_oracle(H: Hypergraph, j: int, M: int) -> float:
    """Minimum of the y-objective over the grid {y in (1/M) Z^n, sum 1, y_j = 0}.

    Every grid point is feasible, so this is an upper bound on the
    subproblem value; it converges to it as M grows.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    if not 1 <= j <= H.n or H.n < 2:
        raise ValueError(f"excluded vertex {j} not in 1..{H.n}")
    p = H.n - 1
    count = _grid_count(p, M)
    if count > MAX_GRID_POINTS:
        raise GridTooLarge(f"{count} grid points exceed the limit of {MAX_GRID_POINTS}")
    d = H.degrees()
    others = [v for v in range(H.n) if v != j - 1]
    E = H.edge_array()
    best = math.inf
    for C in _compositions(p, M):
        full = np.zeros((len(C), H.n), dtype=np.int64)
        full[:, others] = C
        lin = full @ d
        if len(E):
            prods = np.prod(full[:, E], axis=-1)
            gm = _int_root(prods, H.k).sum(axis=1)
        else:
            gm = 0.0
        vals = (lin - H.k * gm) / M
        best = min(best, float(vals.min()))
    return best


def alpha_oracle(H: Hypergraph, M: int) -> float:
    return min(grid_oracle(H, j, M) for j in range(1, H.n + 1))
