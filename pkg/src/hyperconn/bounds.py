"""Upper and lower bounds on alpha(H) from degrees, cuts, diameter and designs.

``verify_all`` evaluates every bound that applies to a hypergraph and checks
it against an alpha estimate with an additive slack. Bounds that do not
apply are recorded as such, never dropped.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .hypergraph import (
    Hypergraph,
    check_two_design,
    components,
    degree_profile,
    diameter,
    remove_vertices,
)
from .invariants import EnumerationTooLarge, edge_connectivity, isoperimetric_number, vertex_connectivity

DEFAULT_SLACK = 1e-4


class NotApplicable(ValueError):
    """The hypotheses of a bound are not met by this hypergraph."""


def degree_bound(H: Hypergraph) -> float:
    """min over edges of (sum of member degrees - k) / k."""
    if H.m < 2:
        raise NotApplicable("degree bound needs more than one edge")
    d = H.degrees()
    return min((sum(int(d[v - 1]) for v in e) - H.k) / H.k for e in H.edges)


def gen_binomial(x: float, m: int) -> float:
    """x (x-1) ... (x-m+1) / m! for real x."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = 1.0
    for i in range(m):
        out *= (x - i) / (i + 1)
    return out


def _cutset_formula(n: int, k: int, v: int, half: float) -> float:
    small = max(gen_binomial(half - 1, k - 1), 0.0)
    return math.comb(n - 2, k - 2) - (math.comb(n - v - 1, k - 1) - small) * (k - 1) / (n - 1)


def cutset_bound(H: Hypergraph, floor_half: bool = False) -> Optional[float]:
    """Vertex-connectivity upper bound; None when H has no vertex cut.

    The smallest component left by a minimum cut has at most (n - v)/2
    vertices. By default that half is used as written, with the binomial
    of a possibly fractional top clamped at 0; ``floor_half`` uses
    floor((n - v)/2) instead.
    """
    vc = vertex_connectivity(H)
    if vc is None:
        return None
    v = vc[0]
    half = (H.n - v) // 2 if floor_half else (H.n - v) / 2
    return _cutset_formula(H.n, H.k, v, half)


def cheeger_bounds(H: Hypergraph) -> tuple[float, float]:
    """(k/2 * i(H), Delta - sqrt(Delta^2 - i(H)^2)); stated for k >= 3."""
    if H.k < 3:
        raise NotApplicable("the isoperimetric bounds are stated for k >= 3")
    i = float(isoperimetric_number(H)[0])
    delta = degree_profile(H).max_degree
    return H.k / 2 * i, delta - math.sqrt(max(delta * delta - i * i, 0.0))


def diameter_lower_bound(H: Hypergraph) -> float:
    """4 / (n^2 (k-1) diam(H))."""
    if H.n < 2:
        raise NotApplicable("need at least 2 vertices")
    diam = diameter(H)
    if math.isinf(diam):
        raise NotApplicable("disconnected: infinite diameter")
    return 4.0 / (H.n**2 * (H.k - 1) * diam)


def design_alpha(H: Hypergraph) -> Optional[int]:
    """lambda when H is a simple 2-design with no cut vertex, else None."""
    params = check_two_design(H)
    if params is None:
        return None
    for v in range(1, H.n + 1):
        if len(components(remove_vertices(H, [v]))) > 1:
            return None
    return params.lam


def is_complete(H: Hypergraph) -> bool:
    return H.n >= H.k and H.m == math.comb(H.n, H.k)


@dataclass
class BoundCheck:
    name: str
    relation: str
    bound: Optional[float]
    passed: Optional[bool]
    note: str = ""


@dataclass
class BoundReport:
    alpha_estimate: float
    slack: float
    degree_upper: Optional[float] = None
    cutset_upper: Optional[float] = None
    cutset_upper_floor: Optional[float] = None
    cheeger_upper: Optional[float] = None
    cheeger_lower: Optional[float] = None
    diameter_lower: Optional[float] = None
    edge_connectivity: Optional[int] = None
    edge_conn_rhs: Optional[float] = None
    design_value: Optional[int] = None
    checks: list[BoundCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def check(self, name: str) -> BoundCheck:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return asdict(self)


def verify_all(H: Hypergraph, alpha_estimate: float, slack: float = DEFAULT_SLACK) -> BoundReport:
    """Check every applicable bound against ``alpha_estimate`` with additive slack."""
    if not slack > 0:
        raise ValueError("slack must be positive")
    a = float(alpha_estimate)
    rep = BoundReport(a, slack)
    add = rep.checks.append

    def skipped(name, relation, why):
        add(BoundCheck(name, relation, None, None, f"not applicable: {why}"))

    connected = len(components(H)) == 1
    if connected:
        add(BoundCheck("connectivity", "alpha > 0 (connected)", 0.0, a > 0))
    else:
        add(BoundCheck("connectivity", "alpha <= slack (disconnected)", 0.0, a <= slack))

    try:
        rep.degree_upper = degree_bound(H)
        add(BoundCheck("degree", "alpha <= degree bound", rep.degree_upper, a <= rep.degree_upper + slack))
    except NotApplicable as exc:
        skipped("degree", "alpha <= degree bound", exc)

    relation = "alpha <= cut-set bound"
    if H.n < 2:
        skipped("cutset", relation, "n < 2")
    elif is_complete(H):
        skipped("cutset", relation, "complete hypergraph")
    else:
        try:
            rep.cutset_upper = cutset_bound(H)
            if rep.cutset_upper is None:
                skipped("cutset", relation, "no vertex cut")
            else:
                add(BoundCheck("cutset", relation, rep.cutset_upper, a <= rep.cutset_upper + slack))
                floor = cutset_bound(H, floor_half=True)
                if floor != rep.cutset_upper:
                    rep.cutset_upper_floor = floor
                    add(BoundCheck("cutset_floor", "alpha <= cut-set bound, floor((n-v)/2)",
                                   floor, a <= floor + slack))
        except EnumerationTooLarge as exc:
            skipped("cutset", relation, exc)

    try:
        rep.cheeger_upper, rep.cheeger_lower = cheeger_bounds(H)
        note = "" if connected else "disconnected: i(H) = 0, bounds are trivial"
        add(BoundCheck("cheeger_upper", "alpha <= k/2 i(H)", rep.cheeger_upper,
                       a <= rep.cheeger_upper + slack, note))
        add(BoundCheck("cheeger_lower", "alpha >= Delta - sqrt(Delta^2 - i(H)^2)", rep.cheeger_lower,
                       a >= rep.cheeger_lower - slack, note))
    except (NotApplicable, EnumerationTooLarge, ValueError) as exc:
        skipped("cheeger_upper", "alpha <= k/2 i(H)", exc)
        skipped("cheeger_lower", "alpha >= Delta - sqrt(Delta^2 - i(H)^2)", exc)

    try:
        rep.diameter_lower = diameter_lower_bound(H)
        add(BoundCheck("diameter", "alpha >= 4/(n^2 (k-1) diam)", rep.diameter_lower,
                       a >= rep.diameter_lower - slack))
    except NotApplicable as exc:
        skipped("diameter", "alpha >= 4/(n^2 (k-1) diam)", exc)

    try:
        rep.edge_connectivity = edge_connectivity(H)[0]
        rep.edge_conn_rhs = H.n / H.k * a
        add(BoundCheck("edge_connectivity", "e(H) >= (n/k) alpha", rep.edge_conn_rhs,
                       rep.edge_connectivity >= rep.edge_conn_rhs - slack))
    except (EnumerationTooLarge, ValueError) as exc:
        skipped("edge_connectivity", "e(H) >= (n/k) alpha", exc)

    if H.k == 2 and H.n >= 2:
        try:
            vc = vertex_connectivity(H)
            if vc is not None:
                bound = (H.n + vc[0] - 2) / (2 * (H.n - 1))
                add(BoundCheck("cutset_graph", "alpha <= (n + v - 2)/(2(n - 1))", bound, a <= bound + slack))
        except EnumerationTooLarge as exc:
            skipped("cutset_graph", "alpha <= (n + v - 2)/(2(n - 1))", exc)

    rep.design_value = design_alpha(H)
    if rep.design_value is None:
        skipped("design", "alpha = lambda", "not a 2-design without cut vertex")
    else:
        add(BoundCheck("design", "alpha = lambda", float(rep.design_value),
                       abs(a - rep.design_value) <= slack))
    return rep


__all__ = [
    "BoundCheck",
    "BoundReport",
    "NotApplicable",
    "cheeger_bounds",
    "cutset_bound",
    "degree_bound",
    "design_alpha",
    "diameter_lower_bound",
    "gen_binomial",
    "verify_all",
]
