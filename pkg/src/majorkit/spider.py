"""K-spider geometry: metric, geodesic midpoints, barycenters, convexity.

A K-spider glues K copies of the nonnegative half-line at a common
origin; the distance between points on different legs goes through the
origin.  The space is nonpositively curved, so squared-distance
barycenters exist and are unique; restricted to any one leg the
barycenter objective is a strictly convex quadratic, which makes the
minimizer computable from per-leg stationary candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .majorization import DEFAULT_RTOL, DEFAULT_TOL, InequalityReport

NPC_TOL = 1e-9


@dataclass(frozen=True)
class SpiderPoint:
    """A point (leg, radius) on a K-spider; radius 0 is the origin on leg 1."""

    leg: int
    radius: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "leg", int(self.leg))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "k", int(self.k))
        if self.k < 1:
            raise ValueError("spider needs at least one leg")
        if not 1 <= self.leg <= self.k:
            raise ValueError(f"leg {self.leg} out of range 1..{self.k}")
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise ValueError(f"radius must be finite and >= 0, got {self.radius!r}")
        if self.radius == 0.0:
            object.__setattr__(self, "leg", 1)  # origin is canonical


def origin(k: int) -> SpiderPoint:
    return SpiderPoint(1, 0.0, k)


def _same_k(p: SpiderPoint, q: SpiderPoint) -> None:
    if p.k != q.k:
        raise ValueError(f"points on different spiders: K={p.k} vs K={q.k}")


def spider_distance(p: SpiderPoint, q: SpiderPoint) -> float:
    """Path distance: |r - s| on a shared leg, r + s through the origin."""
    _same_k(p, q)
    if p.leg == q.leg:
        return abs(p.radius - q.radius)
    return p.radius + q.radius


def geodesic_midpoint(p: SpiderPoint, q: SpiderPoint) -> SpiderPoint:
    """The point halfway along the unique geodesic from p to q."""
    _same_k(p, q)
    if p.leg == q.leg:
        return SpiderPoint(p.leg, (p.radius + q.radius) / 2.0, p.k)
    if p.radius >= q.radius:
        return SpiderPoint(p.leg, (p.radius - q.radius) / 2.0, p.k)
    return SpiderPoint(q.leg, (q.radius - p.radius) / 2.0, p.k)


def npc_inequality_check(
    x0: SpiderPoint, x1: SpiderPoint, z: SpiderPoint, tol: float = NPC_TOL
) -> InequalityReport:
    """Nonpositive-curvature midpoint inequality at z for the pair x0, x1:

    d^2(z, mid) <= d^2(z, x0)/2 + d^2(z, x1)/2 - d^2(x0, x1)/4.
    """
    _same_k(x0, x1)
    _same_k(x0, z)
    y = geodesic_midpoint(x0, x1)
    lhs = spider_distance(z, y) ** 2
    rhs = (
        0.5 * spider_distance(z, x0) ** 2
        + 0.5 * spider_distance(z, x1) ** 2
        - 0.25 * spider_distance(x0, x1) ** 2
    )
    slack = rhs - lhs
    return InequalityReport(lhs, rhs, slack, slack >= -tol)


@dataclass(frozen=True)
class SpiderMeasure:
    """A finite probability measure: atoms (point, weight) with weights > 0."""

    atoms: tuple[tuple[SpiderPoint, float], ...]

    def __post_init__(self):
        atoms = tuple((p, float(w)) for p, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("measure needs at least one atom")
        k = atoms[0][0].k
        total = 0.0
        for p, w in atoms:
            if p.k != k:
                raise ValueError("atoms on different spiders")
            if w <= 0.0:
                raise ValueError(f"weights must be positive, got {w!r}")
            total += w
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {total!r}")

    @property
    def k(self) -> int:
        return self.atoms[0][0].k


def spider_objective(measure: SpiderMeasure, z: SpiderPoint) -> float:
    """The barycenter objective sum_j w_j * d^2(z, x_j)."""
    return sum(w * spider_distance(z, p) ** 2 for p, w in measure.atoms)


def tripod_barycenter(measure: SpiderMeasure) -> SpiderPoint:
    """Closed-form barycenter of a three-atom measure on the 3-spider.

    With radii a, b, c and weights w1, w2, w3 on legs 1, 2, 3: if one
    moment dominates the other two (say w3*c >= w1*a + w2*b) the
    barycenter sits on that leg at the moment difference, otherwise at
    the origin.  Equality on the boundary gives radius 0, i.e. the
    origin.  Origin atoms may stand in for any missing leg.
    """
    if measure.k != 3:
        raise ValueError("closed form is for the 3-spider")
    if len(measure.atoms) != 3:
        raise ValueError("closed form needs exactly three atoms")
    slots: list[tuple[float, float] | None] = [None, None, None]
    fill_later = []
    for p, w in measure.atoms:
        if p.radius > 0.0:
            if slots[p.leg - 1] is not None:
                raise ValueError(f"atom/leg mismatch: two atoms on leg {p.leg}")
            slots[p.leg - 1] = (p.radius, w)
        else:
            fill_later.append((0.0, w))
    for i in range(3):
        if slots[i] is None:
            slots[i] = fill_later.pop()
    (a, w1), (b, w2), (c, w3) = slots
    # max(0, .) absorbs the one-ulp disagreement between the dominance
    # test and the subtraction chain right on the boundary
    if w3 * c >= w1 * a + w2 * b:
        return SpiderPoint(3, max(0.0, w3 * c - w1 * a - w2 * b), 3)
    if w2 * b >= w1 * a + w3 * c:
        return SpiderPoint(2, max(0.0, w2 * b - w1 * a - w3 * c), 3)
    if w1 * a >= w2 * b + w3 * c:
        return SpiderPoint(1, max(0.0, w1 * a - w2 * b - w3 * c), 3)
    return origin(3)


def spider_barycenter_numeric(measure: SpiderMeasure, tie_tol: float = 0.0) -> SpiderPoint:
    """Barycenter on any K-spider by per-leg stationary candidates.

    On leg i the objective is quadratic in the radius with stationary
    point (on-leg weighted radius sum) - (off-leg weighted radius sum),
    clipped at 0.  The objective is evaluated at every candidate and the
    origin; candidates must beat the incumbent by more than tie_tol, so
    ties resolve to the origin (then to the lowest leg).
    """
    k = measure.k
    on_leg = [0.0] * (k + 1)
    total_moment = 0.0
    for p, w in measure.atoms:
        contribution = w * p.radius
        on_leg[p.leg] += contribution
        total_moment += contribution
    best = origin(k)
    best_val = spider_objective(measure, best)
    for leg in range(1, k + 1):
        r = on_leg[leg] - (total_moment - on_leg[leg])
        if r <= 0.0:
            continue  # clipped candidate coincides with the origin
        candidate = SpiderPoint(leg, r, k)
        val = spider_objective(measure, candidate)
        if val < best_val - tie_tol:
            best, best_val = candidate, val
    return best


@dataclass(frozen=True)
class SpiderFunction:
    """A function on a K-spider given by one restriction per leg.

    Restrictions are callables on [0, inf) and must agree at the origin
    (within 1e-9).
    """

    restrictions: tuple[Callable[[float], float], ...]

    def __post_init__(self):
        object.__setattr__(self, "restrictions", tuple(self.restrictions))
        if not self.restrictions:
            raise ValueError("need at least one restriction")
        at_origin = [float(f(0.0)) for f in self.restrictions]
        if max(at_origin) - min(at_origin) > 1e-9:
            raise ValueError(
                f"restrictions disagree at the origin: {at_origin}"
            )

    @property
    def k(self) -> int:
        return len(self.restrictions)

    def __call__(self, p: SpiderPoint) -> float:
        if p.k != self.k:
            raise ValueError(
                f"point on a K={p.k} spider, function defined on K={self.k}"
            )
        return float(self.restrictions[p.leg - 1](p.radius))


@dataclass(frozen=True)
class ConvexityReport:
    """Sufficient conditions for convexity of a function on the tripod.

    Each restriction must be midpoint-convex on the grid, and each
    pairwise sum of restrictions nondecreasing; the latter is checked
    both through right-derivative estimates at 0 and through sampled
    monotonicity, and pairwise_sums_nondecreasing holds the per-pair
    conjunction.  Pairs are ordered (1,2), (1,3), (2,3).
    """

    each_restriction_convex: tuple[bool, bool, bool]
    pairwise_sums_nondecreasing: tuple[bool, bool, bool]
    right_derivs_at_0: tuple[float, float, float]
    conditions_hold: bool


def convexity_conditions_check(
    f: SpiderFunction,
    h: float = 1e-6,
    grid=None,
    deriv_tol: float = 1e-4,
    tol: float = DEFAULT_TOL,
) -> ConvexityReport:
    """Check the tripod convexity conditions on sampled restrictions."""
    if f.k != 3:
        raise ValueError("convexity conditions are stated for the tripod")
    if grid is None:
        grid = [10.0 * i / 32 for i in range(33)]
    grid = sorted(float(g) for g in grid)
    if len(grid) < 2:
        raise ValueError("grid needs at least two points")

    def midpoint_convex(g) -> bool:
        vals = [g(t) for t in grid]
        for i in range(len(grid)):
            for j in range(i + 1, len(grid)):
                mid = g((grid[i] + grid[j]) / 2.0)
                avg = (vals[i] + vals[j]) / 2.0
                if mid - avg > tol + DEFAULT_RTOL * max(1.0, abs(mid), abs(avg)):
                    return False
        return True

    convex = tuple(midpoint_convex(g) for g in f.restrictions)
    derivs = tuple((g(h) - g(0.0)) / h for g in f.restrictions)
    pairs = ((0, 1), (0, 2), (1, 2))
    pairwise = []
    for i, j in pairs:
        deriv_ok = derivs[i] + derivs[j] >= -deriv_tol
        vals = [f.restrictions[i](t) + f.restrictions[j](t) for t in grid]
        sampled_ok = all(
            b - a >= -(tol + DEFAULT_RTOL * max(1.0, abs(a), abs(b)))
            for a, b in zip(vals, vals[1:])
        )
        pairwise.append(deriv_ok and sampled_ok)
    conditions = all(convex) and all(pairwise)
    return ConvexityReport(convex, tuple(pairwise), derivs, conditions)


def jensen_check(
    f: SpiderFunction, measure: SpiderMeasure, tol: float = DEFAULT_TOL
) -> InequalityReport:
    """Barycenter inequality f(b) <= sum_j w_j f(x_j) for the measure."""
    if f.k != measure.k:
        raise ValueError(
            f"measure on a K={measure.k} spider, function defined on K={f.k}"
        )
    b = spider_barycenter_numeric(measure)
    lhs = f(b)
    rhs = sum(w * f(p) for p, w in measure.atoms)
    slack = rhs - lhs
    holds = slack >= -(tol + DEFAULT_RTOL * max(1.0, abs(lhs), abs(rhs)))
    return InequalityReport(lhs, rhs, slack, holds)
