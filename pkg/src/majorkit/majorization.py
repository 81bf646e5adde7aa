"""Majorization orders on real vectors and the inequalities they support.

Three nested order checks share one convention: a relation holds when
every defining slack (right side minus left side) clears a tolerance
scaled to the compared magnitudes.

* weak:      every descending prefix sum of x is bounded by the matching
             prefix sum of y.
* classical: weak, plus equal totals.
* strong:    cross-product inequalities
             ``prefix_x[k] * suffix_y[k] <= prefix_y[k] * suffix_x[k]``
             for k = 1..N-1, plus ``total_x <= total_y``.  The
             cross-product form never divides, so vanishing partial sums
             are legal; for nonnegative data it is equivalent to
             ``x`` classically majorized by ``alpha * y`` together with
             ``alpha <= 1``, where alpha is the mass ratio below.

On top of the orders: a ratio-weighted Hardy-Littlewood-Polya inequality
for convex f (``mean f(x) <= alpha * mean f(y) + (1 - alpha) * f(0)``),
the Tomic-Weyl inequality for nondecreasing convex f, a doubly stochastic
witness built from averaging (T-transform) steps, and a sampled
Schur-Ostrowski criterion for symmetric multivariate functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import accumulate
from typing import Callable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9  # absolute slack allowance
DEFAULT_RTOL = 1e-12  # relative part, scaled to the compared magnitudes


@dataclass(frozen=True)
class RankedVector:
    """A vector with its descending rearrangement and prefix sums."""

    original: tuple[float, ...]
    sorted_desc: tuple[float, ...]
    prefix: tuple[float, ...]
    order: tuple[int, ...]  # sorted_desc[i] == original[order[i]]

    @property
    def total(self) -> float:
        return self.prefix[-1]

    def __len__(self) -> int:
        return len(self.original)


def rank_descending(v) -> RankedVector:
    """Sort a vector in descending order, keeping ties in input order.

    Raises ValueError on an empty vector or any non-finite entry.
    """
    if isinstance(v, RankedVector):
        return v
    vals = [float(a) for a in v]
    if not vals:
        raise ValueError("empty vector")
    for a in vals:
        if not math.isfinite(a):
            raise ValueError(f"non-finite entry {a!r}")
    order = sorted(range(len(vals)), key=lambda i: -vals[i])
    desc = tuple(vals[i] for i in order)
    return RankedVector(tuple(vals), desc, tuple(accumulate(desc)), tuple(order))


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of an order check.

    relation is one of "none", "weak", "classical", "strong".  slacks hold
    the per-k margins (right side minus left side) of the defining
    inequalities; alpha is total_x / total_y whenever total_y > 0.  For
    strong checks the raw cross products are kept in strong_lhs/strong_rhs
    so a failure can be reported exactly.
    """

    relation: str
    slacks: tuple[float, ...]
    alpha: float | None
    total_x: float
    total_y: float
    strong_lhs: tuple[float, ...] | None = None
    strong_rhs: tuple[float, ...] | None = None


def _pair(x, y) -> tuple[RankedVector, RankedVector]:
    rx, ry = rank_descending(x), rank_descending(y)
    if len(rx) != len(ry):
        raise ValueError(f"length mismatch: {len(rx)} vs {len(ry)}")
    return rx, ry


def _alpha_of(total_x: float, total_y: float) -> float | None:
    return total_x / total_y if total_y > 0 else None


def _leq(lhs: float, rhs: float, tol: float, rtol: float) -> bool:
    return rhs - lhs >= -(tol + rtol * max(1.0, abs(lhs), abs(rhs)))


def check_weak(x, y, tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL) -> MajorizationVerdict:
    """Prefix-sum domination test (weak majorization of x by y)."""
    rx, ry = _pair(x, y)
    slacks = tuple(py - px for px, py in zip(rx.prefix, ry.prefix))
    ok = all(_leq(px, py, tol, rtol) for px, py in zip(rx.prefix, ry.prefix))
    return MajorizationVerdict(
        "weak" if ok else "none", slacks, _alpha_of(rx.total, ry.total), rx.total, ry.total
    )


def check_classical(x, y, tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL) -> MajorizationVerdict:
    """Weak majorization plus equal totals.

    The verdict's relation is "classical" when both parts pass, "weak"
    when only the prefix inequalities pass, else "none".
    """
    rx, ry = _pair(x, y)
    weak = check_weak(rx, ry, tol, rtol)
    totals_match = abs(rx.total - ry.total) <= tol + rtol * max(
        1.0, abs(rx.total), abs(ry.total)
    )
    if weak.relation == "weak" and totals_match:
        return replace(weak, relation="classical")
    return weak


def check_strong(x, y, tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL) -> MajorizationVerdict:
    """Cross-product prefix/suffix domination plus total domination.

    Each cross-product inequality is allowed a slack of tol * scale with
    scale = max(1, |total_x * total_y|); suffixes are total - prefix, so
    integer data stays exact.
    """
    rx, ry = _pair(x, y)
    n = len(rx)
    scale = max(1.0, abs(rx.total * ry.total))
    lhs, rhs, slacks = [], [], []
    ok = _leq(rx.total, ry.total, tol, rtol)
    for k in range(n - 1):
        hx, hy = rx.prefix[k], ry.prefix[k]
        left = hx * (ry.total - hy)
        right = hy * (rx.total - hx)
        lhs.append(left)
        rhs.append(right)
        slacks.append(right - left)
        if right - left < -tol * scale:
            ok = False
    return MajorizationVerdict(
        "strong" if ok else "none",
        tuple(slacks),
        _alpha_of(rx.total, ry.total),
        rx.total,
        ry.total,
        tuple(lhs),
        tuple(rhs),
    )


def mass_ratio(x, y) -> float:
    """The scaling constant alpha = total(x) / total(y).

    y must be entrywise nonnegative with a positive total; when x is
    strongly majorized by y and x >= 0, alpha lies in [0, 1].
    """
    rx = rank_descending(x)
    ry = rank_descending(y)
    if any(v < 0.0 for v in ry.original):
        raise ValueError("y must be nonnegative")
    if ry.total <= 0.0:
        raise ValueError("alpha undefined: total of y is not positive")
    return rx.total / ry.total


@dataclass(frozen=True)
class InequalityReport:
    """A checked inequality: lhs <= rhs up to tolerance."""

    lhs: float
    rhs: float
    slack: float
    holds: bool
    alpha: float | None = None
    precondition_ok: bool = True
    warnings: tuple[str, ...] = ()


def hlp_generalized_check(
    x, y, f: Callable[[float], float], tol: float = DEFAULT_TOL
) -> InequalityReport:
    """Ratio-weighted Hardy-Littlewood-Polya inequality for convex f.

    Checks mean f(x_i) <= alpha * mean f(y_i) + (1 - alpha) * f(0) with
    alpha the mass ratio.  Requires nonnegative vectors and total(y) > 0
    (raised as errors); failure of the strong-majorization precondition is
    flagged on the report rather than raised.
    """
    rx, ry = _pair(x, y)
    if any(v < 0.0 for v in rx.original) or any(v < 0.0 for v in ry.original):
        raise ValueError("vectors must be nonnegative")
    alpha = mass_ratio(rx, ry)
    pre_ok = check_strong(rx, ry, tol).relation == "strong"
    n = len(rx)
    lhs = sum(f(v) for v in rx.original) / n
    rhs = alpha * (sum(f(v) for v in ry.original) / n) + (1.0 - alpha) * f(0.0)
    slack = rhs - lhs
    holds = _leq(lhs, rhs, tol, DEFAULT_RTOL)
    warnings = () if pre_ok else ("x is not strongly majorized by y",)
    return InequalityReport(lhs, rhs, slack, holds, alpha, pre_ok, warnings)


def tomic_weyl_check(
    x, y, f: Callable[[float], float], tol: float = DEFAULT_TOL
) -> InequalityReport:
    """Sum comparison sum f(x_i) <= sum f(y_i) for nondecreasing convex f.

    Requires x weakly majorized by y (flagged on the report when it
    fails).  Monotonicity of f is sampled on 64 grid points over the
    observed value range; a non-monotone f only adds a warning, since the
    conclusion still stands for convex f with f(0) = 0 under strong
    majorization.
    """
    rx, ry = _pair(x, y)
    pre_ok = check_weak(rx, ry, tol).relation == "weak"
    lhs = float(sum(f(v) for v in rx.original))
    rhs = float(sum(f(v) for v in ry.original))
    warnings: list[str] = []
    lo = min(rx.sorted_desc[-1], ry.sorted_desc[-1])
    hi = max(rx.sorted_desc[0], ry.sorted_desc[0])
    if hi > lo:
        vals = [f(lo + (hi - lo) * i / 63) for i in range(64)]
        if any(not _leq(a, b, tol, DEFAULT_RTOL) for a, b in zip(vals, vals[1:])):
            warnings.append("f is not nondecreasing on the sampled range")
    if not pre_ok:
        warnings.append("x is not weakly majorized by y")
    holds = _leq(lhs, rhs, tol, DEFAULT_RTOL)
    return InequalityReport(lhs, rhs, rhs - lhs, holds, None, pre_ok, tuple(warnings))


@dataclass(frozen=True)
class StochasticMatrix:
    """A square matrix intended to be doubly stochastic."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def is_doubly_stochastic(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff entries >= -tol and all row and column sums are 1 within tol."""
    m = np.asarray(getattr(a, "entries", a), dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.size == 0:
        return True
    if m.min() < -tol:
        return False
    return bool(
        np.all(np.abs(m.sum(axis=0) - 1.0) <= tol)
        and np.all(np.abs(m.sum(axis=1) - 1.0) <= tol)
    )


def doubly_stochastic_witness(x, y, tol: float = DEFAULT_TOL) -> StochasticMatrix:
    """A doubly stochastic A with x = A y, for x classically majorized by y.

    Built the classical way: on the descending rearrangements, repeated
    averaging steps (T-transforms) move y onto x, pinning at least one
    coordinate exactly per step; the product is then conjugated by the two
    sorting permutations.  Guarantees max|x - A y| <= 10 * tol.
    """
    rx, ry = _pair(x, y)
    if check_classical(rx, ry, tol).relation != "classical":
        raise ValueError("x not majorized by y")
    n = len(rx)
    xs = list(rx.sorted_desc)
    ycur = list(ry.sorted_desc)
    astar = np.eye(n)
    eps = tol + DEFAULT_RTOL * max(1.0, max(abs(v) for v in xs + ycur))
    for _ in range(n):
        j = next((i for i in reversed(range(n)) if ycur[i] - xs[i] > eps), -1)
        if j < 0:
            break
        k = next((i for i in range(j + 1, n) if ycur[i] < xs[i]), -1)
        if k < 0:
            break  # residual within the tolerance band of the precondition
        dj = ycur[j] - xs[j]
        dk = xs[k] - ycur[k]
        delta = min(dj, dk)
        lam = 1.0 - delta / (ycur[j] - ycur[k])
        t = np.eye(n)
        t[j, j] = t[k, k] = lam
        t[j, k] = t[k, j] = 1.0 - lam
        if dj <= dk:
            ycur[j] = xs[j]  # pin exactly; avoids floating-point stalls
            ycur[k] = ycur[k] + delta
        else:
            ycur[k] = xs[k]
            ycur[j] = ycur[j] - delta
        astar = t @ astar
    sx = np.zeros((n, n))
    sx[np.arange(n), rx.order] = 1.0
    sy = np.zeros((n, n))
    sy[np.arange(n), ry.order] = 1.0
    return StochasticMatrix(sx.T @ astar @ sy)


@dataclass(frozen=True)
class SchurReport:
    """Sampled Schur-Ostrowski classification of a symmetric function.

    min_slack_convex is the minimum over samples and index pairs of
    (x_i - x_j) * (dF/dx_i - dF/dx_j); min_slack_concave is the minimum of
    its negation.  witness_point/witness_pair locate the reported minimum
    (or the symmetry failure when the verdict is inconclusive).
    """

    verdict: str  # schur_convex | schur_concave | neither | inconclusive
    min_slack_convex: float
    min_slack_concave: float
    witness_point: tuple[float, ...] | None
    witness_pair: tuple[int, int] | None
    skipped: int = 0
    symmetric: bool = True


def schur_ostrowski_check(
    f: Callable[[Sequence[float]], float],
    dim: int,
    domain: tuple[float, float] = (0.0, 10.0),
    samples: int = 512,
    seed: int = 0,
    fd_step: float = 1e-5,
    fd_tol: float = 1e-6,
) -> SchurReport:
    """Classify a symmetric function by the sampled Schur-Ostrowski sign test.

    Symmetry is spot-checked on random permutations first; partial
    derivatives come from central differences with step fd_step.  Samples
    where f fails to evaluate are skipped; more than 10% skipped (or a
    symmetry failure) yields "inconclusive".
    """
    if dim < 2:
        raise ValueError("dim must be >= 2")
    lo, hi = float(domain[0]), float(domain[1])
    if not lo < hi:
        raise ValueError("domain must be a nonempty open interval")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    pad = min(max(fd_step, (hi - lo) * 1e-9), (hi - lo) / 4)
    pts = rng.uniform(lo + pad, hi - pad, size=(samples, dim))

    for i in range(min(32, samples)):
        p = pts[i]
        try:
            base = float(f(p))
            permuted = float(f(rng.permutation(p)))
        except Exception:
            continue
        if not (math.isfinite(base) and math.isfinite(permuted)):
            continue
        if abs(base - permuted) > fd_tol * max(1.0, abs(base), abs(permuted)):
            return SchurReport(
                "inconclusive",
                math.nan,
                math.nan,
                tuple(p),
                None,
                symmetric=False,
            )

    min_c = math.inf
    max_c = -math.inf
    arg_min: tuple[tuple[float, ...], tuple[int, int]] | None = None
    arg_max: tuple[tuple[float, ...], tuple[int, int]] | None = None
    skipped = 0
    for p in pts:
        grad = np.empty(dim)
        try:
            for i in range(dim):
                step = np.zeros(dim)
                step[i] = fd_step
                grad[i] = (float(f(p + step)) - float(f(p - step))) / (2 * fd_step)
        except Exception:
            skipped += 1
            continue
        if not np.all(np.isfinite(grad)):
            skipped += 1
            continue
        for i in range(dim):
            for j in range(i + 1, dim):
                c = (p[i] - p[j]) * (grad[i] - grad[j])
                if c < min_c:
                    min_c = c
                    arg_min = (tuple(p), (i, j))
                if c > max_c:
                    max_c = c
                    arg_max = (tuple(p), (i, j))

    if skipped > 0.1 * samples or arg_min is None:
        return SchurReport(
            "inconclusive", math.nan, math.nan, None, None, skipped=skipped
        )
    min_slack_convex = min_c
    min_slack_concave = -max_c
    if min_slack_convex >= -fd_tol:
        verdict, witness = "schur_convex", arg_min
    elif min_slack_concave >= -fd_tol:
        verdict, witness = "schur_concave", arg_max
    else:
        verdict, witness = "neither", arg_min
    return SchurReport(
        verdict,
        min_slack_convex,
        min_slack_concave,
        witness[0],
        witness[1],
        skipped=skipped,
    )
