"""Scalar root finding and 1-D optimization over the interaction time.

Locates the distinguishability zero of an excited-state probe, the
sudden-change (kink) time of the bipartite trace distance, finite-time
distance maxima, and the entanglement-advantage threshold: the smallest
Werner parameter whose finite-time distance beats the equilibrium value.
Also provides the deterministic grid sweeps behind the figure data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import discrimination
from .discrimination import (
    DiscriminationResult,
    XStateCoeffs,
    bipartite_distance,
    equilibrium_distance,
    lambdas,
    single_distance,
    werner,
)

#: default search window in gt = gamma0*tau; beyond 50 every envelope is dead
GT_BRACKET = (1e-6, 50.0)

_BISECT_XTOL = 1e-12
_GOLDEN_XTOL = 1e-10
#: margin above the equilibrium plateau required to call a maximum finite-time
_PLATEAU_MARGIN = 1e-9
_GOLDEN_RATIO = 0.5 * (math.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class Extremum:
    """A located feature of the distance curve.

    kind is one of "zero", "kink", "maximum", "minimum". location is in
    gt = gamma0*tau units and is +inf when a maximum is attained only on
    the late-time plateau. normalized carries value / (1 - 1/n) where that
    is meaningful.
    """

    location: float
    value: float
    kind: str
    normalized: float | None = None


def _bisect(f, lo: float, hi: float, xtol: float = _BISECT_XTOL) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError("bisection bracket has no sign change")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_sign_changes(f, lo: float, hi: float, points: int = 512) -> list[tuple[float, float]]:
    """Sub-brackets of [lo, hi] on which f changes sign (log-spaced scan)."""
    grid = np.geomspace(lo, hi, points) if lo > 0.0 else np.linspace(lo, hi, points)
    vals = [f(g) for g in grid]
    out = []
    for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:]):
        if fa == 0.0 or (fa > 0.0) != (fb > 0.0):
            out.append((float(a), float(b)))
    return out


def _golden_max(f, lo: float, hi: float, xtol: float = _GOLDEN_XTOL) -> tuple[float, float]:
    """Golden-section maximum of a unimodal f; endpoints are also candidates."""
    a, b = lo, hi
    c = b - _GOLDEN_RATIO * (b - a)
    d = a + _GOLDEN_RATIO * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN_RATIO * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN_RATIO * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    best = (x, f(x))
    for cand in (lo, hi):
        fcand = f(cand)
        if fcand > best[1]:
            best = (cand, fcand)
    return best


def find_zero_crossing(
    theta: float, n: float, bracket: tuple[float, float] = GT_BRACKET
) -> Extremum | None:
    """Time at which cos(theta)*L2 - L3 crosses zero, or None if it never does.

    For theta = 0 (excited-state probe) this is the time at which the
    single-probe distance itself vanishes. Returns None both for the
    inertial case (identically zero) and when no sign change exists in the
    bracket, e.g. any theta >= pi/2.
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")
    cos_theta = math.cos(theta)

    def g(gt: float) -> float:
        lam = lambdas(gt, n)
        return cos_theta * lam.lambda2 - lam.lambda3

    if n == 1.0:
        return None
    return _first_crossing(g, bracket, "zero", lambda gt: single_distance(theta, gt, n))


def find_sudden_change(
    c: float, n: float, bracket: tuple[float, float] = GT_BRACKET
) -> Extremum | None:
    """Kink time of the Werner-state trace distance: the root of c*L2 = L3.

    Later for larger c; the c = 1 kink coincides with the excited-state
    zero crossing.
    """
    if not 0.0 < c <= 1.0:
        raise ValueError(f"Werner parameter must lie in (0, 1], got {c!r}")
    if not n > 1.0:
        raise ValueError(f"thermal parameter n must be > 1, got {n!r}")

    def g(gt: float) -> float:
        lam = lambdas(gt, n)
        return c * lam.lambda2 - lam.lambda3

    return _first_crossing(g, bracket, "kink", lambda gt: bipartite_distance(werner(c), n, gt))


def _first_crossing(g, bracket, kind, result_at) -> Extremum | None:
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"invalid bracket {bracket!r}")
    sub = _scan_sign_changes(g, lo, hi)
    if not sub:
        return None
    root = _bisect(g, *sub[0])
    res: DiscriminationResult = result_at(root)
    return Extremum(root, res.distance, kind, res.normalized)


def _kink_times(c0: XStateCoeffs, n: float, bracket: tuple[float, float]) -> list[float]:
    """Interior points where one of the |.| terms of the distance switches."""

    def make(side: float):
        coeff = c0.c1 + side * c0.c2

        def g(gt: float) -> float:
            lam = lambdas(gt, n)
            return abs(c0.c3) * lam.lambda2 - math.hypot(coeff * lam.lambda1, lam.lambda3)

        return g

    times = []
    for side in (1.0, -1.0):
        for sub in _scan_sign_changes(make(side), *bracket):
            times.append(_bisect(make(side), *sub))
    return sorted(times)


def maximize_distance(
    c0: XStateCoeffs, n: float, bracket: tuple[float, float] = GT_BRACKET
) -> Extremum:
    """Global maximum of the bipartite distance over the bracket.

    The curve is golden-sectioned piecewise between its kinks, and the
    finite-time result is kept only if it beats the late-time plateau
    1 - 1/n by more than a strict margin; otherwise the supremum is the
    plateau itself, reported with location +inf.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"invalid bracket {bracket!r}")
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")

    def f(gt: float) -> float:
        return bipartite_distance(c0, n, gt).distance

    plateau = equilibrium_distance(n)
    if n == 1.0:
        return Extremum(math.inf, 0.0, "maximum", None)
    edges = [lo] + [t for t in _kink_times(c0, n, (lo, hi)) if lo < t < hi] + [hi]
    best_x, best_val = max(
        (_golden_max(f, a, b) for a, b in zip(edges, edges[1:])),
        key=lambda pair: pair[1],
    )
    if best_val > plateau + _PLATEAU_MARGIN:
        return Extremum(best_x, best_val, "maximum", best_val / plateau)
    return Extremum(math.inf, plateau, "maximum", 1.0)


def advantage_threshold_point(n: float, scan_points: int = 10_000) -> Extremum:
    """Infimum of the Werner parameter at which a finite-time advantage appears.

    Minimizes
        h(gt) = (sqrt(16 L1^2 D^2 + L2^2 L3^2 - 4 L1^2 L3^2) - 2 L2 D)
                / (4 L1^2 - L2^2),        D = 1 - 1/n,
    over a log-spaced grid on gt in [1e-4, 50] followed by golden-section
    refinement; the log spacing concentrates points where h varies fastest
    and keeps clear of the gt -> 0 removable singularity of the quotient.
    """
    if not n > 1.0:
        raise ValueError(f"thermal parameter n must be > 1, got {n!r}")
    if scan_points < 100:
        raise ValueError(f"scan_points too small: {scan_points!r}")
    d_inf = equilibrium_distance(n)

    def h(gt: float) -> float:
        lam = lambdas(gt, n)
        l1sq = lam.lambda1 ** 2
        l2 = lam.lambda2
        l3sq = lam.lambda3 ** 2
        num = (
            math.sqrt(16.0 * l1sq * d_inf ** 2 + (l2 ** 2 - 4.0 * l1sq) * l3sq)
            - 2.0 * l2 * d_inf
        )
        return num / (4.0 * l1sq - l2 ** 2)

    grid = np.geomspace(1e-4, 50.0, scan_points)
    vals = np.array([h(g) for g in grid])
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, scan_points - 1)]
    x, neg_min = _golden_max(lambda gt: -h(gt), float(lo), float(hi))
    return Extremum(x, -neg_min, "minimum")


def advantage_threshold(n: float, scan_points: int = 10_000) -> float:
    """Werner parameter above which the finite-time distance beats 1 - 1/n."""
    return advantage_threshold_point(n, scan_points).value


_SWEEP_VARIABLES = ("tau", "theta", "c", "n")
_SWEEP_QUANTITIES = ("single_distance", "bipartite_distance", "error_probability")


@dataclass(frozen=True)
class SweepGrid:
    """Equally spaced grid over one variable, the rest held in ``fixed``.

    variable is one of tau, theta, c, n; tau means gt = gamma0*tau.
    """

    variable: str
    start: float
    stop: float
    points: int
    fixed: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.variable not in _SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not self.start < self.stop:
            raise ValueError("grid needs start < stop")
        if self.points < 2:
            raise ValueError("grid needs at least 2 points")
        if self.variable in self.fixed:
            raise ValueError(f"{self.variable!r} is both swept and fixed")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    """One grid evaluation; exactly one of result / error is set."""

    value: float
    result: DiscriminationResult | None
    error: str | None = None


def _evaluate(params: dict[str, float], quantity: str) -> DiscriminationResult:
    n = params["n"]
    gt = params["tau"]
    if quantity == "error_probability":
        quantity = "single_distance" if "theta" in params else "bipartite_distance"
    if quantity == "single_distance":
        return single_distance(params["theta"], gt, n)
    c0 = (
        werner(params["c"])
        if "c" in params
        else XStateCoeffs(params["c1"], params["c2"], params["c3"])
    )
    return bipartite_distance(c0, n, gt)


def sweep(grid: SweepGrid, quantity: str) -> list[SweepRow]:
    """Evaluate one quantity over the grid, row errors marked rather than raised.

    Rows come back in grid order and the output is deterministic: the same
    grid always produces the identical table.
    """
    if quantity not in _SWEEP_QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}")
    rows: list[SweepRow] = []
    for v in grid.values():
        params = dict(grid.fixed)
        params[grid.variable] = float(v)
        try:
            rows.append(SweepRow(float(v), _evaluate(params, quantity)))
        except (ValueError, KeyError) as exc:
            rows.append(SweepRow(float(v), None, str(exc)))
    return rows
