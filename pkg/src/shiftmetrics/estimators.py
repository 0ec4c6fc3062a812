"""Log-log slope estimators for dimensions and entropy-like growth rates.

Every limit quantity is realized as a least-squares slope over an explicit
ladder (radii for dimensions, window depths for entropies), with three
diagnostics attached: the fit residual, a first-half/second-half slope
spread (a limsup/liminf proxy; a large spread is flagged, never averaged
away), and a saturation bit set when any requested window exceeded the
available horizon.

Counting estimators are exact: balls are cylinders here, distinct cylinders
over one window are disjoint, so minimal covers and spanning cardinalities
are plain word counts.  Measure estimators reduce to exact cylinder masses.
``verify_identities`` then cross-checks the computed slopes against the
closed-form products of entropies and scale constants.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .cylinders import (
    RadiusLadder,
    alpha_ball_to_cylinder,
    alpha_window,
    ball_to_cylinder,
    bowen_ball_to_cylinder,
    bowen_window,
    neutralized_ball_to_cylinder,
    neutralized_window,
    p_of_log_r,
    p_of_r,
    q_of_log_r,
    q_of_r,
    require_alpha_regime,
)
from .errors import (
    BadMeasure,
    ConstraintViolated,
    HorizonExceeded,
    HypothesisViolated,
    IncompatibleInputs,
    NoSolution,
)
from .measures import (
    ENUMERATION_LIMIT,
    Measure,
    log_word_mass,
    minimal_cover_log_count,
    sample_typical,
    supported_on,
)
from .metrics import ONE_SIDED, MetricParams
from .shiftspace import Point, ShiftSpace, count_words

#: Reference radius used wherever a fixed radius only shifts the intercept.
DEFAULT_R1 = 0.9
#: Relative half-vs-half slope spread beyond which an estimate is flagged.
SPREAD_TOL = 0.2
#: Relative tolerance for algebraically exact identities.
EXACT_TOL = 1e-9
#: Relative tolerance for word-count regressions.
COUNT_TOL = 0.02
#: Relative tolerance for measure (Monte-Carlo) regressions.
MEASURE_TOL = 0.05


@dataclass(frozen=True)
class SlopeEstimate:
    """Least-squares slope with fit diagnostics.

    ``spread`` is the |first-half slope - second-half slope| of the ladder;
    ``flagged`` marks a spread above ``SPREAD_TOL`` relative to the slope.
    ``saturated`` records that at least one requested window did not fit the
    available horizon and was dropped.
    """

    slope: float
    intercept: float
    residual_rms: float
    ladder: tuple
    saturated: bool
    spread: float = 0.0
    flagged: bool = False

    def __post_init__(self):
        if not self.residual_rms >= 0.0:
            raise ValueError(f"residual_rms must be >= 0, got {self.residual_rms}")


@dataclass(frozen=True)
class RelationReport:
    """One verified identity: measured lhs vs closed-form rhs."""

    name: str
    lhs: float
    rhs: float
    rel_error: float
    passed: bool
    tolerance: float
    value: float | None = None

    def __post_init__(self):
        if self.passed != (self.rel_error <= self.tolerance):
            raise ValueError("passed must equal (rel_error <= tolerance)")


def relation_report(
    name: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    value: float | None = None,
    ordered: bool = False,
) -> RelationReport:
    """Build a report; ``ordered=True`` checks lhs <= rhs instead of equality."""
    scale = max(abs(rhs), 1e-300)
    if ordered:
        rel = max(0.0, (lhs - rhs) / scale)
    else:
        rel = abs(lhs - rhs) / scale
    return RelationReport(name, lhs, rhs, rel, rel <= tolerance, tolerance, value)


def _fit_slope(
    xs: Sequence[float],
    ys: Sequence[float],
    ladder: tuple,
    saturated: bool,
    spread_tol: float = SPREAD_TOL,
) -> SlopeEstimate:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2:
        raise HorizonExceeded(f"need at least two usable ladder points, got {x.size}")
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    slope, intercept = float(coef[0]), float(coef[1])
    resid = y - A @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    spread = 0.0
    if x.size >= 4:
        order = np.argsort(x)
        half = x.size // 2
        parts = []
        for sel in (order[:half], order[half:]):
            Ah = np.vstack([x[sel], np.ones(sel.size)]).T
            ch, *_ = np.linalg.lstsq(Ah, y[sel], rcond=None)
            parts.append(float(ch[0]))
        spread = abs(parts[1] - parts[0])
    flagged = spread > spread_tol * max(abs(slope), 1e-12)
    return SlopeEstimate(slope, intercept, rms, ladder, saturated, spread, flagged)


def _ladder_key(ladder) -> tuple:
    if isinstance(ladder, RadiusLadder):
        return tuple(ladder.r_values)
    return tuple(ladder)


def _cover_length_at_radius(params: MetricParams, r: float) -> int:
    """Window length of the cylinder equal to a radius-r ball."""
    if params.mode == ONE_SIDED:
        return p_of_r(r, params.b)
    return p_of_r(r, params.b) + q_of_r(r, params.a) - 1


def _cover_length_at_log_radius(params: MetricParams, log_r: float) -> int:
    if params.mode == ONE_SIDED:
        return p_of_log_r(log_r, params.b)
    return p_of_log_r(log_r, params.b) + q_of_log_r(log_r, params.a) - 1


def _split_depth(params: MetricParams, total: int) -> tuple[int, int]:
    """Split n + m = total between backward and forward depth."""
    if params.mode == ONE_SIDED:
        return 0, total
    n = total // 2
    return n, total - n


def _depth_values(nm_range: Iterable[int]) -> tuple[int, ...]:
    vals = tuple(int(t) for t in nm_range)
    if not vals or any(t < 1 for t in vals):
        raise HypothesisViolated(f"window depths must be positive integers, got {vals!r}")
    if len(set(vals)) < 2:
        raise HypothesisViolated("need at least two distinct window depths for a slope")
    return vals


def box_dimension(space: ShiftSpace, params: MetricParams, ladder: RadiusLadder) -> SlopeEstimate:
    """Box-counting dimension: slope of ln N(r) against ln(1/r).

    The minimal r-cover is exact: radius-r balls coincide with cylinders on
    a fixed window, distinct cylinders are disjoint, so N(r) is the number
    of admissible words on that window.  Upper and lower box dimensions
    coincide by this exactness.
    """
    xs, ys = [], []
    for r in ladder:
        length = _cover_length_at_radius(params, r)
        xs.append(math.log(1.0 / r))
        ys.append(math.log(count_words(space, length)))
    return _fit_slope(xs, ys, _ladder_key(ladder), saturated=False)


def pointwise_dimension(
    mu: Measure, x: Point, params: MetricParams, ladder: RadiusLadder
) -> SlopeEstimate:
    """Pointwise dimension at x: slope of ln mu(B(x, r)) against ln r.

    Radii whose windows exceed the point's horizon are dropped and the
    estimate is marked saturated; if fewer than two radii fit, the call
    refuses with ``HorizonExceeded``.  The estimator reports what it sees:
    typicality of x is the caller's burden.
    """
    xs, ys = [], []
    saturated = False
    for r in ladder:
        try:
            cyl = ball_to_cylinder(x, r, params)
        except HorizonExceeded:
            saturated = True
            continue
        lm = log_word_mass(mu, x.window(cyl.lo, cyl.hi))
        if lm == -math.inf:
            raise BadMeasure("the point leaves the support of the measure")
        xs.append(math.log(r))
        ys.append(lm)
    return _fit_slope(xs, ys, _ladder_key(ladder), saturated)


def topological_entropy_spanning(
    space: ShiftSpace, params: MetricParams, r1: float, nm_range: Iterable[int]
) -> SlopeEstimate:
    """Topological entropy from minimal spanning cardinalities.

    The minimal number of radius-r1 Bowen balls spanning window depth
    n + m = t equals the exact count of admissible words on the associated
    cylinder window, so the slope of ln(count) against t is exact up to
    regression; the reference radius r1 only moves the intercept.
    """
    base = _cover_length_at_radius(params, r1)
    depths = _depth_values(nm_range)
    xs, ys = [], []
    for t in depths:
        xs.append(float(t))
        ys.append(math.log(count_words(space, base + t)))
    return _fit_slope(xs, ys, depths, saturated=False)


def neutralized_topological(
    space: ShiftSpace,
    params: MetricParams,
    r: float,
    nm_range: Iterable[int],
    r1: float = DEFAULT_R1,
) -> SlopeEstimate:
    """Entropy with Bowen balls of shrinking radius e^{-(n+m) r}.

    The radius decay enlarges the window once per unit of r per ln-base, so
    the slope approaches (1 + r k) times the classical entropy.  Requires
    0 <= r < 3/k; r = 0 degenerates to the classical fixed-radius estimator.
    """
    bound = 3.0 / params.k()
    if r < 0 or r >= bound:
        raise ConstraintViolated(
            f"shrinking rate r must satisfy 0 <= r < 3/k = {bound:.6g}, got {r}"
        )
    if r == 0.0:
        return topological_entropy_spanning(space, params, r1, nm_range)
    depths = _depth_values(nm_range)
    xs, ys = [], []
    for t in depths:
        length = _cover_length_at_log_radius(params, -t * r) + t
        xs.append(float(t))
        ys.append(math.log(count_words(space, length)))
    return _fit_slope(xs, ys, depths, saturated=False)


def katok_entropy(
    mu: Measure,
    params: MetricParams,
    delta: float,
    r1: float,
    nm_range: Iterable[int],
    r: float = 0.0,
    node_budget: int = ENUMERATION_LIMIT,
) -> SlopeEstimate:
    """Katok entropy: growth of the minimal (1 - delta)-mass cylinder cover.

    Cylinders over a fixed window partition the space, so the minimal cover
    is the greedy descending-mass count, computed exactly by the covering
    backend.  ``r > 0`` switches to the shrinking-radius variant (radius
    e^{-(n+m) r} instead of the fixed r1); the slope is then expected to be
    delta-independent as well.
    """
    if not 0.0 < delta < 1.0:
        raise HypothesisViolated(f"delta must lie in (0, 1), got {delta}")
    bound = 3.0 / params.k()
    if r < 0 or r >= bound:
        raise ConstraintViolated(
            f"shrinking rate r must satisfy 0 <= r < 3/k = {bound:.6g}, got {r}"
        )
    base = _cover_length_at_radius(params, r1) if r == 0.0 else None
    depths = _depth_values(nm_range)
    xs, ys = [], []
    for t in depths:
        if base is not None:
            length = base + t
        else:
            length = _cover_length_at_log_radius(params, -t * r) + t
        xs.append(float(t))
        ys.append(minimal_cover_log_count(mu, length, delta, node_budget))
    return _fit_slope(xs, ys, depths, saturated=False)


def _local_mass_slope(
    mu: Measure,
    x: Point,
    window_of_depth: Callable[[int, int], object],
    depths: tuple[int, ...],
    params: MetricParams,
) -> SlopeEstimate:
    xs, ys = [], []
    saturated = False
    for t in depths:
        n, m = _split_depth(params, t)
        window = window_of_depth(n, m)
        try:
            block = x.window(window.lo, window.hi)
        except HorizonExceeded:
            saturated = True
            continue
        lm = log_word_mass(mu, block)
        if lm == -math.inf:
            raise BadMeasure("the point leaves the support of the measure")
        xs.append(float(t))
        ys.append(-lm)
    return _fit_slope(xs, ys, depths, saturated)


def brin_katok_local(
    mu: Measure,
    x: Point,
    params: MetricParams,
    r1: float,
    nm_range: Iterable[int],
) -> SlopeEstimate:
    """Local entropy at x: slope of -ln mu(Bowen ball) against n + m.

    Window depths that do not fit the horizon are dropped (saturated flag);
    fewer than two usable depths raise ``HorizonExceeded``.
    """
    depths = _depth_values(nm_range)
    return _local_mass_slope(
        mu, x, lambda n, m: bowen_window(n, m, r1, params), depths, params
    )


def neutralized_brin_katok(
    mu: Measure,
    x: Point,
    params: MetricParams,
    r: float,
    nm_range: Iterable[int],
) -> SlopeEstimate:
    """Local entropy with shrinking radius e^{-(n+m) r}; needs 0 < r < 3/k."""
    bound = 3.0 / params.k()
    if not 0.0 < r < bound:
        raise ConstraintViolated(
            f"shrinking rate r must satisfy 0 < r < 3/k = {bound:.6g}, got {r}"
        )
    depths = _depth_values(nm_range)
    return _local_mass_slope(
        mu, x, lambda n, m: neutralized_window(n, m, r, params), depths, params
    )


def alpha_estimation_entropy(
    target: ShiftSpace | Measure,
    params: MetricParams,
    alpha: float,
    nm_range: Iterable[int],
    r3: float = DEFAULT_R1,
    x: Point | None = None,
) -> SlopeEstimate:
    """Entropy under per-iterate radius discounting e^{-|i| alpha}.

    Topological variant (``target`` is a space): slope of the ln word count
    over the discounted windows.  Measure variant (``target`` is a measure):
    slope of -ln mass of the discounted cylinder at the point ``x`` (which
    must carry a large enough horizon).  Requires
    0 <= alpha < min(ln a, ln b); alpha = 0 reduces both variants exactly
    to their classical fixed-radius counterparts.
    """
    require_alpha_regime(alpha, params)
    depths = _depth_values(nm_range)
    if isinstance(target, ShiftSpace):
        xs, ys = [], []
        for t in depths:
            n, m = _split_depth(params, t)
            window = alpha_window(n, m, alpha, r3, params)
            xs.append(float(t))
            ys.append(math.log(count_words(target, window.length)))
        return _fit_slope(xs, ys, depths, saturated=False)
    if x is None:
        raise HypothesisViolated("the measure variant needs a sampled point x")
    return _local_mass_slope(
        target, x, lambda n, m: alpha_window(n, m, alpha, r3, params), depths, params
    )


def _thread_count() -> int:
    raw = os.environ.get("EXP_METRICS_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def average_over_typical(
    estimator: Callable[[Point], SlopeEstimate],
    mu: Measure,
    horizon: int,
    n_points: int = 100,
    seed: int = 0,
    space: ShiftSpace | None = None,
) -> SlopeEstimate:
    """Average a per-point estimate over seeded typical points.

    Points are sampled with seeds ``seed + index``; per-point estimates are
    computed independently (parallel when EXP_METRICS_THREADS > 1) and
    reduced in index order, so the result is deterministic.  The reported
    spread is the max-minus-min of the per-point slopes; the flag fires when
    that spread exceeds the usual tolerance relative to the mean.
    """
    if n_points < 1:
        raise HypothesisViolated(f"n_points must be >= 1, got {n_points}")
    points = [sample_typical(mu, horizon, seed + i, space) for i in range(n_points)]
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            estimates = list(pool.map(estimator, points))
    else:
        estimates = [estimator(p) for p in points]
    slopes = np.array([e.slope for e in estimates])
    spread = float(slopes.max() - slopes.min()) if n_points > 1 else 0.0
    mean_slope = float(slopes.mean())
    return SlopeEstimate(
        slope=mean_slope,
        intercept=float(np.mean([e.intercept for e in estimates])),
        residual_rms=float(np.sqrt(np.mean([e.residual_rms**2 for e in estimates]))),
        ladder=estimates[0].ladder,
        saturated=any(e.saturated for e in estimates),
        spread=spread,
        flagged=spread > SPREAD_TOL * max(abs(mean_slope), 1e-12),
    )


def one_sided_suite(
    target: ShiftSpace | Measure,
    params: MetricParams,
    n_range: Iterable[int],
    ladder: RadiusLadder | None = None,
    alpha: float = 0.0,
    seed: int = 0,
    n_points: int = 100,
) -> dict[str, SlopeEstimate]:
    """Forward-window analogs of the dimension and entropy estimators.

    Requires one-sided parameters.  For a space target returns
    ``box_dimension``, ``entropy`` (fixed-radius spanning), and
    ``alpha_entropy``; for a measure target the pointwise dimension, local
    entropy, and discounted local entropy, each averaged over typical
    points.
    """
    if params.mode != ONE_SIDED:
        raise HypothesisViolated("one_sided_suite needs one-sided metric parameters")
    require_alpha_regime(alpha, params)
    depths = _depth_values(n_range)
    if ladder is None:
        ladder = RadiusLadder.geometric(8, 40)
    if isinstance(target, ShiftSpace):
        return {
            "box_dimension": box_dimension(target, params, ladder),
            "entropy": topological_entropy_spanning(target, params, DEFAULT_R1, depths),
            "alpha_entropy": alpha_estimation_entropy(
                target, params, alpha, depths, r3=DEFAULT_R1
            ),
        }
    horizon = max(depths) + _cover_length_at_radius(params, min(ladder.r_values)) + 8
    return {
        "pointwise_dimension": average_over_typical(
            lambda p: pointwise_dimension(target, p, params, ladder),
            target,
            horizon,
            n_points,
            seed,
        ),
        "entropy": average_over_typical(
            lambda p: brin_katok_local(target, p, params, DEFAULT_R1, depths),
            target,
            horizon,
            n_points,
            seed,
        ),
        "alpha_entropy": average_over_typical(
            lambda p: alpha_estimation_entropy(
                target, params, alpha, depths, r3=DEFAULT_R1, x=p
            ),
            target,
            horizon,
            n_points,
            seed,
        ),
    }


def solve_relation_5_23(a: float, b: float, given: dict) -> RelationReport:
    """Solve the radius/rate exchange relation r + 1/k = 1/k_alpha.

    With ``given={"r": ...}`` the discount rate alpha is returned via the
    closed form (valid only while it stays below min(ln a, ln b), otherwise
    ``NoSolution``); with ``given={"alpha": ...}`` the unique shrinking rate
    r is returned.  The report's lhs/rhs are the two sides of the relation
    evaluated at the solved pair, so rel_error certifies the round trip.
    """
    if not (a > 1.0 and b > 1.0):
        raise HypothesisViolated(f"bases must satisfy a, b > 1, got a={a}, b={b}")
    if not isinstance(given, dict) or len(given) != 1 or not {"r", "alpha"} >= set(given):
        raise HypothesisViolated("given must be exactly one of {'r': ...} or {'alpha': ...}")
    la, lb = math.log(a), math.log(b)
    k = 1.0 / la + 1.0 / lb
    alpha_max = min(la, lb)

    def k_alpha(alpha: float) -> float:
        return 1.0 / (la + alpha) + 1.0 / (lb + alpha)

    if "r" in given:
        r = float(given["r"])
        if not 0.0 < r < 3.0 / k:
            raise HypothesisViolated(
                f"shrinking rate must satisfy 0 < r < 3/k = {3.0 / k:.6g}, got {r}"
            )
        t = 1.0 / (r + 1.0 / k)
        alpha = (-t * (la + lb) + 2.0 + math.sqrt(t**2 * (la - lb) ** 2 + 4.0)) / (2.0 * t)
        if not alpha < alpha_max:
            raise NoSolution(
                f"solved rate alpha = {alpha:.6g} leaves the admissible range "
                f"[0, {alpha_max:.6g}) for a={a}, b={b}, r={r}"
            )
        solved = alpha
    else:
        alpha = float(given["alpha"])
        if not 0.0 < alpha < alpha_max:
            raise HypothesisViolated(
                f"discount rate must satisfy 0 < alpha < {alpha_max:.6g}, got {alpha}"
            )
        r = 1.0 / k_alpha(alpha) - 1.0 / k
        if not 0.0 < r < 3.0 / k:
            raise NoSolution(
                f"solved shrinking rate r = {r:.6g} leaves (0, 3/k = {3.0 / k:.6g})"
            )
        solved = r
    return relation_report(
        "radius-rate-exchange", r + 1.0 / k, 1.0 / k_alpha(alpha), EXACT_TOL, value=solved
    )


@dataclass(frozen=True)
class BundleEntry:
    """One estimate plus the provenance needed for identity checks."""

    kind: str
    estimate: SlopeEstimate
    params: MetricParams
    space_label: str
    rate: float = 0.0


def _space_label(space: ShiftSpace) -> str:
    if space.is_full:
        return f"full:{space.alphabet_size}"
    bits = "".join(str(int(v)) for row in space.transition for v in row)
    return f"sft:{space.alphabet_size}:{bits}"


DEFAULT_TOLERANCES = {
    "box-dimension = k * entropy": COUNT_TOL,
    "spanning-entropy = oracle entropy": COUNT_TOL,
    "pointwise-dimension = k * measure-entropy": MEASURE_TOL,
    "brin-katok = measure-entropy": MEASURE_TOL,
    "katok = measure-entropy": COUNT_TOL,
    "neutralized-topological = (1 + r k) * entropy": COUNT_TOL,
    "neutralized-brin-katok = (1 + r k) * measure-entropy": MEASURE_TOL,
    "alpha-entropy * k_alpha = k * entropy": COUNT_TOL,
    "alpha-brin-katok * k_alpha = k * measure-entropy": MEASURE_TOL,
    "pointwise-dimension <= box-dimension": COUNT_TOL,
    "chain: katok <= topological": COUNT_TOL,
    "chain: brin-katok <= katok": COUNT_TOL,
    "chain: neutralized katok <= neutralized topological": COUNT_TOL,
    "chain: neutralized brin-katok <= neutralized katok": COUNT_TOL,
}


def verify_identities(
    bundle: Sequence[BundleEntry],
    h_top: float,
    h_mu: float | None = None,
    tolerances: dict[str, float] | None = None,
) -> list[RelationReport]:
    """Check every identity the bundled estimates allow.

    All entries must share parameters and space; mixed bundles refuse with
    ``IncompatibleInputs``.  Each report compares a measured slope (or a
    product with the scale constants k, k_alpha) against the closed-form
    side built from the supplied entropy oracles.
    """
    if not bundle:
        raise IncompatibleInputs("empty bundle")
    params = bundle[0].params
    label = bundle[0].space_label
    for entry in bundle:
        if entry.params != params or entry.space_label != label:
            raise IncompatibleInputs(
                f"bundle mixes runs: {entry.kind} used params={entry.params}, "
                f"space={entry.space_label!r}; expected params={params}, space={label!r}"
            )
    by_kind: dict[str, BundleEntry] = {}
    for entry in bundle:
        if entry.kind in by_kind:
            raise IncompatibleInputs(f"duplicate bundle entry of kind {entry.kind!r}")
        by_kind[entry.kind] = entry
    measure_kinds = {
        "pointwise_dimension",
        "brin_katok",
        "katok",
        "neutralized_brin_katok",
        "neutralized_katok",
        "alpha_brin_katok",
    }
    if h_mu is None and measure_kinds & set(by_kind):
        raise IncompatibleInputs("measure estimates present but no measure entropy oracle")
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    k = params.k()
    reports: list[RelationReport] = []

    def slope(kind: str) -> float:
        return by_kind[kind].estimate.slope

    def add(name: str, lhs: float, rhs: float, ordered: bool = False) -> None:
        reports.append(relation_report(name, lhs, rhs, tol[name], ordered=ordered))

    if "box_dimension" in by_kind:
        add("box-dimension = k * entropy", slope("box_dimension"), k * h_top)
    if "entropy" in by_kind:
        add("spanning-entropy = oracle entropy", slope("entropy"), h_top)
    if "pointwise_dimension" in by_kind:
        add(
            "pointwise-dimension = k * measure-entropy",
            slope("pointwise_dimension"),
            k * h_mu,
        )
    if "brin_katok" in by_kind:
        add("brin-katok = measure-entropy", slope("brin_katok"), h_mu)
    if "katok" in by_kind:
        add("katok = measure-entropy", slope("katok"), h_mu)
    if "neutralized_topological" in by_kind:
        entry = by_kind["neutralized_topological"]
        add(
            "neutralized-topological = (1 + r k) * entropy",
            entry.estimate.slope,
            (1.0 + entry.rate * k) * h_top,
        )
    if "neutralized_brin_katok" in by_kind:
        entry = by_kind["neutralized_brin_katok"]
        add(
            "neutralized-brin-katok = (1 + r k) * measure-entropy",
            entry.estimate.slope,
            (1.0 + entry.rate * k) * h_mu,
        )
    if "alpha_topological" in by_kind:
        entry = by_kind["alpha_topological"]
        add(
            "alpha-entropy * k_alpha = k * entropy",
            entry.estimate.slope * params.k_alpha(entry.rate),
            k * h_top,
        )
    if "alpha_brin_katok" in by_kind:
        entry = by_kind["alpha_brin_katok"]
        add(
            "alpha-brin-katok * k_alpha = k * measure-entropy",
            entry.estimate.slope * params.k_alpha(entry.rate),
            k * h_mu,
        )
    if {"pointwise_dimension", "box_dimension"} <= set(by_kind):
        add(
            "pointwise-dimension <= box-dimension",
            slope("pointwise_dimension"),
            slope("box_dimension"),
            ordered=True,
        )
    if {"katok", "entropy"} <= set(by_kind):
        add("chain: katok <= topological", slope("katok"), slope("entropy"), ordered=True)
    if {"brin_katok", "katok"} <= set(by_kind):
        add("chain: brin-katok <= katok", slope("brin_katok"), slope("katok"), ordered=True)
    if {"neutralized_katok", "neutralized_topological"} <= set(by_kind):
        add(
            "chain: neutralized katok <= neutralized topological",
            slope("neutralized_katok"),
            slope("neutralized_topological"),
            ordered=True,
        )
    if {"neutralized_brin_katok", "neutralized_katok"} <= set(by_kind):
        add(
            "chain: neutralized brin-katok <= neutralized katok",
            slope("neutralized_brin_katok"),
            slope("neutralized_katok"),
            ordered=True,
        )
    return reports


def standard_bundle(
    space: ShiftSpace,
    params: MetricParams,
    mu: Measure | None = None,
    r: float = 0.05,
    alpha: float = 0.1,
    delta: float = 0.25,
    seed: int = 0,
    n_points: int = 100,
) -> list[BundleEntry]:
    """Run the default estimator suite and label every estimate.

    The ranges are calibrated so each identity meets its default tolerance:
    radii 2^-8..2^-40 for dimensions, depths up to 60 for exact counts, up
    to 200 for local masses, and 300..900 for covering counts (where the
    slow sqrt-scale correction to the cover growth needs long windows).
    """
    label = _space_label(space)
    if mu is not None and not supported_on(mu, space):
        raise IncompatibleInputs("measure support is not admissible in the space")
    ladder = RadiusLadder.geometric(8, 40)
    entries = [
        BundleEntry("box_dimension", box_dimension(space, params, ladder), params, label),
        BundleEntry(
            "entropy",
            topological_entropy_spanning(space, params, DEFAULT_R1, range(10, 61, 5)),
            params,
            label,
        ),
        BundleEntry(
            "neutralized_topological",
            neutralized_topological(space, params, r, range(20, 121, 10)),
            params,
            label,
            rate=r,
        ),
        BundleEntry(
            "alpha_topological",
            alpha_estimation_entropy(space, params, alpha, range(20, 121, 10)),
            params,
            label,
            rate=alpha,
        ),
    ]
    if mu is None:
        return entries
    horizon = 160
    entries += [
        BundleEntry(
            "pointwise_dimension",
            average_over_typical(
                lambda p: pointwise_dimension(mu, p, params, ladder),
                mu,
                horizon,
                n_points,
                seed,
                space,
            ),
            params,
            label,
        ),
        BundleEntry(
            "brin_katok",
            average_over_typical(
                lambda p: brin_katok_local(mu, p, params, DEFAULT_R1, range(20, 201, 12)),
                mu,
                horizon,
                n_points,
                seed,
                space,
            ),
            params,
            label,
        ),
        BundleEntry(
            "katok",
            katok_entropy(mu, params, delta, DEFAULT_R1, range(300, 901, 60)),
            params,
            label,
        ),
        BundleEntry(
            "neutralized_brin_katok",
            average_over_typical(
                lambda p: neutralized_brin_katok(mu, p, params, r, range(20, 201, 12)),
                mu,
                horizon,
                n_points,
                seed,
                space,
            ),
            params,
            label,
            rate=r,
        ),
        BundleEntry(
            "neutralized_katok",
            katok_entropy(mu, params, delta, DEFAULT_R1, range(300, 901, 60), r=r),
            params,
            label,
            rate=r,
        ),
        BundleEntry(
            "alpha_brin_katok",
            average_over_typical(
                lambda p: alpha_estimation_entropy(
                    mu, params, alpha, range(20, 121, 10), x=p
                ),
                mu,
                horizon,
                n_points,
                seed,
                space,
            ),
            params,
            label,
            rate=alpha,
        ),
    ]
    return entries
