"""Batch front end: parse space/measure/parameter specs, run estimator
suites, and emit machine-readable reports and plot-ready tables.

Exit codes: 0 when every requested relation passes, 1 when a relation fails
(including an unsolvable rate-exchange equation), 2 on configuration or
hypothesis violations (the offending bound is named in the message).

Report formats: ``json`` is the full report (schema_version "1") with the
resolved configuration embedded; ``csv`` is the plot-ready table with the
columns ``quantity,n_or_r,raw_count_or_mass(log),fitted,residual`` plus a
``# config=...`` reproducibility header.  Identical (config, seed) runs
produce byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .cylinders import (
    RadiusLadder,
    alpha_window,
    ball_window,
    bowen_window,
    neutralized_window,
)
from .errors import HypothesisViolated, NoSolution, ShiftMetricsError
from .estimators import (
    COUNT_TOL,
    DEFAULT_R1,
    MEASURE_TOL,
    RelationReport,
    SlopeEstimate,
    _cover_length_at_log_radius,
    _cover_length_at_radius,
    _space_label,
    _split_depth,
    alpha_estimation_entropy,
    average_over_typical,
    box_dimension,
    brin_katok_local,
    katok_entropy,
    neutralized_brin_katok,
    neutralized_topological,
    pointwise_dimension,
    relation_report,
    solve_relation_5_23,
    standard_bundle,
    topological_entropy_spanning,
    verify_identities,
)
from .measures import (
    Measure,
    entropy_oracle,
    measure_from_json,
    measure_to_json,
    minimal_cover_log_count,
    sample_typical,
)
from .metrics import (
    ONE_SIDED,
    TWO_SIDED,
    FiniteSample,
    MetricParams,
    check_quasi_metric,
    frink_metrize,
    mather_n0,
    verify_hyperbolicity,
)
from .shiftspace import (
    ShiftSpace,
    count_words,
    make_space,
    sample_point,
    top_entropy_oracle,
)

SCHEMA_VERSION = "1"
CSV_COLUMNS = ("quantity", "n_or_r", "raw_count_or_mass(log)", "fitted", "residual")

QUANTITIES = (
    "dim",
    "entropy",
    "katok",
    "brin-katok",
    "neutralized",
    "estimation",
    "metric-verify",
    "frink",
    "relations",
    "solve-5-23",
)

#: default (t_min, t_max, t_step) per depth-regression quantity,
#: (space variant, measure variant)
_DEPTHS = {
    "entropy": ((10, 60, 5), (20, 200, 12)),
    "katok": ((300, 900, 60), (300, 900, 60)),
    "brin-katok": ((20, 200, 12), (20, 200, 12)),
    "neutralized": ((20, 120, 10), (20, 200, 12)),
    "estimation": ((20, 120, 10), (20, 120, 10)),
}


@dataclass
class RunConfig:
    """Fully resolved description of one batch run."""

    quantity: str
    space: str = "full:2"
    a: float = 1.3
    b: float = 1.3
    mode: str = TWO_SIDED
    gamma: float = 0.05
    measure: str | None = None
    r: float | None = None
    alpha: float | None = None
    delta: float = 0.25
    r1: float = DEFAULT_R1
    j_min: int = 8
    j_max: int = 40
    t_min: int | None = None
    t_max: int | None = None
    t_step: int | None = None
    horizon: int | None = None
    seed: int = 0
    n_points: int = 100
    n_samples: int = 50
    sample_size: int = 200
    format: str = "json"
    out: str | None = None
    tol: float | None = None
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise HypothesisViolated(
                f"quantity must be one of {', '.join(QUANTITIES)}; got {self.quantity!r}"
            )
        if self.format not in ("json", "csv"):
            raise HypothesisViolated(f"format must be json or csv, got {self.format!r}")


def parse_space(spec: str) -> ShiftSpace:
    """Parse ``full:M`` or ``sft:PATH`` (line 1 = M; then M rows of 0/1)."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise HypothesisViolated(f"space spec must be full:M or sft:PATH, got {spec!r}")
    if kind == "full":
        try:
            m = int(rest)
        except ValueError:
            raise HypothesisViolated(f"full:M needs an integer alphabet size, got {rest!r}")
        return make_space(m)
    if kind == "sft":
        with open(rest, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if not lines:
            raise HypothesisViolated(f"SFT file {rest!r} is empty")
        try:
            m = int(lines[0])
            rows = [[int(v) for v in ln.split()] for ln in lines[1 : m + 1]]
        except ValueError:
            raise HypothesisViolated(f"SFT file {rest!r}: line 1 = M, then M rows of 0/1")
        if len(rows) != m:
            raise HypothesisViolated(
                f"SFT file {rest!r} declares M={m} but has {len(rows)} matrix rows"
            )
        return make_space(m, rows)
    raise HypothesisViolated(f"space spec must be full:M or sft:PATH, got {spec!r}")


def load_measure(path: str) -> Measure:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_json(fh.read())


def _row(quantity: str, key, raw: float, fitted: float) -> dict:
    return {
        "quantity": quantity,
        "n_or_r": key,
        "raw_count_or_mass(log)": raw,
        "fitted": fitted,
        "residual": raw - fitted,
    }


def _relation_row(rep: RelationReport) -> dict:
    return {
        "quantity": rep.name,
        "n_or_r": "pass" if rep.passed else "fail",
        "raw_count_or_mass(log)": rep.lhs,
        "fitted": rep.rhs,
        "residual": rep.rel_error,
    }


def _count_relation(name: str, violations: int) -> RelationReport:
    v = float(violations)
    return RelationReport(name, v, 0.0, v, violations == 0, 0.0)


def _estimate_dict(est: SlopeEstimate) -> dict:
    d = dataclasses.asdict(est)
    d["ladder"] = list(d["ladder"])
    return d


def _depth_range(config: RunConfig, with_measure: bool) -> range:
    lo, hi, step = _DEPTHS[config.quantity][1 if with_measure else 0]
    lo = config.t_min if config.t_min is not None else lo
    hi = config.t_max if config.t_max is not None else hi
    step = config.t_step if config.t_step is not None else step
    if step < 1:
        raise HypothesisViolated(f"t-step must be >= 1, got {step}")
    return range(lo, hi + 1, step)


def _auto_horizon(windows) -> int:
    windows = list(windows)
    lo = min(w.lo for w in windows)
    hi = max(w.hi for w in windows)
    return max(-lo, hi) + 8


def _headline_tol(config: RunConfig, default: float) -> float:
    return config.tol if config.tol is not None else default


def _measure_rows(
    quantity: str,
    estimator,
    mu: Measure,
    space: ShiftSpace,
    horizon: int,
    config: RunConfig,
    mean_slope: float,
) -> list[dict]:
    rows = []
    for i in range(config.n_points):
        p = sample_typical(mu, horizon, config.seed + i, space)
        rows.append(_row(quantity, i, estimator(p).slope, mean_slope))
    return rows


def _k_formula(params: MetricParams) -> str:
    return "1/ln b" if params.mode == ONE_SIDED else "1/ln a + 1/ln b"


# ---------------------------------------------------------------------------
# per-quantity runners: each returns (estimate, target, relations, rows)
# ---------------------------------------------------------------------------


def _run_dim(config, space, params, mu):
    ladder = RadiusLadder.geometric(config.j_min, config.j_max)
    k = params.k()
    if mu is None:
        est = box_dimension(space, params, ladder)
        h = top_entropy_oracle(space)
        name = "box-dimension = k * entropy"
        target = {"name": name, "value": k * h, "formula": f"({_k_formula(params)}) * h_top"}
        rows = []
        for r in ladder:
            x = math.log(1.0 / r)
            y = math.log(count_words(space, _cover_length_at_radius(params, r)))
            rows.append(_row("dim", r, y, est.slope * x + est.intercept))
        rel = relation_report(name, est.slope, k * h, _headline_tol(config, COUNT_TOL))
        return est, target, [rel], rows
    h = entropy_oracle(mu).entropy
    horizon = config.horizon or _auto_horizon(ball_window(r, params) for r in ladder)
    estimator = lambda p: pointwise_dimension(mu, p, params, ladder)
    est = average_over_typical(estimator, mu, horizon, config.n_points, config.seed, space)
    name = "pointwise-dimension = k * measure-entropy"
    target = {"name": name, "value": k * h, "formula": f"({_k_formula(params)}) * h_mu"}
    rows = _measure_rows("dim", estimator, mu, space, horizon, config, est.slope)
    rel = relation_report(name, est.slope, k * h, _headline_tol(config, MEASURE_TOL))
    return est, target, [rel], rows


def _run_entropy(config, space, params, mu):
    if mu is not None:
        return _run_brin_katok(config, space, params, mu)
    depths = _depth_range(config, with_measure=False)
    est = topological_entropy_spanning(space, params, config.r1, depths)
    h = top_entropy_oracle(space)
    name = "spanning-entropy = oracle entropy"
    target = {"name": name, "value": h, "formula": "ln(spectral radius)"}
    base = _cover_length_at_radius(params, config.r1)
    rows = [
        _row("entropy", t, math.log(count_words(space, base + t)), est.slope * t + est.intercept)
        for t in depths
    ]
    rel = relation_report(name, est.slope, h, _headline_tol(config, COUNT_TOL))
    return est, target, [rel], rows


def _run_brin_katok(config, space, params, mu):
    if mu is None:
        raise HypothesisViolated("brin-katok is a measure quantity: pass --measure PATH")
    depths = _depth_range(config, with_measure=True)
    windows = [bowen_window(*_split_depth(params, t), config.r1, params) for t in depths]
    horizon = config.horizon or _auto_horizon(windows)
    estimator = lambda p: brin_katok_local(mu, p, params, config.r1, depths)
    est = average_over_typical(estimator, mu, horizon, config.n_points, config.seed, space)
    h = entropy_oracle(mu).entropy
    name = "brin-katok = measure-entropy"
    target = {"name": name, "value": h, "formula": "entropy rate of the measure"}
    rows = _measure_rows("brin-katok", estimator, mu, space, horizon, config, est.slope)
    rel = relation_report(name, est.slope, h, _headline_tol(config, MEASURE_TOL))
    return est, target, [rel], rows


def _run_katok(config, space, params, mu):
    if mu is None:
        raise HypothesisViolated("katok is a measure quantity: pass --measure PATH")
    r = config.r if config.r is not None else 0.0
    depths = _depth_range(config, with_measure=True)
    est = katok_entropy(mu, params, config.delta, config.r1, depths, r=r)
    h = entropy_oracle(mu).entropy
    k = params.k()
    name = "katok = (1 + r k) * measure-entropy" if r else "katok = measure-entropy"
    target = {
        "name": name,
        "value": (1.0 + r * k) * h,
        "formula": "(1 + r k) * h_mu" if r else "h_mu",
    }
    base = _cover_length_at_radius(params, config.r1)
    rows = []
    for t in depths:
        length = base + t if r == 0.0 else _cover_length_at_log_radius(params, -t * r) + t
        raw = minimal_cover_log_count(mu, length, config.delta)
        rows.append(_row("katok", t, raw, est.slope * t + est.intercept))
    rel = relation_report(name, est.slope, (1.0 + r * k) * h, _headline_tol(config, COUNT_TOL))
    return est, target, [rel], rows


def _run_neutralized(config, space, params, mu):
    r = config.r if config.r is not None else 0.05
    k = params.k()
    if mu is None:
        depths = _depth_range(config, with_measure=False)
        est = neutralized_topological(space, params, r, depths, r1=config.r1)
        h = top_entropy_oracle(space)
        name = "neutralized-topological = (1 + r k) * entropy"
        target = {"name": name, "value": (1.0 + r * k) * h, "formula": "(1 + r k) * h_top"}
        rows = []
        for t in depths:
            length = _cover_length_at_log_radius(params, -t * r) + t
            y = math.log(count_words(space, length))
            rows.append(_row("neutralized", t, y, est.slope * t + est.intercept))
        rel = relation_report(
            name, est.slope, (1.0 + r * k) * h, _headline_tol(config, COUNT_TOL)
        )
        return est, target, [rel], rows
    depths = _depth_range(config, with_measure=True)
    windows = [neutralized_window(*_split_depth(params, t), r, params) for t in depths]
    horizon = config.horizon or _auto_horizon(windows)
    estimator = lambda p: neutralized_brin_katok(mu, p, params, r, depths)
    est = average_over_typical(estimator, mu, horizon, config.n_points, config.seed, space)
    h = entropy_oracle(mu).entropy
    name = "neutralized-brin-katok = (1 + r k) * measure-entropy"
    target = {"name": name, "value": (1.0 + r * k) * h, "formula": "(1 + r k) * h_mu"}
    rows = _measure_rows("neutralized", estimator, mu, space, horizon, config, est.slope)
    rel = relation_report(name, est.slope, (1.0 + r * k) * h, _headline_tol(config, MEASURE_TOL))
    return est, target, [rel], rows


def _run_estimation(config, space, params, mu):
    alpha = config.alpha if config.alpha is not None else 0.1
    k = params.k()
    k_alpha = params.k_alpha(alpha)
    if mu is None:
        depths = _depth_range(config, with_measure=False)
        est = alpha_estimation_entropy(space, params, alpha, depths, r3=config.r1)
        h = top_entropy_oracle(space)
        name = "alpha-entropy * k_alpha = k * entropy"
        target = {"name": name, "value": k * h / k_alpha, "formula": "k * h_top / k_alpha"}
        rows = []
        for t in depths:
            n, m = _split_depth(params, t)
            window = alpha_window(n, m, alpha, config.r1, params)
            y = math.log(count_words(space, window.length))
            rows.append(_row("estimation", t, y, est.slope * t + est.intercept))
        rel = relation_report(
            name, est.slope * k_alpha, k * h, _headline_tol(config, COUNT_TOL)
        )
        return est, target, [rel], rows
    depths = _depth_range(config, with_measure=True)
    windows = [alpha_window(*_split_depth(params, t), alpha, config.r1, params) for t in depths]
    horizon = config.horizon or _auto_horizon(windows)
    estimator = lambda p: alpha_estimation_entropy(mu, params, alpha, depths, r3=config.r1, x=p)
    est = average_over_typical(estimator, mu, horizon, config.n_points, config.seed, space)
    h = entropy_oracle(mu).entropy
    name = "alpha-brin-katok * k_alpha = k * measure-entropy"
    target = {"name": name, "value": k * h / k_alpha, "formula": "k * h_mu / k_alpha"}
    rows = _measure_rows("estimation", estimator, mu, space, horizon, config, est.slope)
    rel = relation_report(name, est.slope * k_alpha, k * h, _headline_tol(config, MEASURE_TOL))
    return est, target, [rel], rows


def _run_relations(config, space, params, mu):
    r = config.r if config.r is not None else 0.05
    alpha = config.alpha if config.alpha is not None else 0.1
    bundle = standard_bundle(
        space,
        params,
        mu,
        r=r,
        alpha=alpha,
        delta=config.delta,
        seed=config.seed,
        n_points=config.n_points,
    )
    h_top = top_entropy_oracle(space)
    h_mu = entropy_oracle(mu).entropy if mu is not None else None
    reports = verify_identities(bundle, h_top, h_mu, tolerances=config.tolerances or None)
    estimate = {
        entry.kind: {"slope": entry.estimate.slope, "rate": entry.rate} for entry in bundle
    }
    target = {
        "name": "identity suite",
        "value": h_top,
        "formula": "h_top (spectral radius); h_mu = "
        + (repr(h_mu) if h_mu is not None else "n/a"),
    }
    rows = [_relation_row(rep) for rep in reports]
    return estimate, target, reports, rows


def _run_solve(config, space, params, mu):
    if (config.r is None) == (config.alpha is None):
        raise HypothesisViolated("solve-5-23 needs exactly one of --r or --alpha")
    given = {"r": config.r} if config.r is not None else {"alpha": config.alpha}
    rep = solve_relation_5_23(config.a, config.b, given)
    solved_name = "alpha" if "r" in given else "r"
    estimate = {"given": given, "solved": {solved_name: rep.value}}
    target = {
        "name": rep.name,
        "value": rep.value,
        "formula": f"{solved_name} solving r + 1/k = 1/k_alpha",
    }
    key = next(iter(given.values()))
    rows = [_row("solve-5-23", key, rep.lhs, rep.rhs)]
    return estimate, target, [rep], rows


def _run_metric_verify(config, space, params, mu):
    mp = mather_n0(params, config.gamma)
    horizon = config.horizon or 4 * mp.n0 + 48
    pairs = [
        (
            sample_point(space, horizon, config.seed + 2 * i),
            sample_point(space, horizon, config.seed + 2 * i + 1),
        )
        for i in range(config.n_points)
    ]
    report = verify_hyperbolicity(pairs, mp, params)
    n_tri = min(40, max(4, config.n_points))
    tri_points = [
        sample_point(space, 60, config.seed + 1_000_000 + i) for i in range(n_tri)
    ]
    triples = check_quasi_metric(FiniteSample.from_points(tri_points, params), 1.0)
    relations = [
        _count_relation("ultrametric: rho(x,y) <= max(rho(x,z), rho(z,y))", len(triples)),
        _count_relation("lipschitz forward: d~(shift) <= 16 b d~", report.lipschitz_forward_violations),
        _count_relation("lipschitz backward: d~(shift^-1) <= 16 a d~", report.lipschitz_backward_violations),
        _count_relation("sandwich: d~/4 <= rho <= 4 d~", report.sandwich_violations),
        _count_relation("expansion: shifted margin >= min(d~, eps')", report.expansion_failures),
        RelationReport(
            "eps' > 0",
            report.eps_prime,
            0.0,
            0.0 if report.eps_prime > 0 else 1.0,
            report.eps_prime > 0,
            0.0,
        ),
    ]
    estimate = dataclasses.asdict(report)
    estimate["n0"] = mp.n0
    estimate["k1"] = mp.k1
    estimate["k2"] = mp.k2
    target = {
        "name": "hyperbolicity checks",
        "value": 0.0,
        "formula": "zero violations; eps' reported empirically",
    }
    rows = [_relation_row(rep) for rep in relations]
    return estimate, target, relations, rows


def _synthetic_quasi_sample(n: int, rng: np.random.Generator) -> FiniteSample:
    """Perturbed line ultrametric: U(i,j) = max gap between i and j, scaled
    entrywise by factors in [1, 2).  Satisfies the K=2 relaxed triangle test
    but not the triangle inequality, so chains genuinely shorten."""
    gaps = rng.random(n - 1) + 0.1
    U = np.zeros((n, n))
    for i in range(n - 1):
        U[i, i + 1 :] = np.maximum.accumulate(gaps[i:])
    U = np.maximum(U, U.T)
    factors = rng.uniform(1.0, 2.0 - 1e-9, size=(n, n))
    factors = np.triu(factors, 1)
    mat = U * (factors + factors.T)
    return FiniteSample.from_matrix(mat)


def _run_frink(config, space, params, mu):
    worst_direct = -math.inf  # max over samples of max(D - rho)
    worst_sandwich = -math.inf  # max over samples of max(rho - 4 D)
    failures = 0
    rows = []
    for i in range(config.n_samples):
        if i % 2 == 0:
            pts = [
                sample_point(space, 60, config.seed + i * config.sample_size + j)
                for j in range(config.sample_size)
            ]
            sample = FiniteSample.from_points(pts, params)
            kind = "frink:symbolic"
        else:
            rng = np.random.default_rng(config.seed + 5_000_000 + i)
            sample = _synthetic_quasi_sample(config.sample_size, rng)
            kind = "frink:synthetic"
        try:
            D = frink_metrize(sample)
        except ShiftMetricsError:
            failures += 1
            rows.append(_row(kind, i, math.inf, 4.0))
            continue
        R = sample.matrix
        worst_direct = max(worst_direct, float(np.max(D - R)))
        worst_sandwich = max(worst_sandwich, float(np.max(R - 4.0 * D)))
        nz = D > 0
        ratio = float(np.max(R[nz] / D[nz])) if nz.any() else 1.0
        rows.append(_row(kind, i, ratio, 4.0))
    relations = [
        _count_relation("frink: triangle inequality of D to 1e-12", failures),
        RelationReport(
            "frink: D <= rho",
            worst_direct,
            0.0,
            max(0.0, worst_direct),
            worst_direct <= 1e-12,
            1e-12,
        ),
        RelationReport(
            "frink: rho <= 4 D",
            worst_sandwich,
            0.0,
            max(0.0, worst_sandwich),
            worst_sandwich <= 1e-12,
            1e-12,
        ),
    ]
    estimate = {
        "samples": config.n_samples,
        "sample_size": config.sample_size,
        "metrization_failures": failures,
        "worst_D_minus_rho": worst_direct,
        "worst_rho_minus_4D": worst_sandwich,
    }
    target = {"name": "frink sandwich", "value": 4.0, "formula": "D <= rho <= 4 D"}
    rows.extend(_relation_row(rep) for rep in relations)
    return estimate, target, relations, rows


_RUNNERS = {
    "dim": _run_dim,
    "entropy": _run_entropy,
    "katok": _run_katok,
    "brin-katok": _run_brin_katok,
    "neutralized": _run_neutralized,
    "estimation": _run_estimation,
    "metric-verify": _run_metric_verify,
    "frink": _run_frink,
    "relations": _run_relations,
    "solve-5-23": _run_solve,
}


# ---------------------------------------------------------------------------
# report assembly and emission
# ---------------------------------------------------------------------------


def _resolved_config(config: RunConfig, space: ShiftSpace, params: MetricParams, mu) -> dict:
    d = dataclasses.asdict(config)
    d["resolved_space"] = _space_label(space)
    d["resolved_measure"] = measure_to_json(mu) if mu is not None else None
    d["k"] = params.k()
    return d


def emit_table(report: dict, fmt: str, out: str | None = None) -> str:
    """Render a report as JSON (full document) or CSV (plot-ready table).

    Writes to ``out`` when given, else stdout; returns the rendered text.
    """
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# schema_version={report['schema_version']}\n")
        buf.write(
            "# config=" + json.dumps(report["config"], sort_keys=True, separators=(",", ":")) + "\n"
        )
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report["rows"]:
            writer.writerow([row[c] for c in CSV_COLUMNS])
        text = buf.getvalue()
    else:
        raise HypothesisViolated(f"format must be json or csv, got {fmt!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def run(config: RunConfig) -> int:
    """Execute one batch run; emit the report; return the exit code."""
    try:
        space = parse_space(config.space)
        params = MetricParams(config.a, config.b, mode=config.mode)
        mu = load_measure(config.measure) if config.measure else None
        runner = _RUNNERS[config.quantity]
        try:
            estimate, target, relations, rows = runner(config, space, params, mu)
            error = None
        except NoSolution as exc:
            estimate, target, relations, rows = None, None, [], []
            error = str(exc)
    except (ShiftMetricsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    passed = error is None and all(rep.passed for rep in relations)
    report = {
        "schema_version": SCHEMA_VERSION,
        "quantity": config.quantity,
        "config": _resolved_config(config, space, params, mu),
        "estimate": _estimate_dict(estimate) if isinstance(estimate, SlopeEstimate) else estimate,
        "target": target,
        "relations": [dataclasses.asdict(rep) for rep in relations],
        "rows": rows,
        "error": error,
        "passed": passed,
    }
    emit_table(report, config.format, config.out)
    if error is not None:
        print(f"error: {error}", file=sys.stderr)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_tolerances(raw: list[str]) -> tuple[float | None, dict[str, float]]:
    scalar = None
    named: dict[str, float] = {}
    for item in raw:
        name, sep, value = item.rpartition("=")
        try:
            if sep:
                named[name] = float(value)
            else:
                scalar = float(value)
        except ValueError:
            raise HypothesisViolated(f"--tol expects FLOAT or NAME=FLOAT, got {item!r}")
    return scalar, named


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftmetrics",
        description="Verify dimension/entropy identities on shift spaces.",
    )
    sub = parser.add_subparsers(dest="quantity", required=True, metavar="quantity")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", default="full:2", help="full:M or sft:PATH")
    common.add_argument("--a", type=float, default=1.3, help="backward scale base (> 1)")
    common.add_argument("--b", type=float, default=1.3, help="forward scale base (> 1)")
    common.add_argument("--mode", choices=[TWO_SIDED, ONE_SIDED], default=TWO_SIDED)
    common.add_argument("--measure", default=None, help="path to a measure JSON spec")
    common.add_argument("--horizon", type=int, default=None, help="sampled-point horizon")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n-points", type=int, default=100, help="typical points / pairs")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="FLOAT|NAME=FLOAT",
        help="override the headline tolerance, or a named relation's",
    )
    depth = argparse.ArgumentParser(add_help=False)
    depth.add_argument("--t-min", type=int, default=None)
    depth.add_argument("--t-max", type=int, default=None)
    depth.add_argument("--t-step", type=int, default=None)
    depth.add_argument("--r1", type=float, default=DEFAULT_R1, help="reference radius")

    sp = sub.add_parser("dim", parents=[common], help="box / pointwise dimension")
    sp.add_argument("--j-min", type=int, default=8, help="ladder starts at 2^-j_min")
    sp.add_argument("--j-max", type=int, default=40, help="ladder ends at 2^-j_max")
    sub.add_parser("entropy", parents=[common, depth], help="spanning / local entropy")
    sp = sub.add_parser("katok", parents=[common, depth], help="minimal-cover entropy")
    sp.add_argument("--delta", type=float, default=0.25, help="mass defect in (0, 1)")
    sp.add_argument("--r", type=float, default=None, help="shrinking rate (default 0)")
    sub.add_parser("brin-katok", parents=[common, depth], help="local entropy at typical points")
    sp = sub.add_parser("neutralized", parents=[common, depth], help="shrinking-radius entropy")
    sp.add_argument("--r", type=float, default=None, help="shrinking rate (default 0.05)")
    sp = sub.add_parser("estimation", parents=[common, depth], help="discounted-radius entropy")
    sp.add_argument("--alpha", type=float, default=None, help="discount rate (default 0.1)")
    sp = sub.add_parser("metric-verify", parents=[common], help="hyperbolicity checks")
    sp.add_argument("--gamma", type=float, default=0.05, help="contraction margin")
    sp = sub.add_parser("frink", parents=[common], help="chain-metrization sandwich")
    sp.add_argument("--n-samples", type=int, default=50)
    sp.add_argument("--sample-size", type=int, default=200)
    sp = sub.add_parser("relations", parents=[common], help="full identity suite")
    sp.add_argument("--r", type=float, default=None, help="shrinking rate (default 0.05)")
    sp.add_argument("--alpha", type=float, default=None, help="discount rate (default 0.1)")
    sp.add_argument("--delta", type=float, default=0.25, help="covering mass defect")
    sp = sub.add_parser("solve-5-23", parents=[common], help="radius/rate exchange solver")
    sp.add_argument("--r", type=float, default=None)
    sp.add_argument("--alpha", type=float, default=None)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    scalar, named = _parse_tolerances(ns.tol)
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    kwargs = {k: v for k, v in vars(ns).items() if k in fields and k not in ("tol", "tolerances")}
    return RunConfig(**kwargs, tol=scalar, tolerances=named)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
    except (ShiftMetricsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
