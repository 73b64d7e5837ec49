"""Pre-registered verification suites.

Each suite returns a list of :class:`GofReport`.  Thresholds and parameter
grids are fixed here, not at call sites: the statistical checks run at
documented sample sizes with seeds recorded in every report, so a failure is
reproducible rather than flaky.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import UsageError
from .gof import (
    GofReport,
    cauchy_square_convergence,
    mc_transform_check,
    verify_occupation_identity,
)
from .laws import (
    LawKind,
    LawSpec,
    arcsine_pdf,
    density_mean,
    fractional_moment,
    integrate_density,
    mellin_transform,
    ratio_A_pdf,
    spider_pdf,
    stieltjes_transform,
)
from .rng import RngStream, composite_stream_id
from .samplers import StableParams, sample_positive_stable, sample_ratio_X

TRANSFORM_MUS = (0.3, 0.5, 0.7)
LAPLACE_LAMBDAS = (0.5, 1.0, 2.0)
STIELTJES_S = (0.5, 1.0, 2.0)
MOMENT_ORDERS = (0.25, 0.5)          # orders s of E[S^(mu s)], kept below 1
MELLIN_FRACTIONS = (0.25, 0.5)       # s as a fraction of mu, kept at or below 1/2
TRANSFORM_SAMPLES = 1_000_000

NORMALIZATION_MUS = tuple(round(0.1 * k, 1) for k in range(1, 10))
NORMALIZATION_RAYS = tuple(range(2, 11))
MEAN_MUS = (0.25, 0.5, 0.75)

CONVERGENCE_RAYS = (2, 4, 8, 16, 32, 64)
OCCUPATION_RAYS = (2, 3)

# verification streams live far above the walk engines' run ids
_SUITE_RUN_BASE = 64


def _stream(seed, index) -> RngStream:
    return RngStream(seed, composite_stream_id(_SUITE_RUN_BASE + index, 0))


def _deterministic_report(name, gap, tol) -> GofReport:
    return GofReport(name, float(gap), None, 0, 0, 0, float(tol), "stat_max")


# ---------------------------------------------------------------------------
# seeded Monte-Carlo transform checks
# ---------------------------------------------------------------------------

def transform_suite(seed, n_samples=TRANSFORM_SAMPLES):
    """Laplace, Stieltjes, Mellin and fractional-moment bands at 4 sigma."""
    reports = []
    idx = 0
    for mu in TRANSFORM_MUS:
        params = StableParams(mu)
        stable = lambda rng, size: sample_positive_stable(params, rng, size)
        ratio = lambda rng, size: sample_ratio_X(params, rng, size)
        for lam in LAPLACE_LAMBDAS:
            reports.append(mc_transform_check(
                stable, lambda s, lam=lam: np.exp(-lam * s),
                math.exp(-lam ** mu), n_samples, _stream(seed, idx),
                name=f"laplace[mu={mu},lam={lam}]",
            ))
            idx += 1
        for s in STIELTJES_S:
            reports.append(mc_transform_check(
                ratio, lambda x, s=s: 1.0 / (1.0 + s * x),
                stieltjes_transform(s, mu), n_samples, _stream(seed, idx),
                name=f"stieltjes[mu={mu},s={s}]",
            ))
            idx += 1
        for frac in MELLIN_FRACTIONS:
            s = frac * mu
            reports.append(mc_transform_check(
                ratio, lambda x, s=s: x ** s,
                mellin_transform(s, mu), n_samples, _stream(seed, idx),
                name=f"mellin[mu={mu},s={s:g}]",
            ))
            idx += 1
        for s in MOMENT_ORDERS:
            reports.append(mc_transform_check(
                stable, lambda v, p=mu * s: v ** p,
                fractional_moment(s, mu), n_samples, _stream(seed, idx),
                name=f"moment[mu={mu},s={s}]",
            ))
            idx += 1
    return reports


# ---------------------------------------------------------------------------
# deterministic density checks
# ---------------------------------------------------------------------------

def density_suite():
    """Reduction identities, normalisation and mean identities."""
    reports = []
    grid = np.arange(1, 1000) / 1000.0

    gap = np.abs(ratio_A_pdf(grid, 0.5) - arcsine_pdf(grid)).max()
    reports.append(_deterministic_report("reduction[ratio_a(mu=1/2)=arcsine]", gap, 1e-12))
    gap = np.abs(spider_pdf(grid, 2) - arcsine_pdf(grid)).max()
    reports.append(_deterministic_report("reduction[spider(n=2)=arcsine]", gap, 1e-12))

    arc = LawSpec(LawKind.ARC_SINE)
    reports.append(_deterministic_report(
        "normalization[arcsine]", abs(integrate_density(arc, 0.0, 1.0) - 1.0), 1e-8))
    for mu in NORMALIZATION_MUS:
        law = LawSpec(LawKind.STABLE_RATIO_A, mu=mu)
        gap = abs(integrate_density(law, 0.0, 1.0) - 1.0)
        reports.append(_deterministic_report(f"normalization[ratio_a,mu={mu}]", gap, 1e-8))
    for n in NORMALIZATION_RAYS:
        law = LawSpec(LawKind.SPIDER_OCCUPATION, n=n)
        gap = abs(integrate_density(law, 0.0, 1.0) - 1.0)
        reports.append(_deterministic_report(f"normalization[spider,n={n}]", gap, 1e-8))

    for n in NORMALIZATION_RAYS:
        law = LawSpec(LawKind.SPIDER_OCCUPATION, n=n)
        gap = abs(density_mean(law) - 1.0 / n)
        reports.append(_deterministic_report(f"mean[spider,n={n}]=1/n", gap, 1e-8))
    for mu in MEAN_MUS:
        law = LawSpec(LawKind.STABLE_RATIO_A, mu=mu)
        gap = abs(density_mean(law) - 0.5)
        reports.append(_deterministic_report(f"mean[ratio_a,mu={mu}]=1/2", gap, 1e-8))
    return reports


# ---------------------------------------------------------------------------
# occupation identity and the deterministic convergence curve
# ---------------------------------------------------------------------------

def occupation_suite(seed, n_values=OCCUPATION_RAYS, paths=10_000, steps=20_000):
    reports = []
    for n in n_values:
        reports.extend(verify_occupation_identity(n, paths=paths, steps=steps, seed=seed))
    return reports


def convergence_suite(n_values=CONVERGENCE_RAYS, grid_size=1000, final_bound=0.02):
    points = cauchy_square_convergence(n_values, grid_size=grid_size)
    distances = [p.distance for p in points]
    worst_rise = max(
        (b - a for a, b in zip(distances, distances[1:])), default=-1.0)
    reports = [
        _deterministic_report("convergence[distances strictly decreasing]",
                              max(0.0, worst_rise), 0.0),
        _deterministic_report(f"convergence[distance at n={points[-1].n}]",
                              distances[-1], final_bound),
    ]
    return reports, points


SUITE_NAMES = ("transforms", "densities", "occupation", "convergence", "all")


def run_suite(name, seed):
    """Run one named suite; returns (reports, extras) for the CLI."""
    if name == "transforms":
        return transform_suite(seed), {}
    if name == "densities":
        return density_suite(), {}
    if name == "occupation":
        return occupation_suite(seed), {}
    if name == "convergence":
        reports, points = convergence_suite()
        return reports, {"points": points}
    if name == "all":
        reports = density_suite()
        conv, points = convergence_suite()
        reports += conv
        reports += transform_suite(seed)
        reports += occupation_suite(seed)
        return reports, {"points": points}
    raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
