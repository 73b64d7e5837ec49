"""Lattice random walk on a spider of n rays.

The walk lives on n half-lines glued at the origin: at radial distance
d >= 1 it steps to d +/- 1 with probability 1/2 each, and from the origin it
steps to distance 1 on a ray chosen uniformly.  Each of the ``steps`` unit
steps is attributed to the ray being walked (a step leaving the origin counts
for the freshly chosen ray), so occupation counts always sum exactly to the
number of steps; the origin itself carries no occupation.

Two engines produce identical laws:

* a vectorised stepwise engine used for plain paths and fixed-time stops.
  It exploits the fact that the radial part is the absolute value of a plain
  +/-1 walk, so one cumulative sum per path yields the distance profile, the
  zero set, and the excursion boundaries; rays are then assigned per
  excursion.
* an excursion-jump engine used for the inverse stopping rules, whose
  stopping times have stable(1/2) tails and routinely overshoot any fixed
  step horizon.  It draws the iid (ray, first-return-length) excursion
  sequence directly -- the first-return law P(T > 2k) = C(2k, k) 4**-k is
  inverted exactly from a table, with the standard asymptotic continuation
  past table range -- and resolves the stopping rule on whole excursions plus
  the partial crossing excursion.  The stopped occupation vector is the same
  deterministic function of the excursion sequence in both engines, so the
  laws agree exactly; the unit tests cross-check this against a stepwise
  reference.

Each path owns a private substream ``(seed, composite_stream_id(run_id, p))``,
making batches reproducible bit for bit regardless of chunking or worker
count.
"""
from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import CapBreachedError, ParameterDomainError, UsageError
from .rng import RngStream, composite_stream_id
from .samplers import SimplexVector

DEFAULT_OCCUPATION_LEVEL = 0.5
DEFAULT_LOCAL_TIME_LEVEL = 1.0
DEFAULT_CAP_MULTIPLIER = 1.0e5

_CHUNK_BYTES = 1 << 26
_OCC_BLOCK = 128


# ---------------------------------------------------------------------------
# configuration and result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpiderConfig:
    """Walk geometry and Monte-Carlo budget.

    ``n = 1`` is allowed purely as a reflecting-walk sanity configuration;
    statistical runs enforce ``steps >= 1000`` unless ``allow_small_steps``
    is set (unit tests use tiny walks).
    """

    n: int
    steps: int
    paths: int = 1
    seed: int = 0
    allow_small_steps: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterDomainError(f"ray count must be an integer >= 1: {self.n}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ParameterDomainError(f"steps must be a positive integer: {self.steps}")
        if self.steps < 1000 and not self.allow_small_steps:
            raise ParameterDomainError(
                f"steps = {self.steps} < 1000; set allow_small_steps for tiny walks"
            )
        if int(self.paths) != self.paths or self.paths < 1:
            raise ParameterDomainError(f"paths must be a positive integer: {self.paths}")


@dataclass(frozen=True)
class SpiderPathSummary:
    """Bookkeeping of one finished path."""

    n: int
    steps: int
    occupation_counts: tuple[int, ...]
    zero_visits: int
    last_zero_step: int
    final_ray: int
    final_distance: int

    def __post_init__(self):
        if sum(self.occupation_counts) != self.steps:
            raise ParameterDomainError("occupation counts must sum to steps")
        if self.zero_visits < 1:
            raise ParameterDomainError("a path visits the origin at least once")
        if not 0 <= self.last_zero_step <= self.steps:
            raise ParameterDomainError("last zero outside [0, steps]")


_RULE_KINDS = ("fixed_time", "inverse_occupation", "inverse_local_time")


@dataclass(frozen=True)
class StoppingRule:
    """When to freeze the occupation vector.

    ``fixed_time``          stop after ``level * steps`` steps
    ``inverse_occupation``  stop when the chosen ray's count exceeds
                            ``level * steps``
    ``inverse_local_time``  stop when the origin-visit count exceeds
                            ``level * sqrt(steps)``

    ``cap_multiplier`` bounds the simulation: a path whose rule has not fired
    within ``cap_multiplier`` times the rule's nominal horizon is discarded
    (and counted).  The inverse rules have stable(1/2)-tailed stopping times,
    so the generous default keeps the discard fraction a few per mille.
    """

    kind: str
    level: float
    ray: int | None = None
    cap_multiplier: float = DEFAULT_CAP_MULTIPLIER

    def __post_init__(self):
        if self.kind not in _RULE_KINDS:
            raise ParameterDomainError(f"unknown stopping rule: {self.kind!r}")
        if not (math.isfinite(self.level) and self.level > 0):
            raise ParameterDomainError(f"level must be strictly positive: {self.level}")
        if self.kind == "inverse_occupation":
            if self.ray is None or int(self.ray) != self.ray or self.ray < 1:
                raise ParameterDomainError(f"need a 1-based ray index, got {self.ray}")
        elif self.ray is not None:
            raise ParameterDomainError(f"{self.kind} takes no ray index")
        if self.cap_multiplier < 1.0:
            raise ParameterDomainError("cap multiplier must be >= 1")

    @classmethod
    def fixed_time(cls, level=1.0, cap_multiplier=DEFAULT_CAP_MULTIPLIER):
        return cls("fixed_time", level, None, cap_multiplier)

    @classmethod
    def inverse_occupation(cls, level=DEFAULT_OCCUPATION_LEVEL, ray=1,
                           cap_multiplier=DEFAULT_CAP_MULTIPLIER):
        return cls("inverse_occupation", level, ray, cap_multiplier)

    @classmethod
    def inverse_local_time(cls, level=DEFAULT_LOCAL_TIME_LEVEL,
                           cap_multiplier=DEFAULT_CAP_MULTIPLIER):
        return cls("inverse_local_time", level, None, cap_multiplier)

    def validate_for(self, config: SpiderConfig):
        if self.kind == "inverse_occupation" and self.ray > config.n:
            raise ParameterDomainError(
                f"ray {self.ray} out of range for an {config.n}-ray spider"
            )
        if self.kind == "inverse_local_time":
            if math.floor(self.level * math.sqrt(config.steps)) < 1:
                raise ParameterDomainError(
                    "local-time level below one origin visit at this lattice scale"
                )

    def nominal_steps(self, config: SpiderConfig) -> int:
        if self.kind == "fixed_time":
            return max(1, round(self.level * config.steps))
        if self.kind == "inverse_occupation":
            return max(1, round(self.level * config.steps * config.n))
        return max(1, round(self.level * self.level * config.steps))

    def cap_steps(self, config: SpiderConfig) -> int:
        return int(math.ceil(self.cap_multiplier * self.nominal_steps(config)))


@dataclass
class WalkBatch:
    """Column arrays for a batch of plain fixed-length paths."""

    config: SpiderConfig
    run_id: int
    counts: np.ndarray
    zero_visits: np.ndarray
    last_zero_step: np.ndarray
    final_ray: np.ndarray
    final_distance: np.ndarray

    @property
    def fractions(self) -> np.ndarray:
        return self.counts / self.config.steps

    @property
    def last_zero_fraction(self) -> np.ndarray:
        return self.last_zero_step / self.config.steps

    def summary(self, i: int) -> SpiderPathSummary:
        return SpiderPathSummary(
            n=self.config.n,
            steps=self.config.steps,
            occupation_counts=tuple(int(c) for c in self.counts[i]),
            zero_visits=int(self.zero_visits[i]),
            last_zero_step=int(self.last_zero_step[i]),
            final_ray=int(self.final_ray[i]),
            final_distance=int(self.final_distance[i]),
        )


@dataclass
class StopBatch:
    """Column arrays for a batch of stopped paths; discarded rows are flagged."""

    config: SpiderConfig
    rule: StoppingRule
    run_id: int
    counts: np.ndarray
    stopped_step: np.ndarray
    zero_visits: np.ndarray
    last_zero_step: np.ndarray
    discarded: np.ndarray

    @property
    def kept(self) -> np.ndarray:
        return ~self.discarded

    @property
    def discard_count(self) -> int:
        return int(self.discarded.sum())

    @property
    def fractions(self) -> np.ndarray:
        """Occupation fractions of the kept paths, shape (kept, n)."""
        keep = self.kept
        return self.counts[keep] / self.stopped_step[keep, None]

    @property
    def kept_stopped_steps(self) -> np.ndarray:
        return self.stopped_step[self.kept]


# ---------------------------------------------------------------------------
# stepwise engine
# ---------------------------------------------------------------------------

def _path_generator(config: SpiderConfig, run_id: int, index: int):
    stream = RngStream(config.seed, composite_stream_id(run_id, index))
    return stream.generator


def _stepwise_chunk(gens, steps: int, n: int):
    """Run len(gens) paths for ``steps`` steps; returns column arrays.

    Per path the draw order is fixed: the +/-1 sign sequence first, then one
    uniform ray per excursion started before time ``steps``.
    """
    m = len(gens)
    signs = np.empty((m, steps), dtype=np.int8)
    for i, g in enumerate(gens):
        signs[i] = g.integers(0, 2, size=steps, dtype=np.int8)
    signs *= 2
    signs -= 1
    dist = np.cumsum(signs, axis=1, dtype=np.int32)
    np.abs(dist, out=dist)
    zero = dist == 0  # positions at times 1..steps

    zero_visits = 1 + zero.sum(axis=1, dtype=np.int64)

    # excursion index of each step: zeros among strictly earlier times
    eid = np.zeros((m, steps), dtype=np.int32)
    if steps > 1:
        np.cumsum(zero[:, :-1], axis=1, dtype=np.int32, out=eid[:, 1:])
    n_exc = eid[:, -1] + 1

    rays = np.zeros((m, int(n_exc.max())), dtype=np.int16)
    for i, g in enumerate(gens):
        k = int(n_exc[i])
        rays[i, :k] = g.integers(0, n, size=k, dtype=np.int16)
    step_ray = np.take_along_axis(rays, eid, axis=1)

    flat = (np.arange(m, dtype=np.int64)[:, None] * n + step_ray).ravel()
    counts = np.bincount(flat, minlength=m * n).reshape(m, n).astype(np.int64)

    has_return = zero.any(axis=1)
    last_col = steps - 1 - np.argmax(zero[:, ::-1], axis=1)
    last_zero = np.where(has_return, last_col + 1, 0).astype(np.int64)

    return {
        "counts": counts,
        "zero_visits": zero_visits,
        "last_zero_step": last_zero,
        "final_ray": step_ray[:, -1].astype(np.int64),
        "final_distance": dist[:, -1].astype(np.int64),
    }


def _chunk_bounds(paths: int, steps: int):
    rows = max(1, _CHUNK_BYTES // (12 * steps))
    return [(lo, min(lo + rows, paths)) for lo in range(0, paths, rows)]


def simulate_batch(config: SpiderConfig, run_id: int = 0, threads: int = 1) -> WalkBatch:
    """Simulate ``config.paths`` independent paths of ``config.steps`` steps."""
    paths, steps, n = config.paths, config.steps, config.n
    out = {
        "counts": np.empty((paths, n), dtype=np.int64),
        "zero_visits": np.empty(paths, dtype=np.int64),
        "last_zero_step": np.empty(paths, dtype=np.int64),
        "final_ray": np.empty(paths, dtype=np.int64),
        "final_distance": np.empty(paths, dtype=np.int64),
    }

    def run(span):
        lo, hi = span
        gens = [_path_generator(config, run_id, p) for p in range(lo, hi)]
        return lo, hi, _stepwise_chunk(gens, steps, n)

    spans = _chunk_bounds(paths, steps)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, spans))
    else:
        results = [run(s) for s in spans]
    for lo, hi, chunk in results:
        for key, arr in chunk.items():
            out[key][lo:hi] = arr
    return WalkBatch(config=config, run_id=run_id, **out)


def simulate_path(config: SpiderConfig, rng: RngStream) -> SpiderPathSummary:
    """Run one path on the caller's stream and summarise it."""
    chunk = _stepwise_chunk([rng.generator], config.steps, config.n)
    return SpiderPathSummary(
        n=config.n,
        steps=config.steps,
        occupation_counts=tuple(int(c) for c in chunk["counts"][0]),
        zero_visits=int(chunk["zero_visits"][0]),
        last_zero_step=int(chunk["last_zero_step"][0]),
        final_ray=int(chunk["final_ray"][0]),
        final_distance=int(chunk["final_distance"][0]),
    )


def occupation_fraction(summary: SpiderPathSummary) -> SimplexVector:
    """Occupation counts normalised by the path length."""
    if summary.n < 2:
        raise UsageError("occupation fractions need at least 2 rays")
    return SimplexVector(tuple(c / summary.steps for c in summary.occupation_counts))


def last_zero_fraction(summary: SpiderPathSummary) -> float:
    """Last visit to the origin as a fraction of the path length."""
    return summary.last_zero_step / summary.steps


def local_time_proxy(summary: SpiderPathSummary) -> float:
    """Origin-visit count scaled by sqrt(steps); lattice local-time proxy."""
    return summary.zero_visits / math.sqrt(summary.steps)


# ---------------------------------------------------------------------------
# excursion engine: exact first-return lengths
# ---------------------------------------------------------------------------

_RETURN_TABLE_K = 1 << 20
_return_tail_asc: np.ndarray | None = None


def _return_tail_table() -> np.ndarray:
    """P(T > 2k) for k = 0..K, ascending (reversed) for searchsorted."""
    global _return_tail_asc
    if _return_tail_asc is None:
        k = np.arange(1, _RETURN_TABLE_K + 1, dtype=np.float64)
        tail = np.empty(_RETURN_TABLE_K + 1)
        tail[0] = 1.0
        np.cumprod((2.0 * k - 1.0) / (2.0 * k), out=tail[1:])
        _return_tail_asc = tail[::-1].copy()
    return _return_tail_asc


def _first_return_lengths(u: np.ndarray) -> np.ndarray:
    """Invert uniforms into first-return times of the +/-1 walk.

    Exact inverse-CDF over the tabulated range (about 2 million steps); the
    far tail uses the asymptotic P(T > 2k) ~ (pi k)**-1/2 (1 - 1/(8k)), whose
    inversion k = 1/(pi u^2) - 1/4 is accurate to well under one unit there.
    """
    asc = _return_tail_table()
    k = (_RETURN_TABLE_K + 1 - np.searchsorted(asc, u, side="left")).astype(np.float64)
    far = u <= asc[0]
    if np.any(far):
        uf = u[far]
        k[far] = np.rint(1.0 / (np.pi * uf * uf) - 0.25)
    return 2.0 * k


# ---------------------------------------------------------------------------
# stopping rules
# ---------------------------------------------------------------------------

def _stop_fixed_batch(config, rule, run_id):
    horizon = rule.nominal_steps(config)
    walk_cfg = replace(config, steps=horizon, allow_small_steps=True)
    walk = simulate_batch(walk_cfg, run_id=run_id)
    paths = config.paths
    return StopBatch(
        config=config,
        rule=rule,
        run_id=run_id,
        counts=walk.counts,
        stopped_step=np.full(paths, horizon, dtype=np.int64),
        zero_visits=walk.zero_visits,
        last_zero_step=walk.last_zero_step,
        discarded=np.zeros(paths, dtype=bool),
    )


def _stop_local_time_batch(config, rule, run_id):
    n, paths = config.n, config.paths
    m_exc = int(math.floor(rule.level * math.sqrt(config.steps)))
    cap = rule.cap_steps(config)
    counts = np.zeros((paths, n), dtype=np.float64)
    taus = np.zeros(paths, dtype=np.float64)
    for p in range(paths):
        g = _path_generator(config, run_id, p)
        rays = g.integers(0, n, size=m_exc)
        lengths = _first_return_lengths(g.random(m_exc))
        counts[p] = np.bincount(rays, weights=lengths, minlength=n)
        taus[p] = lengths.sum()
    discarded = taus > cap
    stopped = np.where(discarded, 0, taus).astype(np.int64)
    return StopBatch(
        config=config,
        rule=rule,
        run_id=run_id,
        counts=np.where(discarded[:, None], 0, counts),
        stopped_step=stopped,
        zero_visits=np.where(discarded, 0, m_exc + 1).astype(np.int64),
        last_zero_step=stopped.copy(),  # the rule fires at an origin visit
        discarded=discarded,
    )


def _stop_occupation_batch(config, rule, run_id):
    n, paths = config.n, config.paths
    j = rule.ray - 1
    thresh = math.floor(rule.level * config.steps) + 1.0
    cap = float(rule.cap_steps(config))

    gens = [_path_generator(config, run_id, p) for p in range(paths)]
    counts = np.zeros((paths, n), dtype=np.float64)
    cum_j = np.zeros(paths)
    n_exc = np.zeros(paths, dtype=np.int64)
    taus = np.zeros(paths)
    zero_visits = np.zeros(paths, dtype=np.int64)
    last_zero = np.zeros(paths)
    discarded = np.zeros(paths, dtype=bool)
    alive = np.arange(paths)

    while alive.size:
        b = _OCC_BLOCK
        rays = np.empty((alive.size, b), dtype=np.int16)
        lengths = np.empty((alive.size, b))
        for i, p in enumerate(alive):
            rays[i] = gens[p].integers(0, n, size=b, dtype=np.int16)
            lengths[i] = _first_return_lengths(gens[p].random(b))

        on_j = rays == j
        cum = cum_j[alive, None] + np.cumsum(np.where(on_j, lengths, 0.0), axis=1)
        crossed = cum >= thresh
        has_cross = crossed.any(axis=1)
        pos = np.argmax(crossed, axis=1)

        # per-ray totals of the complete excursions before the crossing point
        # (or of the whole block for rows that did not cross)
        upto = np.where(has_cross, pos, b)
        col = np.arange(b)[None, :]
        before = col < upto[:, None]
        block_counts = np.empty((alive.size, n))
        for r in range(n):
            block_counts[:, r] = np.where(before & (rays == r), lengths, 0.0).sum(axis=1)

        rows = np.arange(alive.size)
        cross_rows = rows[has_cross]
        if cross_rows.size:
            p_idx = alive[cross_rows]
            cum_before = cum[cross_rows, pos[cross_rows]] - lengths[cross_rows, pos[cross_rows]]
            need = thresh - cum_before
            fin = counts[p_idx] + block_counts[cross_rows]
            fin[:, j] = thresh
            tau = fin.sum(axis=1)
            exact_landing = cum[cross_rows, pos[cross_rows]] == thresh
            counts[p_idx] = fin
            taus[p_idx] = tau
            zero_visits[p_idx] = n_exc[p_idx] + pos[cross_rows] + 1 + exact_landing
            last_zero[p_idx] = np.where(exact_landing, tau, tau - need)
            discarded[p_idx] = tau > cap

        open_rows = rows[~has_cross]
        if open_rows.size:
            p_idx = alive[open_rows]
            counts[p_idx] += block_counts[open_rows]
            cum_j[p_idx] = cum[open_rows, -1]
            n_exc[p_idx] += b
            running = counts[p_idx].sum(axis=1)
            over = running > cap
            discarded[p_idx[over]] = True
            alive = p_idx[~over]
        else:
            alive = np.empty(0, dtype=np.int64)

    keep = ~discarded
    return StopBatch(
        config=config,
        rule=rule,
        run_id=run_id,
        counts=np.where(keep[:, None], counts, 0.0),
        stopped_step=np.where(keep, taus, 0).astype(np.int64),
        zero_visits=np.where(keep, zero_visits, 0),
        last_zero_step=np.where(keep, last_zero, 0).astype(np.int64),
        discarded=discarded,
    )


def stop_batch(config: SpiderConfig, rule: StoppingRule, run_id: int = 0) -> StopBatch:
    """Stop every path of the batch by ``rule``; discards are flagged, not dropped."""
    rule.validate_for(config)
    if config.n < 2:
        raise UsageError("stopping rules need at least 2 rays")
    if rule.kind == "fixed_time":
        return _stop_fixed_batch(config, rule, run_id)
    if rule.kind == "inverse_local_time":
        return _stop_local_time_batch(config, rule, run_id)
    return _stop_occupation_batch(config, rule, run_id)


def stop_at(config: SpiderConfig, rule: StoppingRule, rng: RngStream):
    """Stop a single path on the caller's stream; returns (SimplexVector, step).

    The draw order per rule matches the batch engines, so path p of a batch
    equals ``stop_at`` on the stream ``(seed, composite_stream_id(run_id, p))``.
    Raises :class:`CapBreachedError` when the rule does not fire within the
    cap, which callers must treat as a discarded path.
    """
    rule.validate_for(config)
    if config.n < 2:
        raise UsageError("stopping rules need at least 2 rays")
    n = config.n
    g = rng.generator
    cap = rule.cap_steps(config)

    if rule.kind == "fixed_time":
        horizon = rule.nominal_steps(config)
        chunk = _stepwise_chunk([g], horizon, n)
        return SimplexVector(tuple(chunk["counts"][0] / horizon)), horizon

    if rule.kind == "inverse_local_time":
        m_exc = int(math.floor(rule.level * math.sqrt(config.steps)))
        rays = g.integers(0, n, size=m_exc)
        lengths = _first_return_lengths(g.random(m_exc))
        tau = lengths.sum()
        if tau > cap:
            raise CapBreachedError(cap)
        counts = np.bincount(rays, weights=lengths, minlength=n)
        return SimplexVector(tuple(counts / tau)), int(tau)

    j = rule.ray - 1
    thresh = math.floor(rule.level * config.steps) + 1.0
    counts = np.zeros(n)
    cum_j = 0.0
    while True:
        rays = g.integers(0, n, size=_OCC_BLOCK, dtype=np.int16)
        lengths = _first_return_lengths(g.random(_OCC_BLOCK))
        on_j = rays == j
        cum = cum_j + np.cumsum(np.where(on_j, lengths, 0.0))
        crossed = cum >= thresh
        if crossed.any():
            pos = int(np.argmax(crossed))
            for r in range(n):
                counts[r] += lengths[:pos][rays[:pos] == r].sum()
            counts[j] = thresh
            tau = counts.sum()
            if tau > cap:
                raise CapBreachedError(cap)
            return SimplexVector(tuple(counts / tau)), int(tau)
        for r in range(n):
            counts[r] += lengths[rays == r].sum()
        cum_j = cum[-1]
        if counts.sum() > cap:
            raise CapBreachedError(cap)


# ---------------------------------------------------------------------------
# batch output
# ---------------------------------------------------------------------------

def write_batch_csv(csv_path, batch: WalkBatch | StopBatch):
    """Per-path summary rows; discarded paths keep their flag and empty stats."""
    config = batch.config
    n = config.n
    header = (
        ["path_id"]
        + [f"frac_ray{j + 1}" for j in range(n)]
        + ["zero_visits", "last_zero_fraction", "stopped_step", "discarded"]
    )
    if isinstance(batch, WalkBatch):
        fracs = batch.fractions
        stopped = np.full(config.paths, config.steps, dtype=np.int64)
        zv = batch.zero_visits
        lz = batch.last_zero_fraction
        disc = np.zeros(config.paths, dtype=bool)
    else:
        keep = batch.kept
        stopped = batch.stopped_step
        zv = batch.zero_visits
        disc = batch.discarded
        fracs = np.zeros((config.paths, n))
        fracs[keep] = batch.counts[keep] / stopped[keep, None]
        lz = np.zeros(config.paths)
        lz[keep] = batch.last_zero_step[keep] / stopped[keep]
    with open(str(csv_path), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for p in range(config.paths):
            if disc[p]:
                row = [p] + [""] * n + ["", "", "", "true"]
            else:
                row = (
                    [p]
                    + [repr(float(x)) for x in fracs[p]]
                    + [int(zv[p]), repr(float(lz[p])), int(stopped[p]), "false"]
                )
            writer.writerow(row)


def write_run_manifest(path, batch: WalkBatch | StopBatch, wall_time_s: float | None):
    """JSON manifest of one run; pass ``wall_time_s=None`` for byte-stable output."""
    config = batch.config
    manifest = {
        "n": config.n,
        "steps": config.steps,
        "paths": config.paths,
        "seed": config.seed,
        "run_id": batch.run_id,
        "rule": None,
        "discard_count": 0,
        "wall_time_s": wall_time_s,
    }
    if isinstance(batch, StopBatch):
        manifest["rule"] = {
            "kind": batch.rule.kind,
            "level": batch.rule.level,
            "ray": batch.rule.ray,
            "cap_multiplier": batch.rule.cap_multiplier,
        }
        manifest["discard_count"] = batch.discard_count
    with open(str(path), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_walk_batch(config: SpiderConfig, rule: StoppingRule | None, csv_path,
                   manifest_path, run_id: int = 0, threads: int = 1,
                   record_wall_time: bool = True):
    """Simulate, then emit the per-path CSV and the JSON run manifest."""
    t0 = time.monotonic()
    if rule is None:
        batch = simulate_batch(config, run_id=run_id, threads=threads)
    else:
        batch = stop_batch(config, rule, run_id=run_id)
    write_batch_csv(csv_path, batch)
    wall = time.monotonic() - t0 if record_wall_time else None
    write_run_manifest(manifest_path, batch, wall)
    return batch
