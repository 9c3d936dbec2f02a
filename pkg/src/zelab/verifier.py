"""Empirical probes for mean-L-stability, equicontinuity, mean attraction,
and linear disjointness of weighted orbit averages.

Every probe is sampled and reports margins next to its boolean verdict; the
(epsilon, delta, horizon, pair_count, seed) provenance travels inside each
report so a run can be reproduced exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .mapengine import MapSpec
from .seqlab import (ArithmeticSequence, CesaroSeries, DensityReport,
                     checkpointed_mean, geometric_schedule,
                     upper_density_estimate)
from .tower import NotAttractedError, Tower


class SamplingError(RuntimeError):
    """No admissible sample pairs were found under the configured delta."""


@dataclass(frozen=True)
class ProbeConfig:
    epsilon: float = 0.1
    delta: float = 1e-3
    horizon: int = 100_000
    pair_count: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.epsilon <= 0 or self.delta <= 0:
            raise ValueError("epsilon and delta must be positive")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.pair_count < 1:
            raise ValueError("pair_count must be at least 1")

    def to_json_dict(self) -> dict:
        return {"epsilon": self.epsilon, "delta": self.delta,
                "horizon": self.horizon, "pair_count": self.pair_count,
                "seed": self.seed}

    @classmethod
    def from_json_dict(cls, d: dict) -> "ProbeConfig":
        return cls(float(d["epsilon"]), float(d["delta"]), int(d["horizon"]),
                   int(d["pair_count"]), int(d["seed"]))


def close_pairs(K_sample: Sequence[float], delta: float) -> list[tuple[float, float]]:
    """All distinct pairs (u, v), u < v, with v - u < delta."""
    xs = np.sort(np.asarray(K_sample, dtype=np.float64))
    pairs = []
    for i in range(xs.size):
        j = i + 1
        while j < xs.size and xs[j] - xs[i] < delta:
            if xs[j] > xs[i]:
                pairs.append((float(xs[i]), float(xs[j])))
            j += 1
    return pairs


def _sample_pairs(K_sample, cfg: ProbeConfig) -> list[tuple[float, float]]:
    pairs = close_pairs(K_sample, cfg.delta)
    if not pairs:
        raise SamplingError(
            f"no pairs closer than delta={cfg.delta} in a sample of "
            f"{len(K_sample)} points; enlarge K_sample or delta")
    if len(pairs) > cfg.pair_count:
        rng = np.random.default_rng(cfg.seed)
        idx = np.sort(rng.choice(len(pairs), size=cfg.pair_count, replace=False))
        pairs = [pairs[i] for i in idx]
    return pairs


def _evolve_pairs(f: MapSpec, pairs, horizon: int, epsilon: float):
    """One synchronous sweep over all pairs.

    Returns (bad, worst, worst_pair_index, worst_time) where bad is the
    horizon x npairs boolean matrix of epsilon-separated times.  The sweep
    order is fixed, so results are reproducible bit for bit.
    """
    u = np.array([p[0] for p in pairs])
    v = np.array([p[1] for p in pairs])
    npairs = u.size
    bad = np.empty((horizon, npairs), dtype=bool)
    best = np.abs(u - v)
    best_t = np.zeros(npairs, dtype=np.int64)
    for t in range(1, horizon + 1):
        u = f.apply_array(u)
        v = f.apply_array(v)
        sep = np.abs(u - v)
        bad[t - 1] = sep >= epsilon
        upd = sep > best
        best[upd] = sep[upd]
        best_t[upd] = t
    a, b = f.domain
    if min(u.min(), v.min()) < a - 1e-9 or max(u.max(), v.max()) > b + 1e-9:
        raise RuntimeError(f"pair orbits escaped the domain of {f}")
    i = int(np.argmax(best))
    return bad, float(best[i]), i, int(best_t[i])


@dataclass(frozen=True)
class MlsVerdict:
    """Sampled mean-L-stability check.

    Each pair carries the upper-density proxy of its bad-time set
    E = {n <= horizon : |f^n u - f^n v| >= epsilon}; the probe passes when
    every proxy stays below epsilon.
    """

    pairs: tuple[tuple[float, float, float], ...]
    worst_density: float
    passed: bool
    config: ProbeConfig

    def to_json_dict(self) -> dict:
        return {
            "pairs": [[u, v, d] for u, v, d in self.pairs],
            "worst_density": self.worst_density,
            "pass": self.passed,
            "config": self.config.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MlsVerdict":
        return cls(tuple((float(u), float(v), float(x)) for u, v, x in d["pairs"]),
                   float(d["worst_density"]), bool(d["pass"]),
                   ProbeConfig.from_json_dict(d["config"]))


def mls_probe(f: MapSpec, K_sample: Sequence[float], cfg: ProbeConfig,
              checkpoints: Sequence[int] | None = None) -> MlsVerdict:
    """Estimate bad-time densities for sampled delta-close pairs."""
    for x in np.asarray(K_sample):
        if not f.contains(float(x)):
            raise ValueError(f"sample point {x} outside domain {f.domain}")
    pairs = _sample_pairs(K_sample, cfg)
    bad, _, _, _ = _evolve_pairs(f, pairs, cfg.horizon, cfg.epsilon)
    cps = list(checkpoints) if checkpoints else geometric_schedule(cfg.horizon)
    rows = []
    for i, (u, v) in enumerate(pairs):
        E = np.flatnonzero(bad[:, i]) + 1
        report: DensityReport = upper_density_estimate(E, cfg.horizon, cps)
        rows.append((u, v, report.upper_density_proxy))
    worst = max(d for _, _, d in rows)
    return MlsVerdict(tuple(rows), float(worst), bool(worst < cfg.epsilon), cfg)


@dataclass(frozen=True)
class EquicontinuityReport:
    """Worst forward separation among sampled delta-close pairs."""

    worst_separation: float
    witness: tuple[float, float]
    witness_time: int
    config: ProbeConfig

    def to_json_dict(self) -> dict:
        return {
            "worst_separation": self.worst_separation,
            "witness": list(self.witness),
            "witness_time": self.witness_time,
            "config": self.config.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "EquicontinuityReport":
        return cls(float(d["worst_separation"]),
                   tuple(float(x) for x in d["witness"]),
                   int(d["witness_time"]),
                   ProbeConfig.from_json_dict(d["config"]))


def equicontinuity_probe(f: MapSpec, K_sample: Sequence[float],
                         cfg: ProbeConfig) -> EquicontinuityReport:
    """max over n <= horizon of |f^n u - f^n v| over sampled close pairs.

    Small output (bounded by a tower width) is the equicontinuous
    signature; output stuck above a fixed positive separation is the
    signature of a tower with persistent interval lengths.
    """
    for x in np.asarray(K_sample):
        if not f.contains(float(x)):
            raise ValueError(f"sample point {x} outside domain {f.domain}")
    pairs = _sample_pairs(K_sample, cfg)
    _, worst, idx, t = _evolve_pairs(f, pairs, cfg.horizon, cfg.epsilon)
    return EquicontinuityReport(worst, pairs[idx], t, cfg)


# ---------------------------------------------------------------------------
# mean attraction


@dataclass(frozen=True)
class AttractionResult:
    """Cesaro tracking of an orbit by a phase-matched tower point.

    attained holds when the limsup proxy (the largest Cesaro distance over
    the final quarter of checkpoints) stays below epsilon.
    """

    z: float
    cesaro_distance: tuple[tuple[int, float], ...]
    attained: bool
    entry_time: int
    config: ProbeConfig

    def to_json_dict(self) -> dict:
        return {
            "z": self.z,
            "cesaro_distance": [[n, d] for n, d in self.cesaro_distance],
            "attained": self.attained,
            "entry_time": self.entry_time,
            "config": self.config.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "AttractionResult":
        return cls(float(d["z"]),
                   tuple((int(n), float(x)) for n, x in d["cesaro_distance"]),
                   bool(d["attained"]), int(d["entry_time"]),
                   ProbeConfig.from_json_dict(d["config"]))


def mean_attraction_search(f: MapSpec, x: float, T: Tower, cfg: ProbeConfig,
                           z: float | None = None,
                           checkpoints: Sequence[int] | None = None
                           ) -> AttractionResult:
    """Find a tower point whose orbit Cesaro-tracks the orbit of x.

    The search waits for the orbit of x to enter a deepest-level interval
    at some time m0, then picks z from the cluster whose phase puts its own
    orbit in that same interval at m0.  With z supplied explicitly the
    search is skipped and only the averaging runs.
    """
    if T.depth < 1:
        raise ValueError("tower has no valid levels")
    if not f.contains(x):
        raise ValueError(f"start {x} outside domain {f.domain}")
    orbit_x = f.orbit(x, cfg.horizon)
    labels = T.locate_many(orbit_x)
    inside = labels >= 0
    if not inside.any():
        raise NotAttractedError(
            f"orbit of {x} never entered the depth-{T.depth} tower "
            f"within {cfg.horizon} steps")
    m0 = int(np.argmax(inside))
    if z is None:
        M = 2**T.depth
        cell = int((labels[m0] - m0) % M)
        z = float(T.cluster_points(T.depth, cell)[0])
    orbit_z = f.orbit(z, cfg.horizon)
    dists = np.abs(orbit_x[1:] - orbit_z[1:])
    cps = list(checkpoints) if checkpoints else geometric_schedule(cfg.horizon, points=4)
    means = [float(v) for v in checkpointed_mean(dists, cps)]
    tail = means[-max(1, -(-len(means) // 4)):]
    return AttractionResult(
        z=float(z),
        cesaro_distance=tuple((n, m) for n, m in zip(cps, means)),
        attained=bool(max(tail) < cfg.epsilon),
        entry_time=m0,
        config=cfg,
    )


# ---------------------------------------------------------------------------
# observables and disjointness


@dataclass(frozen=True)
class Observable:
    """A continuous observable evaluated along orbits."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, xs: np.ndarray) -> np.ndarray:
        return self.fn(xs)


def make_observable(spec, domain: tuple[float, float]) -> Observable:
    """Resolve an observable description.

    Accepts an Observable, a callable, or one of the built-in names:
    "x" (the coordinate), "one" (the constant 1), "cos:k" / "sin:k"
    (trigonometric monomials of the rescaled coordinate), or
    "table:PATH" (csv of x,y rows, linearly interpolated; its abscissae
    must cover the map domain).
    """
    if isinstance(spec, Observable):
        return spec
    if callable(spec):
        return Observable(getattr(spec, "__name__", "callable"), spec)
    a, b = domain
    name = str(spec)
    if name in ("x", "coord"):
        return Observable("x", lambda xs: np.asarray(xs, dtype=np.float64))
    if name in ("one", "1"):
        return Observable("one", lambda xs: np.ones_like(np.asarray(xs, dtype=np.float64)))
    if name.startswith(("cos:", "sin:")):
        k = int(name.split(":", 1)[1])
        w = 2.0 * math.pi * k / (b - a)
        if name.startswith("cos:"):
            return Observable(name, lambda xs: np.cos(w * (np.asarray(xs) - a)))
        return Observable(name, lambda xs: np.sin(w * (np.asarray(xs) - a)))
    if name.startswith("table:"):
        path = name.split(":", 1)[1]
        data = np.loadtxt(path, delimiter=",", ndmin=2)
        xs, ys = data[:, 0], data[:, 1]
        if np.any(np.diff(xs) <= 0):
            raise ValueError("table abscissae must be strictly increasing")
        if xs[0] > a or xs[-1] < b:
            raise ValueError(
                f"table covers [{xs[0]}, {xs[-1]}] but the domain is [{a}, {b}]")
        return Observable(name, lambda q: np.interp(np.asarray(q), xs, ys))
    raise ValueError(f"unknown observable {spec!r}")


def table_observable(xs: Sequence[float], ys: Sequence[float],
                     domain: tuple[float, float],
                     name: str = "table") -> Observable:
    """In-memory variant of the table observable."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if np.any(np.diff(xs) <= 0):
        raise ValueError("table abscissae must be strictly increasing")
    a, b = domain
    if xs[0] > a or xs[-1] < b:
        raise ValueError(f"table covers [{xs[0]}, {xs[-1]}] but the domain is [{a}, {b}]")
    return Observable(name, lambda q: np.interp(np.asarray(q), xs, ys))


def disjointness_run(c: ArithmeticSequence, phi, f: MapSpec, x: float,
                     schedule: Sequence[int],
                     orbit: np.ndarray | None = None) -> CesaroSeries:
    """S_N = (1/N) sum_{n=1}^{N} c_n phi(f^n x) at each scheduled N.

    The orbit may be passed in to share one iteration across several
    observables.  For a constant observable this reduces term by term to
    the plain Cesaro average of c.
    """
    sched = sorted(set(int(s) for s in schedule))
    if not sched:
        raise ValueError("schedule must be non-empty")
    maxN = sched[-1]
    if maxN > len(c):
        raise ValueError(f"schedule reaches {maxN} but the sequence ends at {len(c)}")
    obs = make_observable(phi, f.domain)
    if orbit is None:
        orbit = f.orbit(x, maxN)
    elif len(orbit) < maxN + 1:
        raise ValueError("supplied orbit is shorter than the schedule needs")
    terms = np.asarray(c.values)[:maxN] * obs(orbit[1 : maxN + 1])
    vals = checkpointed_mean(terms, sched)
    return CesaroSeries(tuple(sched), tuple(vals),
                        label=f"disjoint[{c.label};{obs.name}]")
