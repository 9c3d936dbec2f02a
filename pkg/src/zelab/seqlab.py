"""Number-theoretic sequences and averaging primitives.

Mobius sieve, compensated Cesaro averages, Weyl exponential sums on a
frequency grid, oscillation testing, and finite upper-density estimates.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

CONSISTENT = "consistent-with-oscillating"
VIOLATION = "violation-witness"

# Requests above this size would need > ~8 GB of scratch arrays.
_MAX_SIEVE = 2**31


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class ArithmeticSequence:
    """A finite complex sequence c_1..c_N with 1-based indexing."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.values))
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("sequence must be one-dimensional and non-empty")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    def __getitem__(self, n: int):
        if not 1 <= n <= self.values.size:
            raise IndexError(f"index {n} outside 1..{self.values.size}")
        return self.values[n - 1]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "re", "im"])
            for i, v in enumerate(self.values, start=1):
                z = complex(v)
                w.writerow([i, f"{z.real:.15g}", f"{z.imag:.15g}"])

    @classmethod
    def from_csv(cls, path, label: str = "") -> "ArithmeticSequence":
        rows = []
        with open(path, newline="") as fh:
            for rec in csv.DictReader(fh):
                rows.append((int(rec["n"]), float(rec["re"]), float(rec["im"])))
        rows.sort()
        if not rows or [n for n, _, _ in rows] != list(range(1, len(rows) + 1)):
            raise ValueError("sequence csv must cover n = 1..N without gaps")
        vals = np.array([complex(re, im) for _, re, im in rows])
        if np.all(vals.imag == 0.0):
            vals = vals.real
        return cls(vals, label=label or Path(path).stem)


def mobius_sieve(N: int) -> ArithmeticSequence:
    """Mobius function mu(1..N) by an Eratosthenes-style sieve.

    mu(n) = 0 exactly when a prime square divides n, else (-1)^(number of
    prime factors).  Values are int8 in {-1, 0, 1}.
    """
    if N < 1:
        raise ValueError("sieve size must be at least 1")
    if N > _MAX_SIEVE:
        raise ValueError(f"sieve size {N} exceeds supported maximum {_MAX_SIEVE}")
    mask = np.ones(N + 1, dtype=bool)
    mask[: min(2, N + 1)] = False
    for p in range(2, math.isqrt(N) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    primes = np.flatnonzero(mask)
    mu = np.ones(N + 1, dtype=np.int8)
    for p in primes:
        mu[p::p] *= -1
    for p in primes[primes <= math.isqrt(N)]:
        mu[p * p :: p * p] = 0
    return ArithmeticSequence(mu[1:], label="mobius")


# ---------------------------------------------------------------------------
# compensated checkpointed averaging

# All averaging below sums in a fixed serial order: math.fsum over each
# checkpoint segment (exactly rounded), then fsum again over the segment
# totals.  Reruns are bit-for-bit reproducible.


def _validate_schedule(schedule: Sequence[int], N: int) -> list[int]:
    sched = [int(s) for s in schedule]
    if not sched:
        raise ValueError("schedule must be non-empty")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise ValueError("schedule must be strictly increasing")
    if sched[0] < 1 or sched[-1] > N:
        raise ValueError(f"schedule entries must lie in 1..{N}")
    return sched


def checkpointed_mean(terms: np.ndarray, schedule: Sequence[int]) -> list[complex]:
    """Running means (1/N) sum_{n<=N} terms[n-1] at each N in schedule."""
    sched = _validate_schedule(schedule, len(terms))
    terms = np.asarray(terms)
    complex_input = np.iscomplexobj(terms)
    re = np.ascontiguousarray(terms.real, dtype=np.float64)
    im = terms.imag if complex_input else None
    seg_re: list[float] = []
    seg_im: list[float] = []
    out: list[complex] = []
    prev = 0
    for N in sched:
        seg_re.append(math.fsum(re[prev:N]))
        tot_re = math.fsum(seg_re)
        if complex_input:
            seg_im.append(math.fsum(np.ascontiguousarray(im[prev:N], dtype=np.float64)))
            out.append(complex(tot_re, math.fsum(seg_im)) / N)
        else:
            out.append(tot_re / N)
        prev = N
    return out


def geometric_schedule(N: int, points: int = 8, start: int | None = None) -> list[int]:
    """Roughly log-spaced checkpoints ending exactly at N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    start = max(1, N // 10 ** (points - 1)) if start is None else max(1, start)
    raw = np.geomspace(start, N, points).round().astype(int)
    raw[-1] = N
    return sorted(set(int(v) for v in raw))


@dataclass(frozen=True)
class CesaroSeries:
    """Running Cesaro averages A_N at a checkpoint schedule."""

    checkpoints: tuple[int, ...]
    values: tuple[complex, ...]
    label: str = ""

    @property
    def final(self) -> complex:
        return self.values[-1]

    def magnitudes(self) -> np.ndarray:
        return np.abs(np.array(self.values))

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "series": [[int(n), complex(v).real, complex(v).imag]
                       for n, v in zip(self.checkpoints, self.values)],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CesaroSeries":
        pts = d["series"]
        vals = tuple(complex(re, im) if im else float(re) for _, re, im in pts)
        return cls(tuple(int(n) for n, _, _ in pts), vals, label=d.get("label", ""))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "value"])
            for n, v in zip(self.checkpoints, self.values):
                z = complex(v)
                cell = f"{z.real:.15g}" if z.imag == 0.0 else f"{z.real:.15g}{z.imag:+.15g}j"
                w.writerow([n, cell])


def cesaro_average(c: ArithmeticSequence, schedule: Sequence[int]) -> CesaroSeries:
    """A_N = (1/N) sum_{n=1}^{N} c_n for each N in the schedule."""
    sched = _validate_schedule(schedule, len(c))
    vals = checkpointed_mean(c.values, sched)
    return CesaroSeries(tuple(sched), tuple(vals), label=f"cesaro[{c.label}]")


# ---------------------------------------------------------------------------
# oscillation testing


@dataclass(frozen=True)
class OscillationReport:
    """Grid evidence for or against the oscillation property of a sequence.

    K_estimates are running Cesaro averages of |c_n|^lambda.  max_weyl holds,
    per checkpoint N, the maximum of |S_N(t)| = |(1/N) sum c_n e^{2 pi i n t}|
    over the uniform frequency grid t = j/grid_size.  The verdict flags a
    grid frequency whose Weyl sums fail to decay across the schedule and sit
    above the configured floor.
    """

    lambda_: float
    K_estimates: tuple[tuple[int, float], ...]
    grid_size: int
    max_weyl: tuple[tuple[int, float], ...]
    worst_t: float
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "K_estimates": [[n, v] for n, v in self.K_estimates],
            "grid_size": self.grid_size,
            "max_weyl": [[n, v] for n, v in self.max_weyl],
            "worst_t": self.worst_t,
            "verdict": self.verdict,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "OscillationReport":
        return cls(
            lambda_=float(d["lambda"]),
            K_estimates=tuple((int(n), float(v)) for n, v in d["K_estimates"]),
            grid_size=int(d["grid_size"]),
            max_weyl=tuple((int(n), float(v)) for n, v in d["max_weyl"]),
            worst_t=float(d["worst_t"]),
            verdict=str(d["verdict"]),
        )


def weyl_sums(c: ArithmeticSequence, grid_size: int,
              schedule: Sequence[int]) -> np.ndarray:
    """|S_N(t)| on the uniform grid t = j/grid_size for each scheduled N.

    S_N(j/G) depends on n only through n mod G, so the partial sums are
    regrouped by residue class and evaluated with one inverse FFT per
    checkpoint; this is an exact rearrangement of the defining sum.
    Returns an array of shape (len(schedule), grid_size).
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    sched = _validate_schedule(schedule, len(c))
    vals = np.asarray(c.values)
    complex_input = np.iscomplexobj(vals)
    G = int(grid_size)
    b_re = np.zeros(G)
    b_im = np.zeros(G)
    out = np.empty((len(sched), G))
    prev = 0
    for row, N in enumerate(sched):
        n = np.arange(prev + 1, N + 1)
        res = n % G
        b_re += np.bincount(res, weights=vals[prev:N].real, minlength=G)
        if complex_input:
            b_im += np.bincount(res, weights=vals[prev:N].imag, minlength=G)
        b = b_re + 1j * b_im if complex_input else b_re
        out[row] = np.abs(G * np.fft.ifft(b) / N)
        prev = N
    return out


def oscillation_test(c: ArithmeticSequence, lambda_: float = 2.0,
                     grid_size: int = 1024,
                     schedule: Sequence[int] | None = None,
                     floor: float = 0.05,
                     slack: float = 0.1) -> OscillationReport:
    """Test a sequence against the two oscillation requirements.

    A grid frequency t witnesses a violation when its |S_N(t)| values are
    non-decreasing across the schedule (up to a relative `slack`, which
    absorbs the slow sinc-type erosion of a genuinely resonant frequency)
    and the final value sits above `floor`.  Otherwise the verdict is
    consistent-with-oscillating and worst_t is the maximizing frequency at
    the last checkpoint.
    """
    if lambda_ <= 1.0:
        raise ValueError("oscillation exponent must exceed 1")
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if schedule is None:
        N = len(c)
        schedule = sorted({max(1, N // 100), max(1, N // 10), N})
    sched = _validate_schedule(schedule, len(c))

    absv = np.abs(np.asarray(c.values))
    K_vals = [float(v.real) for v in checkpointed_mean(absv ** lambda_, sched)]
    mean_abs = [float(v.real) for v in checkpointed_mean(absv, sched)]
    W = weyl_sums(c, grid_size, sched)
    max_w = W.max(axis=1)

    # triangle inequality |S_N(t)| <= (1/N) sum |c_n|, up to roundoff
    for mw, ma in zip(max_w, mean_abs):
        if mw > ma * (1.0 + 1e-9) + 1e-12:
            raise RuntimeError("Weyl sum exceeded its l1 bound; summation bug")

    final = W[-1]
    nondecr = np.ones(grid_size, dtype=bool)
    for row in range(1, len(sched)):
        nondecr &= W[row] >= (1.0 - slack) * W[row - 1]
    witnesses = nondecr & (final >= floor)
    if witnesses.any():
        j = int(np.flatnonzero(witnesses)[np.argmax(final[witnesses])])
        verdict = VIOLATION
    else:
        j = int(np.argmax(final))
        verdict = CONSISTENT
    return OscillationReport(
        lambda_=float(lambda_),
        K_estimates=tuple((n, k) for n, k in zip(sched, K_vals)),
        grid_size=grid_size,
        max_weyl=tuple((n, float(v)) for n, v in zip(sched, max_w)),
        worst_t=j / grid_size,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# upper density


@dataclass(frozen=True)
class DensityReport:
    """Finite upper-density estimate for a set E of natural numbers.

    upper_density_proxy is the maximum running ratio over the tail half of
    the checkpoint schedule, a finite stand-in for the limsup that errs on
    the large side.
    """

    N: int
    count: int
    running_ratio: tuple[tuple[int, float], ...]
    upper_density_proxy: float

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "count": self.count,
            "running_ratio": [[n, r] for n, r in self.running_ratio],
            "upper_density_proxy": self.upper_density_proxy,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DensityReport":
        return cls(
            N=int(d["N"]),
            count=int(d["count"]),
            running_ratio=tuple((int(n), float(r)) for n, r in d["running_ratio"]),
            upper_density_proxy=float(d["upper_density_proxy"]),
        )


def upper_density_estimate(E: Sequence[int], N: int,
                           checkpoints: Sequence[int]) -> DensityReport:
    """Running ratios #(E intersect [1, N_j]) / N_j and their tail maximum."""
    E = np.asarray(E, dtype=np.int64)
    if E.size and np.any(np.diff(E) <= 0):
        raise ValueError("E must be strictly increasing")
    if E.size and (E[0] < 1 or E[-1] > N):
        raise ValueError(f"E must be contained in 1..{N}")
    cps = _validate_schedule(checkpoints, N)
    if cps[-1] != N:
        raise ValueError("last checkpoint must equal N")
    counts = np.searchsorted(E, cps, side="right")
    ratios = counts / np.asarray(cps, dtype=np.float64)
    tail = ratios[len(cps) // 2 :]
    return DensityReport(
        N=int(N),
        count=int(E.size),
        running_ratio=tuple((int(n), float(r)) for n, r in zip(cps, ratios)),
        upper_density_proxy=float(tail.max()),
    )
