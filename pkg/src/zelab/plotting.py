"""Figure rendering for experiment reports.

Each renderer takes report objects plus an output path, draws one figure
with the Agg backend, and returns the path.  Figures accompany the CSV and
JSON outputs; they are a convenience view, never the data of record.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .seqlab import ArithmeticSequence, CesaroSeries, OscillationReport
from .tower import Tower
from .verifier import AttractionResult, MlsVerdict

_FIGSIZE = (7.0, 4.5)


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def render_sieve(seq: ArithmeticSequence, path) -> str:
    fig, ax = _new_axes(f"partial sums of {seq.label or 'sequence'}")
    sums = np.cumsum(np.asarray(seq.values, dtype=np.float64))
    n = np.arange(1, len(sums) + 1)
    ax.plot(n, sums, lw=0.8)
    ax.plot(n, np.sqrt(n), "k--", lw=0.8, alpha=0.6, label="sqrt(N)")
    ax.plot(n, -np.sqrt(n), "k--", lw=0.8, alpha=0.6)
    ax.set_xlabel("N")
    ax.set_ylabel("sum of first N values")
    ax.legend()
    return _save(fig, path)


def render_oscillation(report: OscillationReport, path) -> str:
    fig, ax = _new_axes("Weyl sum decay on the frequency grid")
    ns = [n for n, _ in report.max_weyl]
    ax.loglog(ns, [v for _, v in report.max_weyl], "o-", label="max_t |S_N(t)|")
    ax.loglog(ns, [k for _, k in report.K_estimates], "s--", alpha=0.7,
              label="(1/N) sum |c_n|^lambda")
    ax.axhline(1 / np.sqrt(ns[-1]), color="k", ls=":", alpha=0.5, label="N^-1/2 scale")
    ax.set_xlabel("N")
    ax.set_ylabel("magnitude")
    ax.legend()
    ax.set_title(f"verdict: {report.verdict} (worst t = {report.worst_t:.6g})")
    return _save(fig, path)


def render_series(series: CesaroSeries, path, title: str = "Cesaro average decay") -> str:
    fig, ax = _new_axes(title)
    mags = series.magnitudes()
    ax.loglog(series.checkpoints, np.maximum(mags, 1e-18), "o-")
    ax.set_xlabel("N")
    ax.set_ylabel("|S_N|")
    return _save(fig, path)


def render_tower(T: Tower, path) -> str:
    fig, ax = _new_axes(f"interval tower, depth {T.depth}")
    for n in range(1, T.depth + 1):
        for iv in T.level(n):
            width = max(iv.width, 1e-4 * (T.map_spec.domain[1] - T.map_spec.domain[0]))
            ax.add_patch(plt.Rectangle((iv.lo, n - 0.35), width, 0.7,
                                       facecolor="C0", edgecolor="none", alpha=0.8))
    ax.set_xlim(*T.map_spec.domain)
    ax.set_ylim(0.3, T.depth + 0.7)
    ax.set_yticks(range(1, T.depth + 1))
    ax.set_xlabel("x")
    ax.set_ylabel("level n")
    ax.set_title(f"interval tower, depth {T.depth} ({T.map_spec})")
    return _save(fig, path)


def render_census(counts: dict, path) -> str:
    fig, ax = _new_axes("odometer cylinder visit counts")
    items = sorted(counts.items(), key=lambda kv: kv[0].value)
    ax.bar(range(len(items)), [v for _, v in items], width=0.9)
    ax.set_xlabel("cylinder index")
    ax.set_ylabel("visits")
    return _save(fig, path)


def render_mls(verdict: MlsVerdict, path) -> str:
    fig, ax = _new_axes("bad-time densities over sampled pairs")
    dens = [d for _, _, d in verdict.pairs]
    ax.hist(dens, bins=min(40, max(5, len(dens) // 3)))
    ax.axvline(verdict.config.epsilon, color="r", ls="--",
               label=f"epsilon = {verdict.config.epsilon}")
    ax.set_xlabel("upper-density proxy of the bad set")
    ax.set_ylabel("pairs")
    ax.legend()
    ax.set_title(f"worst density {verdict.worst_density:.4g}, "
                 f"{'pass' if verdict.passed else 'fail'}")
    return _save(fig, path)


def render_attraction(result: AttractionResult, path) -> str:
    fig, ax = _new_axes("Cesaro distance to the matched tower point")
    ns = [n for n, _ in result.cesaro_distance]
    ds = [max(d, 1e-18) for _, d in result.cesaro_distance]
    ax.loglog(ns, ds, "o-")
    ax.axhline(result.config.epsilon, color="r", ls="--",
               label=f"epsilon = {result.config.epsilon}")
    ax.set_xlabel("N")
    ax.set_ylabel("(1/N) sum |f^n x - f^n z|")
    ax.legend()
    ax.set_title(f"attained: {result.attained} (entry time {result.entry_time})")
    return _save(fig, path)


def render_orbit_points(rows, path, title: str = "periodic points by primitive period") -> str:
    fig, ax = _new_axes(title)
    if rows:
        xs = [x for _, x, _ in rows]
        qs = [q for _, _, q in rows]
        ax.scatter(xs, qs, s=18)
        ax.set_yticks(sorted(set(qs)))
    ax.set_xlabel("x")
    ax.set_ylabel("primitive period")
    return _save(fig, path)
