"""Command-line front end: experiment configuration and report emission.

One experiment per invocation.  Every run writes a JSON report, fixed-header
CSV series, rendered figures, and a manifest into the output directory.
Report and CSV bytes are deterministic for a given configuration and seed
(fixed key order, floats at 15 significant digits); the manifest carries the
wall time and is the only file allowed to differ between identical runs.

Exit codes: 0 success, 2 configuration validation, 3 computation error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

from . import __version__, plotting
from .mapengine import entropy_screen, locate_cascade_parameter, parse_map, periodic_points
from .odometer import (DEFAULT_DEPTH, Cylinder, OdometerPoint, cylinder_census,
                       progression_density)
from .seqlab import (ArithmeticSequence, cesaro_average, geometric_schedule,
                     mobius_sieve, oscillation_test)
from .tower import build_tower, itinerary, tau, verify_tower
from .verifier import (ProbeConfig, disjointness_run, equicontinuity_probe,
                       mean_attraction_search, mls_probe)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTE = 3
EXIT_IO = 4

OUTDIR_ENV = "ZELAB_OUTDIR"

COMMANDS = ("sieve", "oscillation", "screen", "tower", "odometer", "mls",
            "attract", "disjoint")


class ConfigError(ValueError):
    """A named experiment parameter failed validation."""

    def __init__(self, fieldname: str, message: str):
        super().__init__(f"{fieldname}: {message}")
        self.fieldname = fieldname


@dataclass
class ExperimentConfig:
    command: str
    parameters: dict
    output_dir: str
    seed: int = 0
    plot: bool = True

    def to_json_dict(self) -> dict:
        return {"command": self.command, "parameters": dict(self.parameters),
                "output_dir": self.output_dir, "seed": self.seed,
                "plot": self.plot}


@dataclass
class ReportBundle:
    output_dir: Path
    report: dict
    report_path: Path
    csv_paths: list[Path] = field(default_factory=list)
    figure_paths: list[Path] = field(default_factory=list)
    manifest_path: Path | None = None


# ---------------------------------------------------------------------------
# canonical serialization


def canonical(obj):
    """Round floats to 15 significant digits and strip numpy types."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.15g}")
    if isinstance(obj, complex):
        return [canonical(obj.real), canonical(obj.imag)]
    return obj


def write_json(path: Path, payload: dict) -> Path:
    text = json.dumps(canonical(payload), indent=2) + "\n"
    path.write_text(text)
    return path


def _format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15g}"
    return str(v)


def write_csv(path: Path, header, rows) -> Path:
    lines = [",".join(header)]
    lines += [",".join(_format_cell(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def emit_report(results: dict, output_dir, formats=("json", "csv")) -> list[Path]:
    """Write a report payload and its CSV tables with stable schemas.

    results holds "report" (a non-empty dict) and optionally "tables",
    a mapping name -> (header, rows).  Empty reports and empty tables are
    refused before anything is written.
    """
    report = results.get("report")
    if not report:
        raise ValueError("refusing to emit an empty report")
    tables = results.get("tables", {})
    for name, (header, rows) in tables.items():
        if not rows:
            raise ValueError(f"refusing to emit empty series {name!r}")
    outdir = Path(output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if "json" in formats:
        written.append(write_json(outdir / "report.json", report))
    if "csv" in formats:
        for name, (header, rows) in tables.items():
            written.append(write_csv(outdir / f"{name}.csv", header, rows))
    return written


# ---------------------------------------------------------------------------
# parameter plumbing


def _need(params: dict, key: str, cast, default=None):
    if key not in params or params[key] is None:
        if default is None:
            raise ConfigError(key, "required parameter is missing")
        return default
    try:
        return cast(params[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"cannot parse {params[key]!r}: {exc}") from exc


def _parse_int_list(raw) -> list[int]:
    if isinstance(raw, (list, tuple)):
        return [int(v) for v in raw]
    return [int(tok) for tok in str(raw).split(",") if tok.strip()]


def _resolve_sequence(spec: str, N: int | None) -> ArithmeticSequence:
    if spec == "mobius":
        if N is None:
            raise ConfigError("N", "required when c=mobius")
        return mobius_sieve(N)
    if spec == "ones":
        if N is None:
            raise ConfigError("N", "required when c=ones")
        return ArithmeticSequence(np.ones(N), label="ones")
    if spec.startswith("csv:"):
        return ArithmeticSequence.from_csv(spec[4:])
    raise ConfigError("c", f"unknown sequence source {spec!r}")


def _resolve_map(params: dict):
    text = _need(params, "map", str)
    if "r=feigenbaum" in text:
        # convenience alias: the depth-8 superstable cascade parameter
        r = locate_cascade_parameter(8)
        text = text.replace("r=feigenbaum", f"r={r:.15g}")
    try:
        return parse_map(text)
    except ValueError as exc:
        raise ConfigError("map", str(exc)) from exc


# ---------------------------------------------------------------------------
# experiment handlers: each returns (payload, tables, figures)


def _run_sieve(cfg: ExperimentConfig):
    N = _need(cfg.parameters, "N", int)
    if N < 1:
        raise ConfigError("N", "must be at least 1")
    seq = mobius_sieve(N)
    sums = cesaro_average(seq, geometric_schedule(N, points=min(8, max(2, N))))
    payload = {
        "schema": "zelab-report-v1",
        "command": "sieve",
        "N": N,
        "label": seq.label,
        "values": [int(v) for v in seq.values],
        "cesaro": sums.to_json_dict(),
    }
    tables = {"sieve": (["n", "mu"], [(i, int(v)) for i, v in enumerate(seq.values, 1)])}
    figures = [("fig_sieve.png", lambda p: plotting.render_sieve(seq, p))]
    return payload, tables, figures


def _run_oscillation(cfg: ExperimentConfig):
    p = cfg.parameters
    N = p.get("N")
    seq = _resolve_sequence(_need(p, "c", str, default="mobius"),
                            None if N is None else int(N))
    lam = _need(p, "lambda", float, default=2.0)
    grid_size = _need(p, "grid_size", int, default=1024)
    floor = _need(p, "floor", float, default=0.05)
    slack = _need(p, "slack", float, default=0.1)
    if lam <= 1.0:
        raise ConfigError("lambda", "must exceed 1")
    if grid_size < 2:
        raise ConfigError("grid_size", "must be at least 2")
    schedule = (_parse_int_list(p["schedule"]) if p.get("schedule")
                else sorted({max(1, len(seq) // 100), max(1, len(seq) // 10), len(seq)}))
    report = oscillation_test(seq, lambda_=lam, grid_size=grid_size,
                              schedule=schedule, floor=floor, slack=slack)
    payload = {"schema": "zelab-report-v1", "command": "oscillation",
               "sequence": seq.label, "schedule": schedule,
               "report": report.to_json_dict()}
    rows = [(n, k, w) for (n, k), (_, w) in zip(report.K_estimates, report.max_weyl)]
    tables = {"oscillation": (["N", "K", "max_weyl"], rows)}
    figures = [("fig_oscillation.png", lambda q: plotting.render_oscillation(report, q))]
    return payload, tables, figures


def _run_screen(cfg: ExperimentConfig):
    p = cfg.parameters
    f = _resolve_map(p)
    p_max = _need(p, "p_max", int, default=12)
    grid = _need(p, "grid", int, default=2**14)
    tol = _need(p, "tol", float, default=1e-12)
    if p_max < 3:
        raise ConfigError("p_max", "must be at least 3")
    if grid < 2:
        raise ConfigError("grid", "must be at least 2")
    result = entropy_screen(f, p_max=p_max, grid=grid, tol=tol)
    # distinct orbits across all search periods, for the series output
    seen: dict[tuple, tuple] = {}
    for q in range(1, p_max + 1):
        for pts, prim in periodic_points(f, q, grid=grid, tol=tol).orbits:
            key = (prim, round(pts[0] / max(1e-7, 10 * tol)))
            seen.setdefault(key, (pts, prim))
    rows = []
    for oid, (pts, prim) in enumerate(sorted(seen.values(), key=lambda t: (t[1], t[0]))):
        rows += [(oid, x, prim) for x in pts]
    payload = {"schema": "zelab-report-v1", "command": "screen", "map": str(f),
               "grid": grid, "tol": tol, "result": result.to_json_dict()}
    tables = {"orbits": (["orbit_id", "point", "primitive_period"], rows)}
    figures = [("fig_screen.png", lambda q: plotting.render_orbit_points(
        rows, q, title=f"periodic points, verdict {result.verdict}"))]
    return payload, tables, figures


def _run_tower(cfg: ExperimentConfig):
    p = cfg.parameters
    f = _resolve_map(p)
    depth = _need(p, "depth", int, default=8)
    x0 = _need(p, "x0", float, default=0.5)
    burn_in = _need(p, "burn_in", int, default=10_000)
    orbit_length = p.get("orbit_length")
    margin = _need(p, "margin", float, default=1e-12)
    samples = _need(p, "samples_per_interval", int, default=8)
    if depth < 1:
        raise ConfigError("depth", "must be at least 1")
    if not f.contains(x0):
        raise ConfigError("x0", f"outside domain {f.domain}")
    T = build_tower(f, x0, depth, burn_in=burn_in,
                    orbit_length=None if orbit_length is None else int(orbit_length),
                    margin=margin)
    payload = {"schema": "zelab-report-v1", "command": "tower",
               "tower": T.to_json_dict()}
    if T.depth >= 1:
        payload["verify"] = verify_tower(T, samples).to_json_dict()
        payload["tau"] = [[n, tau(T, n)] for n in range(1, T.depth + 1)]
        horizon = _need(p, "itinerary_N", int, default=0)
        if horizon:
            payload["itinerary"] = itinerary(T, x0, horizon).to_json_dict()
    rows = [(n, iv.k, iv.lo, iv.hi)
            for n in range(1, T.depth + 1) for iv in T.level(n)]
    if not rows:
        raise RuntimeError(
            f"tower construction failed at level {T.truncation.level} "
            f"(overlap {T.truncation.overlap:.3g}); no levels to report")
    tables = {"levels": (["level", "k", "lo", "hi"], rows)}
    figures = [("fig_tower.png", lambda q: plotting.render_tower(T, q))]
    return payload, tables, figures


def _run_odometer(cfg: ExperimentConfig):
    p = cfg.parameters
    depth = _need(p, "depth", int, default=DEFAULT_DEPTH)
    n = _need(p, "n", int, default=3)
    N = _need(p, "N", int, default=2**3)
    w_raw = p.get("w")
    if depth < 1:
        raise ConfigError("depth", "must be at least 1")
    if not 1 <= n <= depth:
        raise ConfigError("n", f"must lie in 1..{depth}")
    if N < 1:
        raise ConfigError("N", "must be at least 1")
    w = OdometerPoint(0, depth) if not w_raw else OdometerPoint.from_string(str(w_raw))
    if w.depth != depth:
        raise ConfigError("w", f"bit string length {w.depth} != depth {depth}")
    census = cylinder_census(w, n, N)
    payload = {
        "schema": "zelab-report-v1",
        "command": "odometer",
        "depth": depth, "n": n, "N": N, "w": w.to_string(),
        "census": [[cyl.to_string(), cnt]
                   for cyl, cnt in sorted(census.items(), key=lambda kv: kv[0].value)],
    }
    if p.get("target") or p.get("source"):
        tgt = Cylinder.from_string(str(_need(p, "target", str)))
        src = Cylinder.from_string(str(_need(p, "source", str)))
        try:
            payload["progression"] = progression_density(tgt, src).to_json_dict()
        except ValueError as exc:
            raise ConfigError("target/source", str(exc)) from exc
    rows = [(cyl, cnt) for cyl, cnt in payload["census"]]
    tables = {"census": (["cylinder", "count"], rows)}
    figures = [("fig_census.png", lambda q: plotting.render_census(census, q))]
    return payload, tables, figures


def _probe_config(p: dict, seed: int) -> ProbeConfig:
    try:
        return ProbeConfig(
            epsilon=_need(p, "epsilon", float, default=0.1),
            delta=_need(p, "delta", float, default=1e-3),
            horizon=_need(p, "N", int, default=100_000),
            pair_count=_need(p, "pairs", int, default=100),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError("epsilon/delta/N/pairs", str(exc)) from exc


def _mls_sample(p: dict, f):
    mode = _need(p, "sample", str, default="tower")
    if mode == "tower":
        depth = _need(p, "tower_depth", int, default=8)
        x0 = _need(p, "x0", float, default=0.5)
        per_cell = _need(p, "per_cell", int, default=4)
        T = build_tower(f, x0, depth)
        if T.depth < 1:
            raise RuntimeError(
                "tower sampling failed: no valid levels for this map; "
                "use sample=orbit instead")
        return T.level_sample(T.depth, per_cell), {"sample": "tower",
                                                   "tower_depth": T.depth}
    if mode == "orbit":
        x0 = _need(p, "x0", float, default=0.1234)
        size = _need(p, "sample_size", int, default=8192)
        burn = _need(p, "sample_burn_in", int, default=1000)
        orb = f.orbit(x0, burn + size)[burn + 1 :]
        return orb, {"sample": "orbit", "sample_size": size}
    raise ConfigError("sample", f"unknown sampling mode {mode!r}")


def _run_mls(cfg: ExperimentConfig):
    p = cfg.parameters
    f = _resolve_map(p)
    probe_cfg = _probe_config(p, cfg.seed)
    K, meta = _mls_sample(p, f)
    verdict = mls_probe(f, K, probe_cfg)
    eq = equicontinuity_probe(f, K, probe_cfg)
    payload = {"schema": "zelab-report-v1", "command": "mls", "map": str(f),
               **meta, "verdict": verdict.to_json_dict(),
               "equicontinuity": eq.to_json_dict()}
    tables = {"pairs": (["u", "v", "bad_density"], list(verdict.pairs))}
    figures = [("fig_mls.png", lambda q: plotting.render_mls(verdict, q))]
    return payload, tables, figures


def _run_attract(cfg: ExperimentConfig):
    p = cfg.parameters
    f = _resolve_map(p)
    x = _need(p, "x", float)
    if not f.contains(x):
        raise ConfigError("x", f"outside domain {f.domain}")
    probe_cfg = _probe_config(p, cfg.seed)
    depth = _need(p, "tower_depth", int, default=8)
    x0 = _need(p, "x0", float, default=0.5)
    T = build_tower(f, x0, depth)
    if T.depth < 1:
        raise RuntimeError("tower construction found no valid levels for this map")
    cps = _parse_int_list(p["checkpoints"]) if p.get("checkpoints") else None
    result = mean_attraction_search(f, x, T, probe_cfg, checkpoints=cps)
    payload = {"schema": "zelab-report-v1", "command": "attract", "map": str(f),
               "x": x, "tower_depth": T.depth, "result": result.to_json_dict()}
    tables = {"attract": (["N", "value"], [(n, d) for n, d in result.cesaro_distance])}
    figures = [("fig_attract.png", lambda q: plotting.render_attraction(result, q))]
    return payload, tables, figures


def _run_disjoint(cfg: ExperimentConfig):
    p = cfg.parameters
    f = _resolve_map(p)
    x = _need(p, "x", float)
    if not f.contains(x):
        raise ConfigError("x", f"outside domain {f.domain}")
    N = p.get("N")
    seq = _resolve_sequence(_need(p, "c", str, default="mobius"),
                            None if N is None else int(N))
    phi = _need(p, "phi", str, default="x")
    schedule = (_parse_int_list(p["schedule"]) if p.get("schedule")
                else geometric_schedule(len(seq), points=12))
    series = disjointness_run(seq, phi, f, x, schedule)
    payload = {"schema": "zelab-report-v1", "command": "disjoint", "map": str(f),
               "x": x, "sequence": seq.label, "phi": phi,
               "series": series.to_json_dict()}
    rows = [(n, complex(v).real if complex(v).imag == 0 else str(complex(v)))
            for n, v in zip(series.checkpoints, series.values)]
    tables = {"disjoint": (["N", "value"], rows)}
    figures = [("fig_disjoint.png", lambda q: plotting.render_series(
        series, q, title=f"|S_N| for {series.label}"))]
    return payload, tables, figures


_HANDLERS = {
    "sieve": _run_sieve,
    "oscillation": _run_oscillation,
    "screen": _run_screen,
    "tower": _run_tower,
    "odometer": _run_odometer,
    "mls": _run_mls,
    "attract": _run_attract,
    "disjoint": _run_disjoint,
}


def run_experiment(cfg: ExperimentConfig) -> ReportBundle:
    """Validate, dispatch, and write the full report bundle."""
    if cfg.command not in _HANDLERS:
        raise ConfigError("command", f"unknown command {cfg.command!r}")
    if cfg.seed < 0:
        raise ConfigError("seed", "must be non-negative")
    t0 = time.perf_counter()
    payload, tables, figures = _HANDLERS[cfg.command](cfg)
    outdir = Path(cfg.output_dir)
    written = emit_report({"report": payload, "tables": tables}, outdir)
    bundle = ReportBundle(output_dir=outdir, report=payload,
                          report_path=written[0], csv_paths=written[1:])
    if cfg.plot:
        for name, render in figures:
            bundle.figure_paths.append(Path(render(outdir / name)))
    manifest = {
        "config": cfg.to_json_dict(),
        "versions": {
            "zelab": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "matplotlib": matplotlib.__version__,
        },
        "wall_time_s": time.perf_counter() - t0,
        "files": sorted(p.name for p in
                        [bundle.report_path, *bundle.csv_paths, *bundle.figure_paths]),
    }
    bundle.manifest_path = write_json(outdir / "manifest.json", manifest)
    return bundle


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", "-o", default=None, help="output directory")
    sub.add_argument("--seed", type=int, default=None, help="rng seed (default 0)")
    sub.add_argument("--config", default=None,
                     help="json config file; explicit flags win over it")
    sub.add_argument("--no-plot", action="store_true", help="skip figure rendering")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zelab",
        description="desk-scale experiments on zero-entropy interval dynamics")
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("sieve", help="Mobius function by sieve")
    s.add_argument("--N", type=int, default=None)
    _add_common(s)

    s = sp.add_parser("oscillation", help="Weyl-sum oscillation test")
    s.add_argument("--c", default=None, help="mobius | ones | csv:PATH")
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--lambda", dest="lambda_", type=float, default=None)
    s.add_argument("--grid-size", type=int, default=None)
    s.add_argument("--schedule", default=None, help="comma-separated checkpoints")
    s.add_argument("--floor", type=float, default=None)
    s.add_argument("--slack", type=float, default=None)
    _add_common(s)

    s = sp.add_parser("screen", help="powers-of-2 periodic point screen")
    s.add_argument("--map", default=None, help='e.g. "logistic r=3.5 domain=[0,1]"')
    s.add_argument("--p-max", type=int, default=None)
    s.add_argument("--grid", type=int, default=None)
    s.add_argument("--tol", type=float, default=None)
    _add_common(s)

    s = sp.add_parser("tower", help="build and verify an interval tower")
    s.add_argument("--map", default=None)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--x0", type=float, default=None)
    s.add_argument("--burn-in", type=int, default=None)
    s.add_argument("--orbit-length", type=int, default=None)
    s.add_argument("--margin", type=float, default=None)
    s.add_argument("--samples-per-interval", type=int, default=None)
    s.add_argument("--itinerary-N", type=int, default=None,
                   help="also run an itinerary of x0 over this horizon")
    _add_common(s)

    s = sp.add_parser("odometer", help="adding-machine census and progressions")
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--w", default=None, help="start point bits, i0 first")
    s.add_argument("--target", default=None, help="target cylinder bits")
    s.add_argument("--source", default=None, help="source cylinder bits")
    _add_common(s)

    s = sp.add_parser("mls", help="mean-L-stability probe")
    s.add_argument("--map", default=None)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--delta", type=float, default=None)
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--pairs", type=int, default=None)
    s.add_argument("--sample", default=None, help="tower | orbit")
    s.add_argument("--tower-depth", type=int, default=None)
    s.add_argument("--x0", type=float, default=None)
    s.add_argument("--per-cell", type=int, default=None)
    s.add_argument("--sample-size", type=int, default=None)
    _add_common(s)

    s = sp.add_parser("attract", help="mean-attraction search")
    s.add_argument("--map", default=None)
    s.add_argument("--x", type=float, default=None)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--tower-depth", type=int, default=None)
    s.add_argument("--x0", type=float, default=None)
    s.add_argument("--checkpoints", default=None)
    _add_common(s)

    s = sp.add_parser("disjoint", help="weighted orbit averages S_N")
    s.add_argument("--c", default=None, help="mobius | ones | csv:PATH")
    s.add_argument("--N", type=int, default=None)
    s.add_argument("--phi", default=None, help="x | one | cos:k | sin:k | table:PATH")
    s.add_argument("--map", default=None)
    s.add_argument("--x", type=float, default=None)
    s.add_argument("--schedule", default=None)
    _add_common(s)

    return ap


_FLAG_KEYS = {
    "sieve": ["N"],
    "oscillation": ["c", "N", "lambda_", "grid_size", "schedule", "floor", "slack"],
    "screen": ["map", "p_max", "grid", "tol"],
    "tower": ["map", "depth", "x0", "burn_in", "orbit_length", "margin",
              "samples_per_interval", "itinerary_N"],
    "odometer": ["depth", "n", "N", "w", "target", "source"],
    "mls": ["map", "epsilon", "delta", "N", "pairs", "sample", "tower_depth",
            "x0", "per_cell", "sample_size"],
    "attract": ["map", "x", "epsilon", "N", "tower_depth", "x0", "checkpoints"],
    "disjoint": ["c", "N", "phi", "map", "x", "schedule"],
}

_PARAM_ALIASES = {"lambda_": "lambda"}


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Merge defaults, config file, and explicit flags (flags win)."""
    file_cfg: dict = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid json in {args.config}: {exc}") from exc
        if file_cfg.get("command", args.command) != args.command:
            raise ConfigError("config",
                              f"file is for command {file_cfg['command']!r}, "
                              f"not {args.command!r}")
    params = dict(file_cfg.get("parameters", {}))
    for key in _FLAG_KEYS[args.command]:
        val = getattr(args, key, None)
        if val is not None:
            params[_PARAM_ALIASES.get(key, key)] = val
    out = (args.out or file_cfg.get("output_dir")
           or os.environ.get(OUTDIR_ENV) or f"zelab-out/{args.command}")
    seed = args.seed if args.seed is not None else int(file_cfg.get("seed", 0))
    plot = False if args.no_plot else bool(file_cfg.get("plot", True))
    return ExperimentConfig(command=args.command, parameters=params,
                            output_dir=str(out), seed=seed, plot=plot)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        bundle = run_experiment(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # module computation errors, verbatim
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    print(f"wrote {bundle.report_path}")
    for p in bundle.csv_paths + bundle.figure_paths:
        print(f"wrote {p}")
    print(f"wrote {bundle.manifest_path}")
    return EXIT_OK


def cli() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    cli()
