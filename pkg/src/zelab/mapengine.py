"""Interval map families, orbits, periodic points, and subshift spectra.

Root finding uses grid scans plus bisection only: the map families include
non-smooth ones (tent, piecewise-linear) and bisection needs nothing beyond
continuity.  Iterated compositions f^p are reliable to roughly p = 20 in
double precision; callers wanting longer search periods are on their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FAMILIES = ("logistic", "tent", "quadratic", "piecewise-linear")

_SELF_MAP_SAMPLES = 4097
_SELF_MAP_SLACK = 1e-9


class SearchError(RuntimeError):
    """A bracketed root search failed; carries the attempted bracket."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (attempted bracket {bracket})")
        self.bracket = bracket


@dataclass(frozen=True)
class MapSpec:
    """A one-dimensional map: family name, parameters, closed domain.

    Construction verifies by dense sampling that the map sends its domain
    into itself; a violation is a construction error.
    """

    family: str
    params: tuple[float, ...]
    domain: tuple[float, float]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        a, b = (float(self.domain[0]), float(self.domain[1]))
        if not a < b:
            raise ValueError("domain must be a non-degenerate closed interval [a, b]")
        object.__setattr__(self, "domain", (a, b))
        if self.family == "piecewise-linear":
            if len(self.params) < 4 or len(self.params) % 2:
                raise ValueError("piecewise-linear needs knots x0,y0,...,xk,yk (k >= 1)")
            xs = np.array(self.params[0::2])
            if np.any(np.diff(xs) <= 0):
                raise ValueError("piecewise-linear knot abscissae must increase")
        elif len(self.params) != 1:
            raise ValueError(f"{self.family} takes exactly one parameter")
        xs = np.linspace(a, b, _SELF_MAP_SAMPLES)
        ys = self.apply_array(xs)
        slack = _SELF_MAP_SLACK * (b - a)
        if ys.min() < a - slack or ys.max() > b + slack:
            raise ValueError(
                f"{self} does not map its domain into itself "
                f"(image sampled to [{ys.min():.6g}, {ys.max():.6g}])")

    def __str__(self) -> str:
        a, b = self.domain
        dom = f"domain=[{a:.15g},{b:.15g}]"
        if self.family == "logistic":
            return f"logistic r={self.params[0]:.15g} {dom}"
        if self.family == "tent":
            return f"tent s={self.params[0]:.15g} {dom}"
        if self.family == "quadratic":
            return f"quadratic c={self.params[0]:.15g} {dom}"
        knots = ",".join(f"{x:.15g}:{y:.15g}"
                         for x, y in zip(self.params[0::2], self.params[1::2]))
        return f"piecewise-linear knots={knots} {dom}"

    # -- evaluation ---------------------------------------------------------

    def apply(self, x: float) -> float:
        return float(self.apply_array(np.array([x]))[0])

    def apply_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        if self.family == "logistic":
            r = self.params[0]
            return r * xs * (1.0 - xs)
        if self.family == "tent":
            s = self.params[0]
            return s * np.minimum(xs, 1.0 - xs)
        if self.family == "quadratic":
            c = self.params[0]
            return xs * xs + c
        return np.interp(xs, self.params[0::2], self.params[1::2])

    def contains(self, x: float) -> bool:
        a, b = self.domain
        return a <= x <= b

    def orbit(self, x0: float, n: int) -> np.ndarray:
        """The first n+1 orbit points (x0, f x0, ..., f^n x0).

        Raises if x0 is outside the domain or if roundoff ever pushes an
        iterate out of it.
        """
        if n < 0:
            raise ValueError("orbit length must be non-negative")
        if not self.contains(x0):
            raise ValueError(f"start {x0} outside domain {self.domain}")
        out = [float(x0)]
        ap = out.append
        x = float(x0)
        if self.family == "logistic":
            r = self.params[0]
            for _ in range(n):
                x = r * x * (1.0 - x)
                ap(x)
        elif self.family == "tent":
            s = self.params[0]
            for _ in range(n):
                x = s * (x if x < 1.0 - x else 1.0 - x)
                ap(x)
        elif self.family == "quadratic":
            c = self.params[0]
            for _ in range(n):
                x = x * x + c
                ap(x)
        else:
            kx = np.array(self.params[0::2])
            ky = np.array(self.params[1::2])
            for _ in range(n):
                x = float(np.interp(x, kx, ky))
                ap(x)
        arr = np.array(out)
        a, b = self.domain
        slack = _SELF_MAP_SLACK * (b - a)
        if arr.min() < a - slack or arr.max() > b + slack:
            raise RuntimeError(f"orbit escaped the domain of {self}")
        return arr


def iterate(f: MapSpec, x: float, n: int) -> np.ndarray:
    """Orbit segment (x, f x, ..., f^n x); f^0 is the identity."""
    return f.orbit(x, n)


def parse_map(text: str) -> MapSpec:
    """Parse the textual form, e.g. "logistic r=3.5 domain=[0,1]"."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty map description")
    family = tokens[0]
    kv: dict[str, str] = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise ValueError(f"malformed token {tok!r}; expected key=value")
        key, val = tok.split("=", 1)
        kv[key] = val
    domain = None
    if "domain" in kv:
        raw = kv.pop("domain").strip("[]")
        lo, hi = raw.split(",")
        domain = (float(lo), float(hi))
    if family == "logistic":
        params = (float(kv.pop("r")),)
        domain = domain or (0.0, 1.0)
    elif family == "tent":
        params = (float(kv.pop("s")),)
        domain = domain or (0.0, 1.0)
    elif family == "quadratic":
        c = float(kv.pop("c"))
        params = (c,)
        if domain is None:
            if c > 0.25:
                raise ValueError("quadratic family needs c <= 1/4 or an explicit domain")
            beta = (1.0 + math.sqrt(1.0 - 4.0 * c)) / 2.0
            domain = (-beta, beta)
    elif family == "piecewise-linear":
        knots = kv.pop("knots")
        flat: list[float] = []
        for pair in knots.split(","):
            x, y = pair.split(":")
            flat += [float(x), float(y)]
        params = tuple(flat)
        domain = domain or (params[0], params[-2])
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if kv:
        raise ValueError(f"unrecognized map keys {sorted(kv)}")
    return MapSpec(family, params, domain)


# ---------------------------------------------------------------------------
# periodic points


@dataclass(frozen=True)
class PeriodicOrbitSet:
    """Periodic orbits located for one search period.

    Each orbit is (sorted points, primitive period); primitive periods
    divide the search period, and every reported point x satisfies
    |f^q(x) - x| < tolerance at its primitive period q.  Grid scanning only
    sees transversal sign changes, so tangential orbits may be missed:
    tangency_caveat says so.
    """

    orbits: tuple[tuple[tuple[float, ...], int], ...]
    search_period: int
    tolerance: float
    tangency_caveat: bool = True

    def primitive_periods(self) -> set[int]:
        return {p for _, p in self.orbits}

    def points(self) -> np.ndarray:
        return np.array(sorted(x for pts, _ in self.orbits for x in pts))

    def to_csv_rows(self) -> list[tuple[int, float, int]]:
        rows = []
        for oid, (pts, q) in enumerate(self.orbits):
            rows += [(oid, x, q) for x in pts]
        return rows


def _compose(f: MapSpec, xs: np.ndarray, p: int) -> np.ndarray:
    ys = xs
    for _ in range(p):
        ys = f.apply_array(ys)
    return ys


def _bisect_roots(f: MapSpec, p: int, lo: np.ndarray, hi: np.ndarray,
                  glo: np.ndarray, tol: float) -> np.ndarray:
    lo = lo.copy()
    hi = hi.copy()
    glo = glo.copy()
    for _ in range(80):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        gm = _compose(f, mid, p) - mid
        same = glo * gm > 0
        lo = np.where(same, mid, lo)
        glo = np.where(same, gm, glo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def periodic_points(f: MapSpec, p: int, grid: int = 2**14,
                    tol: float = 1e-12) -> PeriodicOrbitSet:
    """Solutions of f^p(x) = x by uniform grid scan plus bisection.

    Roots are deduplicated within 10*tol, grouped into orbits, and the
    primitive period of each orbit is determined by divisor checking.
    """
    if p < 1:
        raise ValueError("search period must be at least 1")
    if grid < 2:
        raise ValueError("grid must have at least 2 cells")
    a, b = f.domain
    xs = np.linspace(a, b, grid + 1)
    g = _compose(f, xs, p) - xs
    sign = np.sign(g)
    idx = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    roots = _bisect_roots(f, p, xs[idx], xs[idx + 1], g[idx], tol) if idx.size else np.empty(0)
    roots = np.sort(np.concatenate([roots, xs[g == 0.0]]))

    dedup: list[float] = []
    for x in roots:
        if not dedup or x - dedup[-1] > 10 * tol:
            dedup.append(float(x))

    # |f^q(x)-x| within match_tol identifies the primitive period; the slack
    # covers amplification of the root tolerance by the orbit derivative.
    match_tol = max(1e-7, 1e4 * tol)
    orbits: list[tuple[tuple[float, ...], int]] = []
    assigned = [False] * len(dedup)
    for i, x in enumerate(dedup):
        if assigned[i]:
            continue
        q = p
        for cand in sorted(d for d in range(1, p + 1) if p % d == 0):
            if abs(float(_compose(f, np.array([x]), cand)[0]) - x) < match_tol:
                q = cand
                break
        pts = [x]
        y = x
        for _ in range(q - 1):
            y = f.apply(y)
            pts.append(y)
        for j, other in enumerate(dedup):
            if not assigned[j] and any(abs(other - pt) <= match_tol for pt in pts):
                assigned[j] = True
        orbits.append((tuple(sorted(pts)), q))
    return PeriodicOrbitSet(tuple(orbits), search_period=p, tolerance=match_tol)


@dataclass(frozen=True)
class ScreenResult:
    """Outcome of the powers-of-2 period screen.

    positive-witness reports the smallest primitive period that is not a
    power of two, which certifies positive topological entropy.
    zero-candidate only says no such period was found up to p_max: it is
    evidence, never a proof, of zero entropy.
    """

    verdict: str
    witness_period: int | None
    periods_found: tuple[int, ...]
    p_max: int

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_period": self.witness_period,
            "periods_found": list(self.periods_found),
            "p_max": self.p_max,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ScreenResult":
        wp = d["witness_period"]
        return cls(str(d["verdict"]), None if wp is None else int(wp),
                   tuple(int(v) for v in d["periods_found"]), int(d["p_max"]))


def _is_power_of_two(q: int) -> bool:
    return q & (q - 1) == 0


def entropy_screen(f: MapSpec, p_max: int = 12, grid: int = 2**14,
                   tol: float = 1e-12) -> ScreenResult:
    """Scan all search periods up to p_max for a non-power-of-2 orbit."""
    if p_max < 3:
        raise ValueError("p_max must be at least 3")
    found: set[int] = set()
    for p in range(1, p_max + 1):
        found |= periodic_points(f, p, grid=grid, tol=tol).primitive_periods()
    bad = sorted(q for q in found if not _is_power_of_two(q))
    if bad:
        return ScreenResult("positive-witness", bad[0], tuple(sorted(found)), p_max)
    return ScreenResult("zero-candidate", None, tuple(sorted(found)), p_max)


# ---------------------------------------------------------------------------
# transition matrices


@dataclass(frozen=True)
class TransitionMatrix:
    """A d x d 0-1 matrix defining a subshift of finite type."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError("transition matrix must be square and non-empty")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("transition matrix entries must be 0 or 1")
        object.__setattr__(self, "entries", arr)

    @property
    def d(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_text(cls, text: str) -> "TransitionMatrix":
        rows = [r for r in text.replace(";", ",").split(",") if r.strip()]
        return cls(np.array([[int(ch) for ch in row.strip()] for row in rows]))

    def to_text(self) -> str:
        return ",".join("".join(str(int(v)) for v in row) for row in self.entries)


@dataclass(frozen=True)
class PerronResult:
    value: float
    irreducible: bool
    degenerate: bool = False

    def to_json_dict(self) -> dict:
        return {"value": self.value, "irreducible": self.irreducible,
                "degenerate": self.degenerate}

    @classmethod
    def from_json_dict(cls, d: dict) -> "PerronResult":
        return cls(float(d["value"]), bool(d["irreducible"]), bool(d["degenerate"]))


def _reachability(A: np.ndarray) -> np.ndarray:
    d = A.shape[0]
    R = (A > 0) | np.eye(d, dtype=bool)
    for _ in range(max(1, math.ceil(math.log2(d)) if d > 1 else 1)):
        R = R | (R @ R)
    return R


def _components(A: np.ndarray) -> list[np.ndarray]:
    R = _reachability(A)
    mutual = R & R.T
    seen = np.zeros(A.shape[0], dtype=bool)
    comps = []
    for i in range(A.shape[0]):
        if not seen[i]:
            members = np.flatnonzero(mutual[i])
            seen[members] = True
            comps.append(members)
    return comps


def _power_iteration_shifted(M: np.ndarray, tol: float) -> float:
    """Dominant eigenvalue of a nonnegative matrix via iteration on M + I.

    The identity shift makes an irreducible pattern primitive, so the
    iteration cannot cycle; the shift is subtracted back out exactly.
    """
    d = M.shape[0]
    B = M.astype(np.float64) + np.eye(d)
    v = np.ones(d) / d
    lam = 0.0
    for _ in range(100_000):
        w = B @ v
        s = w.sum()
        if s == 0.0:
            return -1.0  # unreachable for B = M + I, kept as a guard
        lam_new = s / v.sum()
        v = w / s
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            resid = np.abs(B @ v - lam_new * v).max()
            if resid <= 10 * tol * max(1.0, abs(lam_new)):
                return lam_new - 1.0
        lam = lam_new
    return lam - 1.0


def perron_eigenvalue(A: TransitionMatrix, tol: float = 1e-12) -> PerronResult:
    """Maximal nonnegative eigenvalue of a 0-1 matrix.

    Power iteration starts from the all-ones vector.  A reducible matrix is
    split into strongly connected components and the maximum over the
    component eigenvalues is returned.  A value above 1 signals positive
    entropy of the associated subshift.
    """
    M = A.entries
    comps = _components(M)
    irreducible = len(comps) == 1
    if not M.any():
        return PerronResult(0.0, irreducible=irreducible, degenerate=True)
    best = 0.0
    for members in comps:
        sub = M[np.ix_(members, members)]
        if len(members) == 1 and sub[0, 0] == 0:
            continue  # a transient single node contributes eigenvalue 0
        best = max(best, _power_iteration_shifted(sub, tol))
    return PerronResult(float(best), irreducible=irreducible)


# ---------------------------------------------------------------------------
# period-doubling cascade of the logistic family


_FEIGENBAUM_DELTA = 4.669201609  # seeds the bracket prediction only


def _critical_gap(r: float, k: int) -> float:
    x = 0.5
    for _ in range(2**k):
        x = r * x * (1.0 - x)
    return x - 0.5


def _bisect_scalar(fn, lo: float, hi: float, tol: float) -> float:
    glo = fn(lo)
    if glo == 0.0:
        return lo
    if glo * fn(hi) > 0:
        raise SearchError("no sign change in bracket", (lo, hi))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = fn(mid)
        if gm == 0.0:
            return mid
        if gm * glo > 0:
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def locate_cascade_parameter(k: int, tol: float = 1e-13) -> float:
    """Logistic parameter at which the critical orbit has period exactly 2^k.

    Solves f_r^{2^k}(1/2) = 1/2 working upward from k = 0, each time
    scanning just beyond the previous parameter so earlier solutions (which
    also solve the equation) are excluded.
    """
    if k < 0:
        raise ValueError("cascade index must be non-negative")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    s = [_bisect_scalar(lambda r: _critical_gap(r, 0), 1.5, 2.5, tol)]
    if k == 0:
        return s[0]
    for j in range(1, k + 1):
        if j == 1:
            a, b, step = 2.1, 3.45, 0.05
        else:
            gap = (s[-1] - s[-2]) / _FEIGENBAUM_DELTA
            a = s[-1] + 0.25 * gap
            b = s[-1] + 2.2 * gap
            step = gap / 8.0
        ga = _critical_gap(a, j)
        x = a
        bracket = None
        while x < b:
            xn = min(x + step, b)
            if ga == 0.0 or _critical_gap(xn, j) * ga <= 0:
                bracket = (x, xn)
                break
            x = xn
        if bracket is None:
            raise SearchError(f"no period-2^{j} parameter bracket found", (a, b))
        s.append(_bisect_scalar(lambda r: _critical_gap(r, j), *bracket, tol))
    return s[-1]


@dataclass(frozen=True)
class CascadeFit:
    """Superstable parameters with a geometric accumulation estimate."""

    superstable: tuple[float, ...]
    accumulation: float
    delta: float


def cascade_accumulation(k: int, tol: float = 1e-13) -> CascadeFit:
    """Extrapolate the cascade accumulation point from s_0..s_k.

    Successive parameter gaps shrink by an asymptotically constant factor;
    the tail is summed as a geometric series.
    """
    if k < 2:
        raise ValueError("extrapolation needs at least s_0..s_2")
    s = [locate_cascade_parameter(j, tol) for j in range(k + 1)]
    delta = (s[-2] - s[-3]) / (s[-1] - s[-2])
    acc = s[-1] + (s[-1] - s[-2]) / (delta - 1.0)
    return CascadeFit(tuple(s), float(acc), float(delta))
