"""Nested interval towers for maps in the period-doubling regime.

A tower holds, for each level n, the 2^n closed intervals obtained by
clustering a long post-transient orbit by time index mod 2^n.  Residue
clustering makes the cyclic action and the two-children nesting automatic;
pairwise disjointness is the property that can genuinely fail, and failing
levels truncate the tower.

Interval k at level n carries the binary word of k, least significant bit
first, so the induced symbol dynamics is the +1-with-carry map on words.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .mapengine import MapSpec, parse_map

DEFAULT_MARGIN = 1e-12
MIN_POINTS_PER_CELL = 64


class NotAttractedError(RuntimeError):
    """An orbit never entered the tower within the allowed horizon."""


def label_word(k: int, n: int) -> str:
    """Binary word of k, least significant bit first, padded to n bits."""
    if not 0 <= k < 2**n:
        raise ValueError(f"index {k} outside [0, 2^{n})")
    return "".join(str((k >> m) & 1) for m in range(n))


def label_value(word: str) -> int:
    """Inverse of label_word."""
    if not word or any(ch not in "01" for ch in word):
        raise ValueError("label word must be a non-empty 0/1 string")
    return sum(int(ch) << m for m, ch in enumerate(word))


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi] with its position index in a level."""

    k: int
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def label(self, n: int) -> str:
        return label_word(self.k, n)

    def contains(self, x: float, margin: float = 0.0) -> bool:
        return self.lo - margin <= x <= self.hi + margin


@dataclass(frozen=True)
class Truncation:
    """Why construction stopped: the first failing level and its overlap."""

    level: int
    pair: tuple[int, int]
    overlap: float

    def to_json_dict(self) -> dict:
        return {"level": self.level, "pair": list(self.pair), "overlap": self.overlap}


@dataclass
class Tower:
    map_spec: MapSpec
    base_point: float
    burn_in: int
    orbit_length: int
    requested_depth: int
    margin: float
    levels: list[tuple[Interval, ...]]
    truncation: Truncation | None
    orbit: np.ndarray  # post-transient orbit; not serialized

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> tuple[Interval, ...]:
        if not 1 <= n <= self.depth:
            raise ValueError(f"level {n} outside 1..{self.depth}")
        return self.levels[n - 1]

    def cluster_points(self, n: int, k: int) -> np.ndarray:
        """Orbit points that built interval k of level n."""
        if not 0 <= k < 2**n:
            raise ValueError(f"index {k} outside [0, 2^{n})")
        self.level(n)
        return self.orbit[k :: 2**n]

    def level_sample(self, n: int, per_cell: int = 4) -> np.ndarray:
        """Up to per_cell orbit points from every interval of level n."""
        return np.concatenate(
            [self.cluster_points(n, k)[:per_cell] for k in range(2**n)])

    def locate(self, x: float, n: int | None = None) -> int:
        """Index of the level-n interval containing x (inflated), or -1."""
        n = self.depth if n is None else n
        ivs = self.level(n)
        order = sorted(range(len(ivs)), key=lambda i: ivs[i].lo)
        for i in order:
            if ivs[i].contains(x, self.margin):
                return ivs[i].k
        return -1

    def locate_many(self, xs: np.ndarray, n: int | None = None) -> np.ndarray:
        """Vectorized locate over the (disjoint) intervals of level n."""
        n = self.depth if n is None else n
        ivs = sorted(self.level(n), key=lambda iv: iv.lo)
        los = np.array([iv.lo for iv in ivs]) - self.margin
        his = np.array([iv.hi for iv in ivs]) + self.margin
        ks = np.array([iv.k for iv in ivs])
        xs = np.asarray(xs)
        pos = np.searchsorted(los, xs, side="right") - 1
        ok = pos >= 0
        inside = np.where(ok, xs <= his[np.clip(pos, 0, len(ivs) - 1)], False)
        return np.where(inside, ks[np.clip(pos, 0, len(ivs) - 1)], -1)

    def to_json_dict(self) -> dict:
        return {
            "map": str(self.map_spec),
            "base_point": self.base_point,
            "burn_in": self.burn_in,
            "orbit_length": self.orbit_length,
            "requested_depth": self.requested_depth,
            "depth": self.depth,
            "margin": self.margin,
            "truncation": None if self.truncation is None else self.truncation.to_json_dict(),
            "levels": [
                {"n": n, "intervals": [
                    {"k": iv.k, "label": iv.label(n), "lo": iv.lo, "hi": iv.hi}
                    for iv in level]}
                for n, level in enumerate(self.levels, start=1)
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Tower":
        levels = [
            tuple(Interval(int(iv["k"]), float(iv["lo"]), float(iv["hi"]))
                  for iv in lvl["intervals"])
            for lvl in d["levels"]
        ]
        trunc = d.get("truncation")
        return cls(
            map_spec=parse_map(d["map"]),
            base_point=float(d["base_point"]),
            burn_in=int(d["burn_in"]),
            orbit_length=int(d["orbit_length"]),
            requested_depth=int(d["requested_depth"]),
            margin=float(d["margin"]),
            levels=levels,
            truncation=None if trunc is None else Truncation(
                int(trunc["level"]), tuple(trunc["pair"]), float(trunc["overlap"])),
            orbit=np.empty(0),
        )

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["level", "k", "lo", "hi"])
            for n, level in enumerate(self.levels, start=1):
                for iv in level:
                    w.writerow([n, iv.k, f"{iv.lo:.15g}", f"{iv.hi:.15g}"])


def _disjointness_failure(ivs: list[Interval], margin: float):
    """First overlapping pair of inflated intervals, or None."""
    order = sorted(ivs, key=lambda iv: iv.lo)
    for prev, nxt in zip(order, order[1:]):
        gap = nxt.lo - prev.hi - 2.0 * margin
        if gap <= 0.0:
            return (prev.k, nxt.k), -gap
    return None


def build_tower(f: MapSpec, x0: float, n_max: int, burn_in: int = 10_000,
                orbit_length: int | None = None,
                margin: float = DEFAULT_MARGIN) -> Tower:
    """Cluster a long orbit by time residue into candidate tower levels.

    The orbit after burn-in approximates the omega-limit set of x0.  Level n
    intervals are the closed hulls of the residue-mod-2^n clusters; levels
    whose inflated hulls overlap truncate the tower there, and the failure
    is recorded on the result rather than raised.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if orbit_length is None:
        orbit_length = 2**n_max * 1024
    if orbit_length < 2**n_max * MIN_POINTS_PER_CELL:
        raise ValueError(
            f"orbit_length {orbit_length} below 2^{n_max} * {MIN_POINTS_PER_CELL}")
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    full = f.orbit(x0, burn_in + orbit_length)
    orb = full[burn_in + 1 :]
    levels: list[tuple[Interval, ...]] = []
    truncation = None
    for n in range(1, n_max + 1):
        M = 2**n
        ivs = [Interval(k, float(orb[k::M].min()), float(orb[k::M].max()))
               for k in range(M)]
        failure = _disjointness_failure(ivs, margin)
        if failure is not None:
            pair, overlap = failure
            truncation = Truncation(level=n, pair=pair, overlap=float(overlap))
            break
        levels.append(tuple(ivs))
    return Tower(
        map_spec=f, base_point=float(x0), burn_in=burn_in,
        orbit_length=orbit_length, requested_depth=n_max, margin=margin,
        levels=levels, truncation=truncation, orbit=orb,
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class LevelCheck:
    level: int
    disjoint: bool
    min_gap: float
    cyclic: bool
    worst_image_margin: float
    nested: bool
    worst_nesting_margin: float

    @property
    def passed(self) -> bool:
        return self.disjoint and self.cyclic and self.nested

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "disjoint": self.disjoint,
            "min_gap": self.min_gap,
            "cyclic": self.cyclic,
            "worst_image_margin": self.worst_image_margin,
            "nested": self.nested,
            "worst_nesting_margin": self.worst_nesting_margin,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class TowerReport:
    levels: tuple[LevelCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(lc.passed for lc in self.levels)

    def to_json_dict(self) -> dict:
        return {"levels": [lc.to_json_dict() for lc in self.levels],
                "pass": self.all_passed}

    @classmethod
    def from_json_dict(cls, d: dict) -> "TowerReport":
        return cls(tuple(
            LevelCheck(int(l["level"]), bool(l["disjoint"]), float(l["min_gap"]),
                       bool(l["cyclic"]), float(l["worst_image_margin"]),
                       bool(l["nested"]), float(l["worst_nesting_margin"]))
            for l in d["levels"]))


def verify_tower(T: Tower, samples_per_interval: int = 8) -> TowerReport:
    """Check disjointness, cyclic image containment, and child nesting.

    Failures are report content, never exceptions.  The disjointness margin
    is the worst raw gap after discounting the inflation applied during
    construction; image membership is tested on sample points spread across
    each interval, against the inflated successor interval.
    """
    if T.depth < 1:
        raise ValueError("tower has no valid levels to verify")
    if samples_per_interval < 2:
        raise ValueError("need at least 2 samples per interval")
    f = T.map_spec
    checks = []
    for n in range(1, T.depth + 1):
        level = T.level(n)
        M = 2**n
        order = sorted(level, key=lambda iv: iv.lo)
        min_gap = min(nxt.lo - prev.hi - 2.0 * T.margin
                      for prev, nxt in zip(order, order[1:]))
        worst_img = np.inf
        for iv in level:
            xs = np.linspace(iv.lo, iv.hi, samples_per_interval)
            ys = f.apply_array(xs)
            tgt = level[(iv.k + 1) % M]
            inside = np.minimum(ys - (tgt.lo - T.margin), (tgt.hi + T.margin) - ys)
            worst_img = min(worst_img, float(inside.min()))
        if n < T.depth:
            child = T.level(n + 1)
            worst_nest = min(
                min(child[c].lo - iv.lo, iv.hi - child[c].hi)
                for iv in level for c in (iv.k, iv.k + M))
            nested = worst_nest >= -2.0 * T.margin
        else:
            worst_nest = 0.0
            nested = True
        checks.append(LevelCheck(
            level=n,
            disjoint=min_gap > 0.0,
            min_gap=float(min_gap),
            cyclic=worst_img >= 0.0,
            worst_image_margin=float(worst_img),
            nested=nested,
            worst_nesting_margin=float(worst_nest),
        ))
    return TowerReport(tuple(checks))


def tau(T: Tower, n: int) -> float:
    """Maximum interval width at level n."""
    return max(iv.width for iv in T.level(n))


# ---------------------------------------------------------------------------
# itineraries


@dataclass(frozen=True)
class Itinerary:
    """Deepest-level symbol sequence of an orbit, with its coding defect.

    labels[t] is the index of the deepest-level interval containing the
    t-th orbit point, or -1 when the point is outside the tower.
    conjugacy_defect is the fraction of consecutive in-tower steps whose
    label does not advance by +1 mod 2^depth; zero means the observed
    coding intertwines the map with the adding machine.
    """

    labels: np.ndarray
    depth: int
    entry_time: int
    transitions: int
    mismatches: int
    conjugacy_defect: float

    def words(self) -> list[str]:
        return [label_word(int(k), self.depth) if k >= 0 else "outside"
                for k in self.labels]

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "entry_time": self.entry_time,
            "transitions": self.transitions,
            "mismatches": self.mismatches,
            "conjugacy_defect": self.conjugacy_defect,
            "labels": [int(k) for k in self.labels],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Itinerary":
        return cls(np.array(d["labels"], dtype=np.int64), int(d["depth"]),
                   int(d["entry_time"]), int(d["transitions"]),
                   int(d["mismatches"]), float(d["conjugacy_defect"]))


def itinerary(T: Tower, x: float, N: int) -> Itinerary:
    """Track which deepest-level interval holds f^t(x) for t = 0..N."""
    if T.depth < 1:
        raise ValueError("tower has no valid levels")
    if N < 1:
        raise ValueError("horizon must be at least 1")
    orb = T.map_spec.orbit(x, N)
    labels = T.locate_many(orb)
    inside = labels >= 0
    if not inside.any():
        raise NotAttractedError(
            f"orbit of {x} never entered the depth-{T.depth} tower within {N} steps")
    entry = int(np.argmax(inside))
    both = inside[:-1] & inside[1:]
    M = 2**T.depth
    mism = both & (labels[1:] != (labels[:-1] + 1) % M)
    transitions = int(both.sum())
    mismatches = int(mism.sum())
    defect = mismatches / transitions if transitions else 0.0
    return Itinerary(
        labels=labels, depth=T.depth, entry_time=entry,
        transitions=transitions, mismatches=mismatches,
        conjugacy_defect=float(defect),
    )
