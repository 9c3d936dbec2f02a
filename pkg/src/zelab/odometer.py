"""Exact integer model of the binary odometer (adding machine).

Points of the one-sided binary sequence space are truncated to a fixed
depth D, where every statement about the +1-with-carry map becomes modular
arithmetic on values in [0, 2^D).  Bit order is least significant first:
the serialized string "i0 i1 ... i_{D-1}" starts with the bit that carries
first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_DEPTH = 32

_MAX_CENSUS = 10**8
_MAX_CENSUS_ORDER = 62  # census residues use int64 arithmetic


@dataclass(frozen=True)
class OdometerPoint:
    """A depth-D truncation of a binary sequence, stored as its value."""

    value: int
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if not 0 <= self.value < 2**self.depth:
            raise ValueError(f"value {self.value} outside [0, 2^{self.depth})")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> m) & 1 for m in range(self.depth))

    @classmethod
    def from_bits(cls, bits) -> "OdometerPoint":
        bits = list(bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be a non-empty 0/1 sequence")
        return cls(sum(b << m for m, b in enumerate(bits)), len(bits))

    @classmethod
    def from_string(cls, s: str) -> "OdometerPoint":
        return cls.from_bits(int(ch) for ch in s.strip())

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def prefix(self, n: int) -> "Cylinder":
        return Cylinder.from_point(self, n)


@dataclass(frozen=True)
class Cylinder:
    """The set of sequences sharing a fixed first-n-bits prefix."""

    prefix: tuple[int, ...]

    def __post_init__(self):
        if not self.prefix or any(b not in (0, 1) for b in self.prefix):
            raise ValueError("prefix must be a non-empty 0/1 tuple")
        object.__setattr__(self, "prefix", tuple(self.prefix))

    @property
    def order(self) -> int:
        return len(self.prefix)

    @property
    def value(self) -> int:
        return sum(b << m for m, b in enumerate(self.prefix))

    def measure(self) -> Fraction:
        return Fraction(1, 2**self.order)

    @classmethod
    def from_point(cls, w: OdometerPoint, n: int) -> "Cylinder":
        if not 1 <= n <= w.depth:
            raise ValueError(f"cylinder order {n} outside 1..{w.depth}")
        return cls(w.bits[:n])

    @classmethod
    def from_value(cls, value: int, order: int) -> "Cylinder":
        if order < 1 or not 0 <= value < 2**order:
            raise ValueError("cylinder value outside [0, 2^order)")
        return cls(tuple((value >> m) & 1 for m in range(order)))

    @classmethod
    def from_string(cls, s: str) -> "Cylinder":
        return cls(tuple(int(ch) for ch in s.strip()))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.prefix)


def add_k(w: OdometerPoint, k: int) -> OdometerPoint:
    """k-fold adding machine: the point with value (value(w) + k) mod 2^D.

    k = 1 is the +1-with-carry map; negative k gives its inverse iterates.
    Modular wrap is the defined semantics at finite depth, so any integer k
    is accepted and no error is possible.
    """
    return OdometerPoint((w.value + k) % 2**w.depth, w.depth)


def shift(w: OdometerPoint) -> OdometerPoint:
    """Drop the first bit (the depth shrinks by one)."""
    if w.depth < 2:
        raise ValueError("cannot shift a depth-1 point")
    return OdometerPoint(w.value >> 1, w.depth - 1)


def odometer_metric(w: OdometerPoint, wp: OdometerPoint) -> float:
    """d(w, w') = sum_n |i_{n-1} - i'_{n-1}| / 2^n, truncated at depth D.

    The truncation error relative to the infinite sum is at most 2^-D.
    """
    if w.depth != wp.depth:
        raise ValueError("points must share a depth")
    x = w.value ^ wp.value
    d = 0.0
    m = 1
    while x:
        if x & 1:
            d += 2.0**-m
        x >>= 1
        m += 1
    return d


def cylinder_census(w: OdometerPoint, n: int, N: int) -> dict[Cylinder, int]:
    """Visit counts of add^k(w), k = 1..N, per order-n cylinder.

    For N a multiple of 2^n every cylinder is hit exactly N / 2^n times.
    """
    if not 1 <= n <= w.depth:
        raise ValueError(f"cylinder order {n} outside 1..{w.depth}")
    if n > _MAX_CENSUS_ORDER:
        raise ValueError(f"census order {n} exceeds supported maximum {_MAX_CENSUS_ORDER}")
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > _MAX_CENSUS:
        raise ValueError(f"census size {N} exceeds supported maximum {_MAX_CENSUS}")
    M = 2**n
    base = w.value % M  # keeps the vectorized arithmetic inside int64
    residues = (base + np.arange(1, N + 1, dtype=np.int64)) % M
    counts = np.bincount(residues, minlength=M)
    return {Cylinder.from_value(j, n): int(counts[j]) for j in range(M)}


@dataclass(frozen=True)
class Progression:
    """The arithmetic progression of return times between two cylinders.

    k belongs to the progression iff k = offset (mod modulus); its natural
    density is exactly 1/modulus.
    """

    offset: int
    modulus: int
    density: Fraction

    def contains(self, k: int) -> bool:
        return k % self.modulus == self.offset

    def to_json_dict(self) -> dict:
        return {
            "offset": self.offset,
            "modulus": self.modulus,
            "density_num": self.density.numerator,
            "density_den": self.density.denominator,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Progression":
        return cls(int(d["offset"]), int(d["modulus"]),
                   Fraction(int(d["density_num"]), int(d["density_den"])))


def progression_density(w_target: Cylinder, w_source: Cylinder) -> Progression:
    """Times k with add^{-k}(target cylinder) = source cylinder.

    Both cylinders must have the same order n; the answer is the residue
    class k = value(target) - value(source) (mod 2^n), whose density is
    exactly 2^-n.
    """
    if w_target.order != w_source.order:
        raise ValueError("cylinders must have equal order")
    n = w_target.order
    M = 2**n
    return Progression(
        offset=(w_target.value - w_source.value) % M,
        modulus=M,
        density=Fraction(1, M),
    )
