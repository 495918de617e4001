"""Index spaces for the two pixellations and the mode rhombi.

A grid of size N = 2j + 1 carries N^2 points, arranged either as the
Cartesian square q_x, q_y in {-j..j} or as concentric rings (rho, k) with
rho in {0..2j} and k in {-rho..rho}; both counts are N^2.  Modes live on
rhombi: Cartesian labels (n_x, n_y) with n = n_x + n_y, and mode/angular-
momentum labels (n, m) with m stepping by 2 inside |m| <= min(n, 4j - n).

The enumeration orders defined here are canonical for the whole package:
every matrix is indexed by them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DomainError
from .halfint import HalfInt, HalfIntLike, twice


@dataclass(frozen=True)
class GridSpec:
    """Representation label j and the derived grid size N = 2j + 1."""

    two_j: int

    def __post_init__(self):
        if self.two_j < 0:
            raise DomainError(f"j must be >= 0, got {HalfInt(self.two_j)}")

    @staticmethod
    def of(j: HalfIntLike) -> "GridSpec":
        return GridSpec(twice(j))

    @staticmethod
    def for_size(n: int) -> "GridSpec":
        if n < 1:
            raise DomainError(f"grid side must be >= 1, got {n}")
        return GridSpec(n - 1)

    @property
    def j(self) -> HalfInt:
        return HalfInt(self.two_j)

    @property
    def N(self) -> int:
        return self.two_j + 1

    @property
    def npoints(self) -> int:
        return self.N * self.N

    def __str__(self) -> str:
        return f"GridSpec(j={self.j}, N={self.N})"


@dataclass(frozen=True)
class PolarPoint:
    """One sensor point on the ring pixellation: radius, angle index, angle."""

    rho: int
    k: int
    phi: float

    def __post_init__(self):
        if abs(self.k) > self.rho:
            raise DomainError(f"|k| = {abs(self.k)} exceeds rho = {self.rho}")


def _ring_phase(ring_phases: Optional[Sequence[float]], rho: int) -> float:
    if ring_phases is None:
        return 0.0
    return float(ring_phases[rho])


@lru_cache(maxsize=None)
def enumerate_cartesian(spec: GridSpec) -> tuple[tuple[HalfInt, HalfInt], ...]:
    """Positions (q_x, q_y), row-major with q_y fastest, both ascending."""
    qs = [HalfInt(2 * i - spec.two_j) for i in range(spec.N)]
    return tuple((qx, qy) for qx in qs for qy in qs)


def cartesian_index(spec: GridSpec, q_x: HalfIntLike, q_y: HalfIntLike) -> int:
    """Position of (q_x, q_y) in the canonical Cartesian enumeration."""
    ix = (twice(q_x) + spec.two_j) // 2
    iy = (twice(q_y) + spec.two_j) // 2
    if (twice(q_x) + spec.two_j) % 2 or not 0 <= ix < spec.N:
        raise DomainError(f"q_x = {HalfInt.of(q_x)} not on the grid {spec}")
    if (twice(q_y) + spec.two_j) % 2 or not 0 <= iy < spec.N:
        raise DomainError(f"q_y = {HalfInt.of(q_y)} not on the grid {spec}")
    return ix * spec.N + iy


def enumerate_polar(spec: GridSpec,
                    ring_phases: Optional[Sequence[float]] = None
                    ) -> tuple[PolarPoint, ...]:
    """Ring points ordered by rho ascending, then k ascending.

    phi = 2 pi k / (2 rho + 1) + psi_rho; the per-ring offsets psi_rho
    default to 0 (rings aligned at angle 0).
    """
    if ring_phases is not None and len(ring_phases) != spec.two_j + 1:
        raise DomainError(
            f"need {spec.two_j + 1} ring phases for {spec}, got {len(ring_phases)}")
    pts = []
    for rho in range(spec.two_j + 1):
        psi = _ring_phase(ring_phases, rho)
        for k in range(-rho, rho + 1):
            pts.append(PolarPoint(rho, k, 2.0 * math.pi * k / (2 * rho + 1) + psi))
    return tuple(pts)


def polar_index(spec: GridSpec, rho: int, k: int) -> int:
    """Position of (rho, k) in the canonical polar enumeration."""
    if not 0 <= rho <= spec.two_j:
        raise DomainError(f"rho = {rho} outside 0..2j = {spec.two_j}")
    if abs(k) > rho:
        raise DomainError(f"|k| = {abs(k)} exceeds rho = {rho}")
    return rho * rho + (k + rho)


def ma_row_width(spec: GridSpec, n: int) -> int:
    """Number of states in rhombus row n; its row spin is (width - 1) / 2."""
    if not 0 <= n <= 2 * spec.two_j:
        raise DomainError(f"total mode n = {n} outside 0..4j = {2 * spec.two_j}")
    return min(n, 2 * spec.two_j - n) + 1


@lru_cache(maxsize=None)
def enumerate_ma_rhombus(spec: GridSpec) -> tuple[tuple[int, int], ...]:
    """Mode/angular-momentum labels (n, m), n ascending then m ascending.

    Row n holds m in {-mmax, -mmax+2, ..., mmax} with
    mmax = min(n, 4j - n); n + m is even everywhere and the total count
    is N^2.
    """
    out = []
    for n in range(2 * spec.two_j + 1):
        mmax = min(n, 2 * spec.two_j - n)
        out.extend((n, m) for m in range(-mmax, mmax + 1, 2))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_cart_modes(spec: GridSpec) -> tuple[tuple[int, int], ...]:
    """Cartesian mode labels (n_x, n_y), n = n_x + n_y ascending then n_x ascending.

    Within row n, ascending n_x is ascending mu = (n_x - n_y)/2, so rows are
    contiguous mu-ordered blocks; fourier_group relies on this layout.
    """
    tj = spec.two_j
    out = []
    for n in range(2 * tj + 1):
        out.extend((nx, n - nx) for nx in range(max(0, n - tj), min(tj, n) + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def mode_row_spans(spec: GridSpec) -> tuple[tuple[int, int, int], ...]:
    """(offset, width, n) of each rhombus row inside the canonical mode order."""
    spans = []
    offset = 0
    for n in range(2 * spec.two_j + 1):
        width = ma_row_width(spec, n)
        spans.append((offset, width, n))
        offset += width
    return tuple(spans)


def ma_index(spec: GridSpec, n: int, m: int) -> int:
    """Position of (n, m) in the canonical rhombus enumeration."""
    width = ma_row_width(spec, n)
    mmax = width - 1
    if abs(m) > mmax or (m + mmax) % 2:
        raise DomainError(f"(n, m) = ({n}, {m}) outside the rhombus of {spec}")
    offset = mode_row_spans(spec)[n][0]
    return offset + (m + mmax) // 2
