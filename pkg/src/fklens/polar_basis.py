"""Mode/angular-momentum basis on the ring pixellation.

The radius/angular-momentum (RA) states couple two spin-j factors to total
spin rho; their overlap with the mode/angular-momentum (MA) states is a
Clebsch-Gordan coefficient dressed with a unimodular matching phase:

    <rho, m | n, m>  =  phase(j, rho, kappa, m) * C^{j, j, rho}_{(m+kappa)/2, (m-kappa)/2, m}

with kappa = n - 2j.  Passing from angular momenta to the 2 rho + 1
equidistant ring angles is a unitary Fourier step per ring, giving the
polar wavefunctions

    Psi°_{n,m}(rho, phi_k) = e^{i m phi_k} / sqrt(2 rho + 1) * <rho, m | n, m>.

States of angular momentum m vanish on rings rho < |m| (coupling selection
rule), and Psi°_{n,-m} = conj(Psi°_{n,m}), so the basis meshes with the
conjugation symmetry of the square-grid Lambda functions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import specfun
from .errors import DomainError
from .grids import GridSpec, enumerate_ma_rhombus, enumerate_polar, ma_row_width
from .halfint import HalfInt, HalfIntLike, index_int, twice

_TABLE_CACHE: dict[tuple, "PolarBasisTable"] = {}
_CACHE_LOCK = threading.Lock()


@dataclass(frozen=True)
class PolarBasisTable:
    """Dense table: rows = polar points, columns = MA labels (rhombus order)."""

    spec: GridSpec
    values: np.ndarray   # N^2 x N^2 complex

    def column(self, index: int) -> np.ndarray:
        return self.values[:, index]


def ra_ma_overlap(spec: GridSpec, rho: int, kappa: HalfIntLike,
                  m: HalfIntLike) -> complex:
    """Overlap of the RA state (rho, m) with the MA state (n = kappa + 2j, m).

    Zero (not an error) when |m| > rho; DomainError for structurally
    invalid inputs.
    """
    tj = spec.two_j
    rho = index_int(rho, "rho")
    if not 0 <= rho <= tj:
        raise DomainError(f"rho = {rho} outside 0..2j = {tj}")
    tk = twice(kappa)
    tm = twice(m)
    tm1 = (tm + tk) // 2   # twice((m + kappa)/2)
    tm2 = (tm - tk) // 2
    if ((tm + tk) % 2 or abs(tm1) > tj or abs(tm2) > tj
            or (tj - tm1) % 2 or (tj - tm2) % 2):
        raise DomainError(
            f"(kappa, m) = ({HalfInt.of(kappa)}, {HalfInt.of(m)}) do not label "
            f"a spin-{spec.j} x spin-{spec.j} product state")
    if abs(tm) > 2 * rho:
        return 0.0
    cg = specfun.clebsch_gordan(HalfInt(tj), HalfInt(tm1), HalfInt(tj),
                                HalfInt(tm2), HalfInt(2 * rho), HalfInt(tm))
    return specfun.ra_ma_phase(HalfInt(tj), rho, HalfInt(tk), HalfInt(tm)) * cg


def psi_circ(spec: GridSpec, n: int, m: int, rho: int, k: int,
             ring_phases: Optional[Sequence[float]] = None) -> complex:
    """Polar oscillator wavefunction Psi°_{n,m}(rho, phi_k)."""
    mmax = ma_row_width(spec, n) - 1   # validates n
    if abs(m) > mmax or (m + mmax) % 2:
        raise DomainError(f"(n, m) = ({n}, {m}) outside the rhombus of {spec}")
    if abs(k) > rho:
        raise DomainError(f"|k| = {abs(k)} exceeds rho = {rho}")
    if ring_phases is not None and len(ring_phases) != spec.two_j + 1:
        raise DomainError(
            f"need {spec.two_j + 1} ring phases for {spec}, got {len(ring_phases)}")
    ov = ra_ma_overlap(spec, rho, n - spec.two_j, m)
    if ov == 0:
        return 0j
    psi = 0.0 if ring_phases is None else float(ring_phases[rho])
    phi_k = 2.0 * np.pi * k / (2 * rho + 1) + psi
    return np.exp(1j * m * phi_k) / np.sqrt(2 * rho + 1) * ov


def polar_table(spec: GridSpec,
                ring_phases: Optional[Sequence[float]] = None) -> PolarBasisTable:
    """All polar wavefunctions as columns; cached per (j, ring phases)."""
    key = (spec.two_j, None if ring_phases is None else tuple(float(p) for p in ring_phases))
    with _CACHE_LOCK:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit

    points = enumerate_polar(spec, ring_phases)
    rhombus = enumerate_ma_rhombus(spec)
    values = np.zeros((spec.npoints, spec.npoints), dtype=complex)
    phis = np.array([p.phi for p in points])
    rho_slices = [slice(rho * rho, (rho + 1) * (rho + 1))
                  for rho in range(spec.two_j + 1)]
    for col, (n, m) in enumerate(rhombus):
        kappa = n - spec.two_j
        for rho in range(abs(m), spec.two_j + 1):
            ov = ra_ma_overlap(spec, rho, kappa, m)
            if ov == 0:
                continue
            sl = rho_slices[rho]
            values[sl, col] = ov / np.sqrt(2 * rho + 1) * np.exp(1j * m * phis[sl])
    values.setflags(write=False)
    table = PolarBasisTable(spec, values)
    with _CACHE_LOCK:
        return _TABLE_CACHE.setdefault(key, table)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _TABLE_CACHE.clear()
