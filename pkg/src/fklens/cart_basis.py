"""Mode bases on the square grid.

Two orthonormal bases of the N^2-pixel space, stored as dense tables with
rows in canonical position order and columns in canonical mode order:

* separable oscillator modes  Psi_{n_x,n_y}(q_x, q_y) = Psi_{n_x}(q_x) Psi_{n_y}(q_y),
* mode/angular-momentum modes Lambda_{n,m}, the discrete analogue of the
  Laguerre-Gauss functions, obtained from the separable modes by a unitary
  per-row recombination

      Lambda_{n,m} = sum_mu  e^{-i pi iota_n / 2} e^{i pi mu / 2}
                     d^{iota_n}_{m/2, mu}(pi/2)  Psi_{n_x,n_y},

  with row spin iota_n = min(n, 4j - n)/2 and mu = (n_x - n_y)/2.  On the
  lower rhombus rows the combined phase is (-i)^{n_y}.  The row-constant
  factor e^{-i pi iota_n / 2} makes the conjugation symmetry exact:
  Lambda_{n,-m} = conj(Lambda_{n,m}), which in turn keeps the square-to-
  polar map real-to-real.  With these phases each Lambda_{n,m} is an
  eigenvector of the imported angular momentum with eigenvalue m.

Tables are built once per grid and cached in memory; they are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError
from .grids import GridSpec, enumerate_cart_modes, ma_index, mode_row_spans
from .halfint import HalfInt, HalfIntLike, index_int, twice

_TABLE_CACHE: dict = {}      # (two_j, kind) -> BasisTable | 1D ndarray
_CACHE_LOCK = threading.Lock()


@dataclass(frozen=True)
class BasisTable:
    """Dense basis table: rows = grid points, columns = mode labels."""

    spec: GridSpec
    kind: str               # "cart" | "ma"
    values: np.ndarray      # N^2 x N^2, float64 for "cart", complex128 for "ma"

    def column(self, index: int) -> np.ndarray:
        return self.values[:, index]


def kravchuk_table(spec: GridSpec) -> np.ndarray:
    """1D table Psi_n(q), rows q ascending, columns n; cached."""
    key = (spec.two_j, "kravchuk")
    with _CACHE_LOCK:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    table = specfun.kravchuk_matrix(spec.j)
    table.setflags(write=False)
    with _CACHE_LOCK:
        return _TABLE_CACHE.setdefault(key, table)


def psi_square(spec: GridSpec, n_x: int, n_y: int,
               q_x: HalfIntLike, q_y: HalfIntLike) -> float:
    """Separable mode value Psi_{n_x}(q_x) * Psi_{n_y}(q_y)."""
    tj = spec.two_j
    n_x = index_int(n_x, "n_x")
    n_y = index_int(n_y, "n_y")
    for name, n in (("n_x", n_x), ("n_y", n_y)):
        if not 0 <= n <= tj:
            raise DomainError(f"{name} = {n} outside 0..2j = {tj}")
    table = kravchuk_table(spec)
    ix = (twice(q_x) + tj) // 2
    iy = (twice(q_y) + tj) // 2
    if (twice(q_x) + tj) % 2 or not 0 <= ix < spec.N:
        raise DomainError(f"q_x = {HalfInt.of(q_x)} not on the grid {spec}")
    if (twice(q_y) + tj) % 2 or not 0 <= iy < spec.N:
        raise DomainError(f"q_y = {HalfInt.of(q_y)} not on the grid {spec}")
    return float(table[ix, n_x] * table[iy, n_y])


def cart_mode_table(spec: GridSpec) -> BasisTable:
    """All separable modes as columns, canonical orders both ways; cached."""
    key = (spec.two_j, "cart")
    with _CACHE_LOCK:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    t1 = kravchuk_table(spec)
    values = np.empty((spec.npoints, spec.npoints))
    for col, (nx, ny) in enumerate(enumerate_cart_modes(spec)):
        values[:, col] = np.kron(t1[:, nx], t1[:, ny])
    values.setflags(write=False)
    table = BasisTable(spec, "cart", values)
    with _CACHE_LOCK:
        return _TABLE_CACHE.setdefault(key, table)


def ma_coupling_blocks(spec: GridSpec) -> tuple[np.ndarray, ...]:
    """Per-row unitaries W_n mapping MA labels onto separable modes.

    Column (n, m) of the MA table is cart_mode_table @ blockdiag(W_n);
    W_n[mu-index, m-index] = e^{-i pi iota/2} e^{i pi mu/2} d^{iota}_{m/2,mu}(pi/2).
    """
    blocks = []
    for offset, width, n in mode_row_spans(spec):
        two_iota = width - 1
        d_half = specfun.little_d_matrix(HalfInt(two_iota), 0.5 * np.pi)
        phases = np.array([specfun.eighth_root(2 * a - two_iota - two_iota)
                           for a in range(width)])
        blocks.append(phases[:, None] * d_half.T)
    return tuple(blocks)


def ma_mode_table(spec: GridSpec) -> BasisTable:
    """Mode/angular-momentum basis table, columns in rhombus order; cached."""
    key = (spec.two_j, "ma")
    with _CACHE_LOCK:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    cart = cart_mode_table(spec).values
    values = np.empty((spec.npoints, spec.npoints), dtype=complex)
    for (offset, width, n), block in zip(mode_row_spans(spec), ma_coupling_blocks(spec)):
        values[:, offset:offset + width] = cart[:, offset:offset + width] @ block
    values.setflags(write=False)
    table = BasisTable(spec, "ma", values)
    with _CACHE_LOCK:
        return _TABLE_CACHE.setdefault(key, table)


def lambda_square(spec: GridSpec, n: int, m: int,
                  q_x: HalfIntLike, q_y: HalfIntLike) -> complex:
    """Mode/angular-momentum wavefunction Lambda_{n,m}(q_x, q_y)."""
    col = ma_index(spec, n, m)   # validates (n, m) against the rhombus
    tj = spec.two_j
    ix = (twice(q_x) + tj) // 2
    iy = (twice(q_y) + tj) // 2
    if (twice(q_x) + tj) % 2 or not 0 <= ix < spec.N:
        raise DomainError(f"q_x = {HalfInt.of(q_x)} not on the grid {spec}")
    if (twice(q_y) + tj) % 2 or not 0 <= iy < spec.N:
        raise DomainError(f"q_y = {HalfInt.of(q_y)} not on the grid {spec}")
    return complex(ma_mode_table(spec).values[ix * spec.N + iy, col])


def clear_cache() -> None:
    """Drop all cached tables (memory management for large sweeps)."""
    with _CACHE_LOCK:
        _TABLE_CACHE.clear()
