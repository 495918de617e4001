"""Unitary map between the square and ring pixellations.

The two screens share one set of mode/angular-momentum labels, so the map
is the product of the two basis tables:

    U[(rho, phi_k), (q_x, q_y)] = sum_{n,m} Psi°_{n,m}(rho, phi_k) conj(Lambda_{n,m}(q_x, q_y))

i.e. U = polar-table @ (MA-table)^H, and the inverse map is V = U^H.
U is unitary (no information loss, unlike interpolation) and real, so real
images map to real images in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import cart_basis, polar_basis
from .errors import SpecMismatchError
from .fourier_group import Kernel
from .grids import GridSpec


@dataclass(frozen=True)
class CartImage:
    """Complex pixels on the square grid, canonical (q_x outer) order."""

    spec: GridSpec
    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.shape != (self.spec.npoints,):
            raise SpecMismatchError(
                f"{self.pixels.size} pixels do not fill {self.spec}")

    @staticmethod
    def from_array(spec: GridSpec, pixels) -> "CartImage":
        return CartImage(spec, np.asarray(pixels, dtype=complex).reshape(-1))

    def as_grid(self) -> np.ndarray:
        """N x N view: axis 0 = q_x ascending, axis 1 = q_y ascending."""
        return self.pixels.reshape(self.spec.N, self.spec.N)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.pixels))


@dataclass(frozen=True)
class PolarImage:
    """Complex pixels on the ring grid, canonical (rho, k) order."""

    spec: GridSpec
    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.shape != (self.spec.npoints,):
            raise SpecMismatchError(
                f"{self.pixels.size} pixels do not fill {self.spec}")

    @staticmethod
    def from_array(spec: GridSpec, pixels) -> "PolarImage":
        return PolarImage(spec, np.asarray(pixels, dtype=complex).reshape(-1))

    def ring(self, rho: int) -> np.ndarray:
        """Pixels of ring rho, k ascending."""
        return self.pixels[rho * rho:(rho + 1) * (rho + 1)]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.pixels))


def kernel_U(spec: GridSpec,
             ring_phases: Optional[Sequence[float]] = None) -> Kernel:
    """The square-to-ring map as a Kernel (polar rows x Cartesian columns)."""
    polar = polar_basis.polar_table(spec, ring_phases).values
    ma = cart_basis.ma_mode_table(spec).values
    values = polar @ ma.conj().T
    return Kernel.checked(spec, "polar", "map_U", (), np.ascontiguousarray(values))


def kernel_V(spec: GridSpec,
             ring_phases: Optional[Sequence[float]] = None) -> np.ndarray:
    """The ring-to-square map V = U^H (plain matrix; same information)."""
    return kernel_U(spec, ring_phases).values.conj().T.copy()


def cart_to_polar(img: CartImage, u: Optional[Kernel] = None) -> PolarImage:
    """Unitary transfer of a square-grid image onto the rings."""
    if u is None:
        u = kernel_U(img.spec)
    if u.spec != img.spec or u.kind != "map_U":
        raise SpecMismatchError(f"map kernel {u.kind}@{u.spec} does not fit image on {img.spec}")
    return PolarImage(img.spec, u.values @ img.pixels)


def polar_to_cart(img: PolarImage, u: Optional[Kernel] = None) -> CartImage:
    """Unitary transfer of a ring image onto the square grid (V = U^H)."""
    if u is None:
        u = kernel_U(img.spec)
    if u.spec != img.spec or u.kind != "map_U":
        raise SpecMismatchError(f"map kernel {u.kind}@{u.spec} does not fit image on {img.spec}")
    return CartImage(img.spec, u.values.conj().T @ img.pixels)
