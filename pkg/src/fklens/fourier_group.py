"""The four-parameter unitary group on pixellated images.

Every element acts on the N^2-pixel space through a dense unitary kernel.
On the square grid the kernels are assembled as

    basis-table @ (block middle factor on mode labels) @ basis-table^T,

where the middle factor is block-diagonal over total mode n; rhombus row n
carries the spin iota_n = min(n, 4j - n)/2 irreducible action on its
in-row label mu = (n_x - n_y)/2.

Angle bookkeeping (public API -> middle factor on row n):

    rotation        R(theta):  d^{iota_n}(2 theta)                   [real]
    anisotropic FT  A(phi):    diag exp(-2 i phi (n_x - n_y))
    isotropic FT    K(omega):  diag exp(-2 i omega (n_x + n_y))
    gyration        G(psi):    e^{-i pi mu/2} d^{iota_n}(2 psi) e^{+i pi mu'/2}
                               == A(pi/8) R(psi) A(pi/8)^{-1}
    full element    D(omega; phi, theta, psi) = K(omega/2) A(phi/4) R(theta/2) A(psi/4)
                    -> exp(-i omega n) e^{-i mu phi} d^{iota_n}(theta) e^{-i mu' psi}

The rotation angle is the geometric one: R(2 pi l / (2 rho + 1)) shifts
ring rho by l pixels, R(pi) is the point reflection, R(2 pi) = 1.  The
composition of two parameter sets is computed from 2 x 2 matrices; see
compose_params.

On the ring pixellation, rotation is block-diagonal with circulant Dirichlet
blocks, and the general element is the conjugation of the square-grid kernel
by the inter-grid map (fklens.gridmap).
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import cart_basis, specfun
from .errors import DomainError, UnitarityError
from .grids import GridSpec, enumerate_cart_modes, mode_row_spans
from .halfint import HalfInt

#: Build-time unitarity gate; a violation is a bug, not noise.
UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class EulerParams:
    """Euler parameters (omega; phi, theta, psi) of a group element."""

    omega: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        for name in ("omega", "phi", "theta", "psi"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.omega, self.phi, self.theta, self.psi)


@dataclass(frozen=True)
class Kernel:
    """A dense unitary operator on one pixellation.

    Row/column ordering is the canonical grid enumeration (Cartesian or
    polar).  Unitarity is checked at construction and failure aborts.
    """

    spec: GridSpec
    grid: str                    # "cartesian" | "polar"
    kind: str                    # cache kind tag
    params: tuple[float, ...]
    values: np.ndarray

    @staticmethod
    def checked(spec: GridSpec, grid: str, kind: str,
                params: tuple[float, ...], values: np.ndarray) -> "Kernel":
        defect = unitarity_defect(values)
        if defect >= UNITARITY_TOL:
            raise UnitarityError(
                f"{kind} kernel on {spec} failed the unitarity gate: "
                f"max|K^H K - 1| = {defect:.3e} >= {UNITARITY_TOL:.0e}")
        values.setflags(write=False)
        return Kernel(spec, grid, kind, params, values)

    def apply(self, pixels: np.ndarray) -> np.ndarray:
        """Matrix-vector product on a canonical-order pixel vector."""
        pixels = np.asarray(pixels)
        if pixels.shape != (self.spec.npoints,):
            raise DomainError(
                f"pixel vector of length {pixels.size} does not fit {self.spec}")
        return self.values @ pixels


def unitarity_defect(matrix: np.ndarray) -> float:
    gram = matrix.conj().T @ matrix
    gram[np.diag_indices_from(gram)] -= 1.0
    return float(np.abs(gram).max())


def _identity_kernel(spec: GridSpec, grid: str, kind: str,
                     params: tuple[float, ...]) -> Kernel:
    values = np.eye(spec.npoints, dtype=complex)
    values.setflags(write=False)
    return Kernel(spec, grid, kind, params, values)


def _mode_phase_diagonal(spec: GridSpec, coeff: complex) -> np.ndarray:
    """diag(exp(coeff * (n_x - n_y))) over canonical mode order, coeff imaginary."""
    diff = np.array([nx - ny for nx, ny in enumerate_cart_modes(spec)])
    return np.exp(coeff * diff)


def _assemble_cart(spec: GridSpec, middle: np.ndarray, kind: str,
                   params: tuple[float, ...]) -> Kernel:
    table = cart_basis.cart_mode_table(spec).values
    values = (table @ middle) @ table.T
    return Kernel.checked(spec, "cartesian", kind, params, np.ascontiguousarray(values))


def _rotation_blocks(spec: GridSpec, angle: float) -> np.ndarray:
    """Block-diagonal d^{iota_n}(angle) over the canonical mode order."""
    out = np.zeros((spec.npoints, spec.npoints))
    for offset, width, _n in mode_row_spans(spec):
        out[offset:offset + width, offset:offset + width] = \
            specfun.little_d_matrix(HalfInt(width - 1), angle)
    return out


def kernel_rotation_cart(spec: GridSpec, theta: float) -> Kernel:
    """Rotation by the geometric angle theta on the square grid; real kernel."""
    theta = float(theta)
    if theta == 0.0:
        return _identity_kernel(spec, "cartesian", "rot_cart", (theta,))
    middle = _rotation_blocks(spec, 2.0 * theta)
    return _assemble_cart(spec, middle, "rot_cart", (theta,))


def kernel_aniso(spec: GridSpec, phi: float) -> Kernel:
    """Anisotropic fractional Fourier transform; mode phases e^{-2 i phi (n_x-n_y)}."""
    phi = float(phi)
    if phi == 0.0:
        return _identity_kernel(spec, "cartesian", "aniso", (phi,))
    middle = np.diag(_mode_phase_diagonal(spec, -2.0j * phi))
    return _assemble_cart(spec, middle, "aniso", (phi,))


def kernel_isotropic(spec: GridSpec, omega: float) -> Kernel:
    """Isotropic fractional Fourier transform; mode phases e^{-2 i omega (n_x+n_y)}."""
    omega = float(omega)
    if omega == 0.0:
        return _identity_kernel(spec, "cartesian", "iso", (omega,))
    n_tot = np.array([nx + ny for nx, ny in enumerate_cart_modes(spec)])
    middle = np.diag(np.exp(-2.0j * omega * n_tot))
    return _assemble_cart(spec, middle, "iso", (omega,))


def _gyration_middle(spec: GridSpec, psi: float) -> np.ndarray:
    """e^{-i pi mu/2} d^{iota_n}(2 psi) e^{+i pi mu'/2} blocks on mode labels."""
    middle = _rotation_blocks(spec, 2.0 * psi).astype(complex)
    # mu in quarter-turn units: e^{-+i pi mu / 2} = eighth_root(-+ 2 mu) = i^{-+mu}
    twists = np.array([specfun.eighth_root(-(nx - ny))
                       for nx, ny in enumerate_cart_modes(spec)])
    return twists[:, None] * middle * twists.conj()[None, :]


def kernel_gyration(spec: GridSpec, psi: float) -> Kernel:
    """Gyration: the rotation subgroup conjugated a quarter turn toward the
    anisotropic axis; G(pi/4) exchanges separable and angular-momentum modes."""
    psi = float(psi)
    if psi == 0.0:
        return _identity_kernel(spec, "cartesian", "gyration", (psi,))
    return _assemble_cart(spec, _gyration_middle(spec, psi), "gyration", (psi,))


def _u2_middle(spec: GridSpec, p: EulerParams) -> np.ndarray:
    """exp(-i omega n) e^{-i mu phi} d^{iota_n}(theta) e^{-i mu' psi} blocks."""
    middle = _rotation_blocks(spec, p.theta).astype(complex)
    half_diff = np.array([0.5 * (nx - ny) for nx, ny in enumerate_cart_modes(spec)])
    n_tot = np.array([nx + ny for nx, ny in enumerate_cart_modes(spec)])
    left = np.exp(-1j * (p.omega * n_tot + p.phi * half_diff))
    right = np.exp(-1j * p.psi * half_diff)
    return left[:, None] * middle * right[None, :]


def kernel_u2_cart(spec: GridSpec, p: EulerParams, debug_check: bool = False) -> Kernel:
    """General group element on the square grid.

    Equal to the factorized product
    K(omega/2) A(phi/4) R(theta/2) A(psi/4); built in one pass from the
    Big-D structure of its mode-basis blocks.  With debug_check (or env
    FKLENS_DEBUG_CHECKS) the factorized product is built too and compared.
    """
    if p.as_tuple() == (0.0, 0.0, 0.0, 0.0):
        return _identity_kernel(spec, "cartesian", "u2_cart", p.as_tuple())
    kernel = _assemble_cart(spec, _u2_middle(spec, p), "u2_cart", p.as_tuple())
    if debug_check or os.environ.get("FKLENS_DEBUG_CHECKS"):
        product = (kernel_isotropic(spec, 0.5 * p.omega).values
                   @ kernel_aniso(spec, 0.25 * p.phi).values
                   @ kernel_rotation_cart(spec, 0.5 * p.theta).values
                   @ kernel_aniso(spec, 0.25 * p.psi).values)
        defect = float(np.abs(kernel.values - product).max())
        if defect >= 1e-9:
            raise UnitarityError(
                f"u2_cart factorization cross-check failed: max diff {defect:.3e}")
    return kernel


def kernel_rotation_polar(spec: GridSpec, theta: float) -> Kernel:
    """Rotation on the ring pixellation: circulant Dirichlet blocks per ring.

    At theta = 2 pi l / (2 rho + 1), ring rho is shifted cyclically by l
    pixels.  The removable singularity of
    sin((rho + 1/2) Delta) / [(2 rho + 1) sin(Delta/2)] evaluates to 1.
    """
    theta = float(theta)
    if theta == 0.0:
        return _identity_kernel(spec, "polar", "rot_polar", (theta,))
    values = np.zeros((spec.npoints, spec.npoints), dtype=complex)
    for rho in range(spec.two_j + 1):
        size = 2 * rho + 1
        offset = rho * rho
        ks = np.arange(-rho, rho + 1)
        delta = theta - 2.0 * np.pi * (ks[:, None] - ks[None, :]) / size
        half_sin = np.sin(0.5 * delta)
        singular = np.abs(half_sin) < 1e-9 * (rho + 0.5)
        safe = np.where(singular, 1.0, half_sin)
        block = np.where(singular, 1.0,
                         np.sin((rho + 0.5) * delta) / (size * safe))
        values[offset:offset + size, offset:offset + size] = block
    return Kernel.checked(spec, "polar", "rot_polar", (theta,), values)


def kernel_u2_polar(spec: GridSpec, p: EulerParams,
                    ring_phases: Optional[Sequence[float]] = None) -> Kernel:
    """General group element on the ring pixellation: U D(p) U^H."""
    from . import gridmap  # deferred: gridmap consumes this module's Kernel type
    u = gridmap.kernel_U(spec, ring_phases).values
    cart = kernel_u2_cart(spec, p).values
    values = (u @ cart) @ u.conj().T
    return Kernel.checked(spec, "polar", "u2_polar", p.as_tuple(), values)


def compose_params(p1: EulerParams, p2: EulerParams) -> EulerParams:
    """Parameters of the product element D(p1) D(p2).

    The SU(2) part composes by 2 x 2 matrix multiplication of
    u(p) = e^{-i phi sigma_3/2} e^{-i theta sigma_2/2} e^{-i psi sigma_3/2};
    the central phase omega is additive.
    """
    u = _su2_of(p1) @ _su2_of(p2)
    phi, theta, psi = _euler_of(u)
    return EulerParams(p1.omega + p2.omega, phi, theta, psi)


def _su2_of(p: EulerParams) -> np.ndarray:
    a = cmath.exp(-0.5j * (p.phi + p.psi)) * math.cos(0.5 * p.theta)
    b = -cmath.exp(-0.5j * (p.phi - p.psi)) * math.sin(0.5 * p.theta)
    return np.array([[a, b], [-b.conjugate(), a.conjugate()]])


def _euler_of(u: np.ndarray) -> tuple[float, float, float]:
    """zyz Euler angles of an SU(2) matrix, branch with theta in [0, pi]."""
    a, b = u[0, 0], u[0, 1]
    theta = 2.0 * math.atan2(abs(b), abs(a))
    if abs(b) < 1e-14:               # pure z rotation
        return (-2.0 * cmath.phase(a), 0.0, 0.0)
    if abs(a) < 1e-14:               # theta = pi
        return (-2.0 * cmath.phase(-b), theta, 0.0)
    phi = -(cmath.phase(a) + cmath.phase(-b))
    psi = -(cmath.phase(a) - cmath.phase(-b))
    return (phi, theta, psi)
