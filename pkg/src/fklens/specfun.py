"""Closed-form special functions.

Rotation coefficients (little-d and Big-D), symmetric Kravchuk functions,
Clebsch-Gordan coefficients, and the radius/angular-momentum matching phase.
Everything here is a pure function of its arguments.

Conventions
-----------
* little-d follows the standard trigonometric-polynomial sum with
  Condon-Shortley phases; d^j(0) is the exact identity and
  d^j_{m1,m2}(beta) = (-1)^(m1-m2) d^j_{m2,m1}(beta) = d^j_{-m2,-m1}(beta).
* The Kravchuk function is defined by the eigenvalue problem of the
  pseudo-energy matrix: K Psi_n = (n - j) Psi_n with Psi_n(-j) > 0 and unit
  norm.  In little-d terms this fixes

      Psi_n(q) = d^j_{q, n-j}(pi/2),

  i.e. the *first* index is the position.  (The transposed identification,
  which matches the binomial closed form with its (-1)^n prefactor, is an
  eigenvector of -K instead; eigenvalue relations are convention-free, so
  they win.  The two differ by the per-entry sign (-1)^(q+j-n).)
* Clebsch-Gordan coefficients are standard Condon-Shortley, evaluated by
  the Racah single-sum formula in the log domain and validated against a
  dense product-space diagonalization (see fklens.oracle and the tests).

Double precision is exhausted by factorial ratios beyond j = 64 (N = 129);
larger representations raise PrecisionError rather than degrade.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import _backend, _purekern
from .errors import DomainError, PrecisionError
from .halfint import HalfInt, HalfIntLike, index_int, twice

#: Largest supported representation label (j = 64, N = 129).
MAX_TWO_J = 128

#: Largest 2j evaluated by the direct trigonometric sum.  The alternating
#: sum cancels catastrophically as j grows (defect ~2e-13 at 2j = 20,
#: ~2e-11 at 2j = 32); above the threshold, matrices come from the spectral
#: route, which stays at machine precision through 2j = 128.
SUM_MAX_TWO_J = 20

#: Largest 2(j1 + j2 + J) handled by the fast log-domain coupling sum;
#: keeps the per-coefficient error under ~1e-13.  Bigger couplings use the
#: exact-rational route (slow, but tables at such sizes are built once).
CG_SUM_MAX = 96

_SQRT1_2 = math.sqrt(0.5)
#: Exact eighth roots of unity: _EIGHTH[k] = exp(i pi k / 4).
_EIGHTH = (
    1.0 + 0.0j,
    _SQRT1_2 + _SQRT1_2 * 1j,
    1j,
    -_SQRT1_2 + _SQRT1_2 * 1j,
    -1.0 + 0.0j,
    -_SQRT1_2 - _SQRT1_2 * 1j,
    -1j,
    _SQRT1_2 - _SQRT1_2 * 1j,
)


def _check_j(two_j: int, what: str = "j") -> None:
    if two_j < 0:
        raise DomainError(f"{what} must be >= 0, got {HalfInt(two_j)}")
    if two_j > MAX_TWO_J:
        raise PrecisionError(
            f"{what} = {HalfInt(two_j)} exceeds the double-precision regime "
            f"(max {HalfInt(MAX_TWO_J)})")


def _check_projection(two_j: int, two_m: int, what: str) -> None:
    if abs(two_m) > two_j:
        raise DomainError(f"|{what}| = {HalfInt(abs(two_m))} exceeds j = {HalfInt(two_j)}")
    if (two_j - two_m) % 2:
        raise DomainError(
            f"{what} = {HalfInt(two_m)} is not a valid projection for j = {HalfInt(two_j)}")


_LOGFACT = np.zeros(1025)
_LOGFACT[1:] = np.cumsum(np.log(np.arange(1.0, 1025.0)))


def _lf(n: int) -> float:
    return float(_LOGFACT[n])


def eighth_root(k: int) -> complex:
    """exp(i pi k / 4) exactly, for integer k."""
    return _EIGHTH[k % 8]


def wigner_little_d(j: HalfIntLike, m1: HalfIntLike, m2: HalfIntLike,
                    beta: float) -> float:
    """Rotation matrix element d^j_{m1,m2}(beta).

    Finite sum over k in [max(0, m2-m1), min(j-m1, j+m2)], log-domain
    factorials.  Raises DomainError for out-of-range projections; invalid
    indices are never silently zero.
    """
    tj = twice(j)
    tm1 = twice(m1)
    tm2 = twice(m2)
    _check_j(tj)
    _check_projection(tj, tm1, "m1")
    _check_projection(tj, tm2, "m2")
    beta = float(beta)
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta!r}")
    if beta == 0.0:
        return 1.0 if tm1 == tm2 else 0.0
    if tj > SUM_MAX_TWO_J:
        d = little_d_matrix(HalfInt(tj), beta)
        return float(d[(tj + tm1) // 2, (tj + tm2) // 2])

    cb = math.cos(0.5 * beta)
    sb = math.sin(0.5 * beta)
    a = (tj + tm1) // 2
    b = (tj - tm1) // 2
    c = (tj + tm2) // 2
    d = (tj - tm2) // 2
    pref = 0.5 * (_lf(a) + _lf(b) + _lf(c) + _lf(d))
    kmin = max(0, (tm2 - tm1) // 2)
    kmax = min(b, c)
    log_cb = math.log(abs(cb)) if cb != 0.0 else 0.0
    log_sb = math.log(abs(sb)) if sb != 0.0 else 0.0
    total = 0.0
    for k in range(kmin, kmax + 1):
        p_cos = c + b - 2 * k
        p_sin = (tm1 - tm2) // 2 + 2 * k
        if cb == 0.0 and p_cos > 0:
            continue
        if sb == 0.0 and p_sin > 0:
            continue
        log_mag = (pref - _lf(k) - _lf(c - k) - _lf((tm1 - tm2) // 2 + k)
                   - _lf(b - k) + p_cos * log_cb + p_sin * log_sb)
        sign = 1.0 if ((tm1 - tm2) // 2 + k) % 2 == 0 else -1.0
        if cb < 0.0 and p_cos % 2:
            sign = -sign
        if sb < 0.0 and p_sin % 2:
            sign = -sign
        total += sign * math.exp(log_mag)
    return total


def _spectral_d(tj: int, beta: float) -> np.ndarray:
    """d^j(beta) as the exponential of its tridiagonal generator.

    Free of the alternating-sum cancellation; accurate to ~1e-15 at any
    supported j.  The generator is the imaginary antisymmetric ladder
    matrix G with <m|G|m+1> = (i/2) sqrt((j-m)(j+m+1)).
    """
    n = tj + 1
    jv = 0.5 * tj
    ms = 0.5 * (2.0 * np.arange(n - 1) - tj)
    couplings = 0.5 * np.sqrt((jv - ms) * (jv + ms + 1.0))
    gen = np.zeros((n, n), dtype=complex)
    gen[np.arange(n - 1), np.arange(1, n)] = 1j * couplings
    gen[np.arange(1, n), np.arange(n - 1)] = -1j * couplings
    w, v = np.linalg.eigh(gen)
    return np.ascontiguousarray(((v * np.exp(-1j * beta * w)) @ v.conj().T).real)


def little_d_matrix(j: HalfIntLike, beta: float) -> np.ndarray:
    """Dense d^j(beta), rows/cols ascending m = -j..j.

    Exact identity at beta = 0; direct sum (backend-accelerated) up to
    2j = SUM_MAX_TWO_J, spectral construction beyond.
    """
    tj = twice(j)
    _check_j(tj)
    beta = float(beta)
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta!r}")
    if beta == 0.0:
        return np.eye(tj + 1)
    if tj > SUM_MAX_TWO_J:
        return _spectral_d(tj, beta)
    return _backend.little_d_matrix(tj, beta)


def wigner_big_D(iota: HalfIntLike, mu: HalfIntLike, mu2: HalfIntLike,
                 omega: float, phi: float, theta: float, psi: float) -> complex:
    """Big-D element: e^{-i iota omega} e^{-i mu phi} d^iota_{mu,mu2}(theta) e^{-i mu2 psi}."""
    ti = twice(iota)
    tmu = twice(mu)
    tmu2 = twice(mu2)
    _check_j(ti, "iota")
    _check_projection(ti, tmu, "mu")
    _check_projection(ti, tmu2, "mu'")
    d = wigner_little_d(HalfInt(ti), HalfInt(tmu), HalfInt(tmu2), theta)
    phase = cmath.exp(-0.5j * (ti * omega + tmu * phi + tmu2 * psi))
    return phase * d


def kravchuk_psi(j: HalfIntLike, n: int, q: HalfIntLike) -> float:
    """Finite oscillator wavefunction Psi_n(q) = d^j_{q, n-j}(pi/2).

    Orthonormal over q in {-j..j}; eigenvector of the pseudo-energy matrix
    with eigenvalue n - j; positive at q = -j.
    """
    tj = twice(j)
    _check_j(tj)
    n = index_int(n, "mode n")
    if not 0 <= n <= tj:
        raise DomainError(f"mode n = {n} outside 0..2j = {tj}")
    tq = twice(q)
    _check_projection(tj, tq, "q")
    return wigner_little_d(HalfInt(tj), HalfInt(tq), HalfInt(2 * n - tj), 0.5 * math.pi)


def kravchuk_matrix(j: HalfIntLike) -> np.ndarray:
    """N x N table Psi_n(q): rows q ascending, columns n = 0..2j.

    This is exactly d^j(pi/2) with columns read as kappa = n - j.
    """
    return little_d_matrix(j, 0.5 * math.pi)


def clebsch_gordan(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike,
                   m2: HalfIntLike, J: HalfIntLike, M: HalfIntLike) -> float:
    """Condon-Shortley coefficient <j1 m1; j2 m2 | J M>.

    Returns 0.0 for the in-range selection-rule violation M != m1 + m2;
    raises DomainError for triangle or projection-range violations.
    """
    tj1, tm1 = twice(j1), twice(m1)
    tj2, tm2 = twice(j2), twice(m2)
    tJ, tM = twice(J), twice(M)
    _check_j(tj1, "j1")
    _check_j(tj2, "j2")
    _check_j(tJ, "J")
    _check_projection(tj1, tm1, "m1")
    _check_projection(tj2, tm2, "m2")
    _check_projection(tJ, tM, "M")
    if not abs(tj1 - tj2) <= tJ <= tj1 + tj2:
        raise DomainError(
            f"triangle violation: |j1-j2| <= J <= j1+j2 fails for "
            f"({HalfInt(tj1)}, {HalfInt(tj2)}, {HalfInt(tJ)})")
    if (tj1 + tj2 + tJ) % 2:
        raise DomainError(
            f"j1 + j2 + J = {HalfInt(tj1 + tj2 + tJ)} is not an integer")
    if tm1 + tm2 != tM:
        return 0.0
    if tj1 + tj2 + tJ > CG_SUM_MAX:
        return _purekern.cg_racah_exact(tj1, tm1, tj2, tm2, tJ, tM)
    return _backend.cg_racah(tj1, tm1, tj2, tm2, tJ, tM)


def ra_ma_phase(j: HalfIntLike, rho: int, kappa: HalfIntLike,
                m: HalfIntLike) -> complex:
    """Unimodular matching phase (-1)^(j+rho) exp[i pi (kappa + |m| - m)/2].

    Exact eighth-root-of-unity arithmetic; no trigonometric rounding.
    """
    tj = twice(j)
    _check_j(tj)
    rho = index_int(rho, "rho")
    if not 0 <= rho <= tj:
        raise DomainError(f"rho = {rho} outside 0..2j = {tj}")
    tk = twice(kappa)
    tm = twice(m)
    if abs(tm) > 2 * rho:
        raise DomainError(f"|m| = {HalfInt(abs(tm))} exceeds rho = {rho}")
    # in units of pi/4: pi(j+rho) -> 2*tj + 4*rho; (pi/2)(kappa+|m|-m) -> tk + |tm| - tm
    e = 2 * (tj + 2 * rho) + tk + abs(tm) - tm
    return eighth_root(e)
