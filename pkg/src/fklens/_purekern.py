"""Pure-Python hot kernels.

Reference implementations of the two inner loops that dominate kernel
construction: dense rotation-coefficient matrices and vector-coupling
coefficients.  fklens._fastkern is the compiled twin with the same
signatures; _backend picks one at import time.

All angular-momentum arguments are *twice* their value, as exact ints.
Inputs are assumed pre-validated (fklens.specfun owns the checking).
Factorial products are evaluated in the log domain with explicit sign
tracking, which keeps j <= 64 inside double precision.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"

# Largest factorial needed: (j1 + j2 + J + 1)! at j = 64 -> 257!, and
# (2*iota)! for row spins up to 2j = 128 -> 256!.  1024 leaves headroom.
_LOGFACT = np.zeros(1025)
_LOGFACT[1:] = np.cumsum(np.log(np.arange(1.0, 1025.0)))


def _lf(n: int) -> float:
    return _LOGFACT[n]


def little_d_matrix(two_j: int, beta: float) -> np.ndarray:
    """Dense rotation matrix d^j(beta), rows/cols ascending m = -j..j.

    Trigonometric-polynomial sum; exact Kronecker delta at beta = 0.
    """
    n = two_j + 1
    out = np.zeros((n, n))
    cb = math.cos(0.5 * beta)
    sb = math.sin(0.5 * beta)
    log_cb = math.log(abs(cb)) if cb != 0.0 else 0.0
    log_sb = math.log(abs(sb)) if sb != 0.0 else 0.0
    for i1 in range(n):
        tm1 = 2 * i1 - two_j
        for i2 in range(n):
            tm2 = 2 * i2 - two_j
            a = (two_j + tm1) // 2   # j + m1
            b = (two_j - tm1) // 2   # j - m1
            c = (two_j + tm2) // 2   # j + m2
            d = (two_j - tm2) // 2   # j - m2
            pref = 0.5 * (_lf(a) + _lf(b) + _lf(c) + _lf(d))
            kmin = max(0, (tm2 - tm1) // 2)
            kmax = min(b, c)
            total = 0.0
            for k in range(kmin, kmax + 1):
                p_cos = c + b - 2 * k            # 2j + m2 - m1 - 2k
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
            out[i1, i2] = total
    return out


def cg_racah_exact(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> float:
    """Coupling coefficient with the alternating sum done in exact rationals.

    The log-domain route loses ~1e-12 absolute accuracy once the factorial
    arguments reach ~65 and ~1e-9 near the j = 64 regime; here the k-sum is
    an exact Fraction (terms updated incrementally, as is customary for
    rational CG evaluation), so the only rounding is the final square root.
    Slower; meant for the large couplings, where tables are built once.
    """
    if tm1 + tm2 != tm:
        return 0.0
    from fractions import Fraction
    from math import factorial, sqrt
    a1 = (tj1 + tj2 - tj) // 2
    a2 = (tj1 - tj2 + tj) // 2
    a3 = (-tj1 + tj2 + tj) // 2
    a4 = (tj1 + tj2 + tj) // 2 + 1
    b1 = (tj1 + tm1) // 2
    b2 = (tj1 - tm1) // 2
    b3 = (tj2 + tm2) // 2
    b4 = (tj2 - tm2) // 2
    b5 = (tj + tm) // 2
    b6 = (tj - tm) // 2
    c1 = (tj - tj2 + tm1) // 2
    c2 = (tj - tj1 - tm2) // 2
    kmin = max(0, -c1, -c2)
    kmax = min(a1, b2, b3)
    if kmin > kmax:
        return 0.0
    term = Fraction((-1) ** kmin,
                    factorial(kmin) * factorial(a1 - kmin) * factorial(b2 - kmin)
                    * factorial(b3 - kmin) * factorial(c1 + kmin) * factorial(c2 + kmin))
    total = term
    for k in range(kmin, kmax):
        term *= Fraction(-(a1 - k) * (b2 - k) * (b3 - k),
                         (k + 1) * (c1 + k + 1) * (c2 + k + 1))
        total += term
    if total == 0:
        return 0.0
    square = (Fraction((tj + 1) * factorial(a1) * factorial(a2) * factorial(a3),
                       factorial(a4))
              * factorial(b1) * factorial(b2) * factorial(b3)
              * factorial(b4) * factorial(b5) * factorial(b6)
              * total * total)
    value = sqrt(float(square))
    return value if total > 0 else -value


def cg_racah(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> float:
    """Condon-Shortley vector-coupling coefficient, Racah single sum.

    Selection rule m != m1 + m2 returns 0; triangle and range checks are
    the caller's job.
    """
    if tm1 + tm2 != tm:
        return 0.0
    # all of these are integers >= 0 for valid couplings
    a1 = (tj1 + tj2 - tj) // 2
    a2 = (tj1 - tj2 + tj) // 2
    a3 = (-tj1 + tj2 + tj) // 2
    a4 = (tj1 + tj2 + tj) // 2 + 1
    b1 = (tj1 + tm1) // 2
    b2 = (tj1 - tm1) // 2
    b3 = (tj2 + tm2) // 2
    b4 = (tj2 - tm2) // 2
    b5 = (tj + tm) // 2
    b6 = (tj - tm) // 2
    pref = 0.5 * (math.log(tj + 1.0) + _lf(a1) + _lf(a2) + _lf(a3) - _lf(a4)
                  + _lf(b1) + _lf(b2) + _lf(b3) + _lf(b4) + _lf(b5) + _lf(b6))
    # k-sum limits from non-negative factorial arguments
    c1 = (tj - tj2 + tm1) // 2   # J - j2 + m1
    c2 = (tj - tj1 - tm2) // 2   # J - j1 - m2
    kmin = max(0, -c1, -c2)
    kmax = min(a1, b2, b3)
    total = 0.0
    for k in range(kmin, kmax + 1):
        log_mag = pref - (_lf(k) + _lf(a1 - k) + _lf(b2 - k) + _lf(b3 - k)
                          + _lf(c1 + k) + _lf(c2 + k))
        term = math.exp(log_mag)
        total += -term if k % 2 else term
    return total
