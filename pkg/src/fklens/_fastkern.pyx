# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: same contracts as fklens._purekern."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, log, sin

cnp.import_array()

BACKEND_NAME = "compiled"

cdef double[::1] _LOGFACT = np.concatenate(
    ([0.0], np.cumsum(np.log(np.arange(1.0, 1025.0)))))


def little_d_matrix(int two_j, double beta):
    """Dense d^j(beta), rows/cols ascending m = -j..j."""
    cdef int n = two_j + 1
    out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef double cb = cos(0.5 * beta)
    cdef double sb = sin(0.5 * beta)
    cdef double log_cb = log(fabs(cb)) if cb != 0.0 else 0.0
    cdef double log_sb = log(fabs(sb)) if sb != 0.0 else 0.0
    cdef int i1, i2, tm1, tm2, a, b, c, d, k, kmin, kmax, p_cos, p_sin, half_diff
    cdef double pref, total, sign, log_mag
    for i1 in range(n):
        tm1 = 2 * i1 - two_j
        for i2 in range(n):
            tm2 = 2 * i2 - two_j
            a = (two_j + tm1) >> 1
            b = (two_j - tm1) >> 1
            c = (two_j + tm2) >> 1
            d = (two_j - tm2) >> 1
            pref = 0.5 * (_LOGFACT[a] + _LOGFACT[b] + _LOGFACT[c] + _LOGFACT[d])
            half_diff = (tm1 - tm2) >> 1
            kmin = -half_diff if half_diff < 0 else 0
            kmax = b if b < c else c
            total = 0.0
            for k in range(kmin, kmax + 1):
                p_cos = c + b - 2 * k
                p_sin = half_diff + 2 * k
                if cb == 0.0 and p_cos > 0:
                    continue
                if sb == 0.0 and p_sin > 0:
                    continue
                log_mag = (pref - _LOGFACT[k] - _LOGFACT[c - k]
                           - _LOGFACT[half_diff + k] - _LOGFACT[b - k]
                           + p_cos * log_cb + p_sin * log_sb)
                sign = -1.0 if (half_diff + k) & 1 else 1.0
                if cb < 0.0 and (p_cos & 1):
                    sign = -sign
                if sb < 0.0 and (p_sin & 1):
                    sign = -sign
                total += sign * exp(log_mag)
            out[i1, i2] = total
    return out_arr


def cg_racah(int tj1, int tm1, int tj2, int tm2, int tj, int tm):
    """Condon-Shortley coupling coefficient, Racah single sum."""
    if tm1 + tm2 != tm:
        return 0.0
    cdef int a1 = (tj1 + tj2 - tj) >> 1
    cdef int a2 = (tj1 - tj2 + tj) >> 1
    cdef int a3 = (-tj1 + tj2 + tj) >> 1
    cdef int a4 = ((tj1 + tj2 + tj) >> 1) + 1
    cdef int b1 = (tj1 + tm1) >> 1
    cdef int b2 = (tj1 - tm1) >> 1
    cdef int b3 = (tj2 + tm2) >> 1
    cdef int b4 = (tj2 - tm2) >> 1
    cdef int b5 = (tj + tm) >> 1
    cdef int b6 = (tj - tm) >> 1
    cdef double pref = 0.5 * (log(tj + 1.0)
                              + _LOGFACT[a1] + _LOGFACT[a2] + _LOGFACT[a3] - _LOGFACT[a4]
                              + _LOGFACT[b1] + _LOGFACT[b2] + _LOGFACT[b3]
                              + _LOGFACT[b4] + _LOGFACT[b5] + _LOGFACT[b6])
    cdef int c1 = (tj - tj2 + tm1) >> 1
    cdef int c2 = (tj - tj1 - tm2) >> 1
    cdef int kmin = 0
    if -c1 > kmin:
        kmin = -c1
    if -c2 > kmin:
        kmin = -c2
    cdef int kmax = a1
    if b2 < kmax:
        kmax = b2
    if b3 < kmax:
        kmax = b3
    cdef double total = 0.0
    cdef double term
    cdef int k
    for k in range(kmin, kmax + 1):
        term = exp(pref - (_LOGFACT[k] + _LOGFACT[a1 - k] + _LOGFACT[b2 - k]
                           + _LOGFACT[b3 - k] + _LOGFACT[c1 + k] + _LOGFACT[c2 + k]))
        total += -term if (k & 1) else term
    return total
