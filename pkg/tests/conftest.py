"""Shared fixtures and independent test oracles.

The oracles here are deliberately built by different routes than the
package code they check: ladder-operator su(2) matrices and dense
product-space diagonalization, never the closed forms under test.
"""

from pathlib import Path

import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20110601)


def su2_ladder(two_j):
    """Standard-basis (Jz, J+, J-) from the ladder formula, m ascending."""
    n = two_j + 1
    ms = (2.0 * np.arange(n) - two_j) / 2.0
    jz = np.diag(ms)
    jp = np.zeros((n, n))
    for i in range(n - 1):
        jp[i + 1, i] = np.sqrt((two_j / 2.0 - ms[i]) * (two_j / 2.0 + ms[i] + 1.0))
    return jz, jp, jp.T


def cg_oracle_table(two_j1, two_j2):
    """All <j1 m1; j2 m2 | J M> by diagonalizing J^2 on the product space.

    Condon-Shortley fixing: the highest-M state of each J has a positive
    coefficient on the largest-m1 product state; lower M by applying J-.
    Returns {(tm1, tm2, tJ, tM): value}.
    """
    n1, n2 = two_j1 + 1, two_j2 + 1
    jz1, jp1, jm1 = su2_ladder(two_j1)
    jz2, jp2, jm2 = su2_ladder(two_j2)
    jz = np.kron(jz1, np.eye(n2)) + np.kron(np.eye(n1), jz2)
    jp = np.kron(jp1, np.eye(n2)) + np.kron(np.eye(n1), jp2)
    jm = jp.T
    j_sq = jm @ jp + jz @ (jz + np.eye(n1 * n2))
    m_diag = np.diag(jz)
    out = {}
    for two_J in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2):
        jv = two_J / 2.0
        idx = [i for i in range(n1 * n2) if abs(m_diag[i] - jv) < 1e-9]
        sub = j_sq[np.ix_(idx, idx)]
        w, v = np.linalg.eigh(sub)
        sel = int(np.argmin(np.abs(w - jv * (jv + 1.0))))
        vec = np.zeros(n1 * n2)
        for a, i in enumerate(idx):
            vec[i] = v[a, sel]
        # largest m1 present in the M = J subspace
        top_i = max(idx, key=lambda i: (2 * (i // n2) - two_j1))
        if vec[top_i] < 0:
            vec = -vec
        for two_M in range(two_J, -two_J - 1, -2):
            for i in np.nonzero(np.abs(vec) > 1e-13)[0]:
                tm1 = 2 * (i // n2) - two_j1
                tm2 = 2 * (i % n2) - two_j2
                out[(tm1, tm2, two_J, two_M)] = vec[i]
            if two_M > -two_J:
                vec = jm @ vec
                vec /= np.linalg.norm(vec)
    return out


def pseudo_energy_matrix(two_j):
    """The tridiagonal pseudo-energy matrix, position basis ascending q.

    Written out directly from its displayed entries; the authoritative
    anchor for the Kravchuk sign convention.
    """
    n = two_j + 1
    k = np.zeros((n, n))
    jv = two_j / 2.0
    for i in range(n - 1):
        m = i - jv
        c = 0.5 * np.sqrt((jv - m) * (jv + m + 1.0))
        k[i, i + 1] = c
        k[i + 1, i] = c
    return k


def expm_hermitian(h, t):
    """Independent exp(-i t H) via numpy eigh (test-local copy)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def point_reflection_permutation(n):
    """Permutation matrix sending pixel (q_x, q_y) to (-q_x, -q_y)."""
    p = np.zeros((n * n, n * n))
    for ix in range(n):
        for iy in range(n):
            p[(n - 1 - ix) * n + (n - 1 - iy), ix * n + iy] = 1.0
    return p
