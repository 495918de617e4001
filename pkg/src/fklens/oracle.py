"""Brute-force ground truth for the analytic formulas.

Explicit generator matrices and numerical matrix exponentials validate
every closed form on small grids: the spin-j triple (Q, P, K), the six
so(4) generators in both physical assignments, the radius Casimir, and
the imported angular momentum whose exponential must reproduce the
rotation kernel.  Shipped as a library feature (not test-only code) so
`fklens verify` can run end-to-end on a user's installation.

Convention anchor: diagonalizing the pseudo-energy matrix K reproduces
the Kravchuk table column by column, with signs fixed by Psi_n(-j) > 0.
That eigenvalue test is what nails the little-d index convention used
everywhere else.

Cost is O(N^6) in dense algebra; the verification driver is capped at
N <= 16 by default.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cart_basis, fourier_group, gridmap, polar_basis, specfun
from .errors import DomainError
from .grids import GridSpec, enumerate_ma_rhombus, mode_row_spans
from .halfint import HalfInt, HalfIntLike, twice

#: verify() refuses larger grids unless explicitly overridden.
DEFAULT_MAX_N = 16


@dataclass(frozen=True)
class GeneratorMatrix:
    """A named Hermitian generator on one of the model's spaces."""

    name: str
    space: str        # "1d-position" | "2d-position" | "2d-mode"
    two_j: int
    values: np.ndarray

    def __post_init__(self):
        defect = float(np.abs(self.values - self.values.conj().T).max())
        if defect > 1e-13:
            raise DomainError(f"{self.name} is not Hermitian (defect {defect:.2e})")
        self.values.setflags(write=False)

    @property
    def matrix(self) -> np.ndarray:
        return self.values


def build_su2_matrices(j: HalfIntLike) -> tuple[GeneratorMatrix, GeneratorMatrix, GeneratorMatrix]:
    """Position, momentum and pseudo-energy matrices of the spin-j model.

    Position is diagonal with spectrum {-j..j}; K and P are the tridiagonal
    ladder forms; [K, Q] = -iP, [K, P] = iQ, [Q, P] = -iK.  The sign of P
    is the one demanded by those commutators (and by the so(4) pattern
    rule); it is the negative of the other published orientation.
    """
    tj = twice(j)
    if tj < 1:
        raise DomainError(f"need j >= 1/2, got {HalfInt(tj)}")
    n = tj + 1
    ms = (2.0 * np.arange(n) - tj) / 2.0
    q = np.diag(ms).astype(complex)
    k = np.zeros((n, n), dtype=complex)
    p = np.zeros((n, n), dtype=complex)
    jv = tj / 2.0
    for i in range(n - 1):
        m = ms[i]
        c = 0.5 * np.sqrt((jv - m) * (jv + m + 1.0))
        k[i, i + 1] = c
        k[i + 1, i] = c
        p[i, i + 1] = 1j * c
        p[i + 1, i] = -1j * c
    return (GeneratorMatrix("Q", "1d-position", tj, q),
            GeneratorMatrix("P", "1d-position", tj, p),
            GeneratorMatrix("K", "1d-position", tj, k))


def build_so4_generators(spec: GridSpec) -> dict[str, GeneratorMatrix]:
    """All six so(4) generators on the 2D position space, in both assignments.

    Returns the tensor-product copies (Q_x, P_x, K_x, ...), the abstract
    J_{i,i'} of the direct-sum pattern, the ring-chain combinations
    (Q°x, Q°y, M_circ, ...) and the radius Casimir R(R+1).  The abstract
    J_{3,4} equals K_x - K_y; it is *not* the imported angular momentum,
    which has no domestic expression (see build_imported_M).
    """
    q1, p1, k1 = (g.matrix for g in build_su2_matrices(HalfInt(spec.two_j)))
    eye = np.eye(spec.N)

    def x(a):
        return np.kron(a, eye)

    def y(a):
        return np.kron(eye, a)

    gens = {
        "Qx": x(q1), "Qy": y(q1),
        "Px": x(p1), "Py": y(p1),
        "Kx": x(k1), "Ky": y(k1),
    }
    gens["J12"] = gens["Kx"] + gens["Ky"]
    gens["J13"] = -(gens["Px"] + gens["Py"])
    gens["J14"] = gens["Qx"] - gens["Qy"]
    gens["J23"] = gens["Qx"] + gens["Qy"]
    gens["J24"] = gens["Px"] - gens["Py"]
    gens["J34"] = gens["Kx"] - gens["Ky"]
    # ring-chain physical names, signed so that the defining relations
    # [M, Q°x] = iQ°y, [K, Q°x] = iP°x, [Q°x, Q°y] = iM, [K, M] = 0 all
    # hold (verify_ring_chain checks every one)
    gens["K_iso"] = gens["J12"]
    gens["Qcx"] = gens["J23"]
    gens["Qcy"] = gens["J24"]
    gens["Pcx"] = gens["J13"]
    gens["Pcy"] = gens["J14"]
    gens["M_circ"] = -gens["J34"]
    gens["R_casimir"] = (gens["Qcx"] @ gens["Qcx"] + gens["Qcy"] @ gens["Qcy"]
                         + gens["M_circ"] @ gens["M_circ"])
    return {name: GeneratorMatrix(name, "2d-position", spec.two_j, m)
            for name, m in gens.items()}


def imported_m_blocks(spec: GridSpec) -> tuple[np.ndarray, ...]:
    """Mode-basis blocks of the imported angular momentum, one per rhombus row.

    Row n carries the spin iota_n = min(n, 4j-n)/2 ladder on mu with
    couplings -+ i sqrt((iota - mu)(iota + mu + 1)); on full (lower) rows
    the magnitudes are sqrt(n_y (n_x + 1)) and sqrt(n_x (n_y + 1)).  The
    couplings are imaginary so that the exponential exp(-i theta M) is the
    real rotation kernel, exactly as for the continuum angular momentum
    between real oscillator modes.
    """
    blocks = []
    for offset, width, n in mode_row_spans(spec):
        iota = (width - 1) / 2.0
        block = np.zeros((width, width), dtype=complex)
        for a in range(width - 1):
            mu = a - iota
            c = np.sqrt((iota - mu) * (iota + mu + 1.0))
            block[a + 1, a] = -1j * c
            block[a, a + 1] = 1j * c
        blocks.append(block)
    return tuple(blocks)


def build_imported_M(spec: GridSpec) -> GeneratorMatrix:
    """The imported angular momentum on the 2D position space.

    Assembled on the mode rhombus (see imported_m_blocks), then conjugated
    to the position basis by the separable mode table.  Commutes with the
    total mode number; its n-block spectrum is the rhombus column
    {-min(n, 4j-n) .. min(n, 4j-n)} stepping by 2.
    """
    table = cart_basis.cart_mode_table(spec).values
    middle = np.zeros((spec.npoints, spec.npoints), dtype=complex)
    for (offset, width, _n), block in zip(mode_row_spans(spec), imported_m_blocks(spec)):
        middle[offset:offset + width, offset:offset + width] = block
    m_pos = (table @ middle) @ table.T
    m_pos = 0.5 * (m_pos + m_pos.conj().T)   # scrub rounding asymmetry
    return GeneratorMatrix("M_imported", "2d-position", spec.two_j, m_pos)


def numeric_expm_hermitian(g, t: float) -> np.ndarray:
    """exp(-i t G) for Hermitian G, by eigendecomposition."""
    mat = g.matrix if isinstance(g, GeneratorMatrix) else np.asarray(g)
    defect = float(np.abs(mat - mat.conj().T).max())
    scale = max(1.0, float(np.abs(mat).max()))
    if defect > 1e-12 * scale:
        raise DomainError(f"matrix is not Hermitian (defect {defect:.2e})")
    w, v = np.linalg.eigh(mat)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def _eigenspace_projectors(matrix: np.ndarray, tol: float = 1e-8):
    """Projectors onto eigenvalue clusters; robust under degeneracy."""
    w, v = np.linalg.eigh(matrix)
    projs = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[start] > tol:
            vecs = v[:, start:i]
            projs.append((float(np.mean(w[start:i])), vecs @ vecs.conj().T))
            start = i
    return projs


# ---------------------------------------------------------------------------
# verification suites (consumed by `fklens verify`)
# ---------------------------------------------------------------------------

def _so4_expected_commutator(gens, i, i2, k, k2):
    """Right-hand side of the so(4) pattern rule for [J_{i,i2}, J_{k,k2}]."""
    dim = gens["J12"].matrix.shape[0]

    def J(a, b):
        if a == b:
            return np.zeros((dim, dim), dtype=complex)
        sign = 1.0 if a < b else -1.0
        return sign * gens[f"J{min(a, b)}{max(a, b)}"].matrix

    out = np.zeros((dim, dim), dtype=complex)
    if i2 == k:
        out = out + J(i, k2)
    if i == k2:
        out = out + J(i2, k)
    if k == i:
        out = out + J(k2, i2)
    if k2 == i2:
        out = out + J(k, i)
    return 1j * out


def verify_su2(j: HalfIntLike, tol: float = 1e-12) -> list[tuple[str, bool, str]]:
    q, p, k = build_su2_matrices(j)
    Q, P, K = q.matrix, p.matrix, k.matrix
    n = Q.shape[0]
    jv = (n - 1) / 2.0
    checks = []
    comm = lambda a, b: a @ b - b @ a
    checks.append(("su2-commutators",
                   float(max(np.abs(comm(K, Q) + 1j * P).max(),
                             np.abs(comm(K, P) - 1j * Q).max(),
                             np.abs(comm(Q, P) + 1j * K).max()))))
    checks.append(("su2-casimir",
                   float(np.abs(Q @ Q + P @ P + K @ K - jv * (jv + 1) * np.eye(n)).max())))
    expected = (2.0 * np.arange(n) - (n - 1)) / 2.0
    spec_err = max(float(np.abs(np.sort(np.linalg.eigvalsh(M)) - expected).max())
                   for M in (Q, P, K))
    checks.append(("su2-spectra", spec_err))
    return [(name, err < tol, f"max defect {err:.2e}") for name, err in checks]


def verify_kravchuk_convention(j: HalfIntLike, tol: float = 1e-12) -> list[tuple[str, bool, str]]:
    _, _, k = build_su2_matrices(j)
    w, v = np.linalg.eigh(k.matrix)
    table = specfun.kravchuk_matrix(j)
    n = k.matrix.shape[0]
    err = 0.0
    for col in range(n):
        vec = v[:, col].real.copy()
        if vec[0] < 0:
            vec = -vec
        err = max(err, float(np.abs(vec - table[:, col]).max()))
        err = max(err, abs(w[col] - (col - (n - 1) / 2.0)))
    return [("kravchuk-convention", err < tol,
             f"eigh(K) vs Kravchuk table, max defect {err:.2e}")]


def verify_so4(spec: GridSpec, tol: float = 1e-12) -> list[tuple[str, bool, str]]:
    gens = build_so4_generators(spec)
    pairs = [(i, i2, k, k2)
             for i in range(1, 5) for i2 in range(i + 1, 5)
             for k in range(1, 5) for k2 in range(k + 1, 5)]
    err = 0.0
    for i, i2, k, k2 in pairs:
        a = gens[f"J{i}{i2}"].matrix
        b = gens[f"J{k}{k2}"].matrix
        expected = _so4_expected_commutator(gens, i, i2, k, k2)
        err = max(err, float(np.abs(a @ b - b @ a - expected).max()))
    return [("so4-pattern-commutators", err < tol, f"max defect {err:.2e}")]


def verify_ring_chain(spec: GridSpec, tol: float = 1e-12) -> list[tuple[str, bool, str]]:
    """The ring-chain observables rotate into each other correctly."""
    g = {k: v.matrix for k, v in build_so4_generators(spec).items()}
    k, m = g["K_iso"], g["M_circ"]
    qx, qy, px, py = g["Qcx"], g["Qcy"], g["Pcx"], g["Pcy"]
    zero = np.zeros_like(m)

    def comm(a, b):
        return a @ b - b @ a

    relations = [
        (comm(m, qx), 1j * qy), (comm(m, qy), -1j * qx),
        (comm(m, px), 1j * py), (comm(m, py), -1j * px),
        (comm(k, qx), 1j * px), (comm(k, px), -1j * qx),
        (comm(k, qy), 1j * py), (comm(k, py), -1j * qy),
        (comm(k, m), zero), (comm(qx, py), zero), (comm(qy, px), zero),
        (comm(qx, px), 1j * k), (comm(qy, py), 1j * k),
        (comm(qx, qy), 1j * m), (comm(px, py), 1j * m),
    ]
    err = max(float(np.abs(lhs - rhs).max()) for lhs, rhs in relations)
    return [("ring-chain-relations", err < tol,
             f"15 defining commutators, max defect {err:.2e}")]


def verify_radius_spectrum(spec: GridSpec, tol: float = 1e-9) -> list[tuple[str, bool, str]]:
    gens = build_so4_generators(spec)
    w = np.sort(np.linalg.eigvalsh(gens["R_casimir"].matrix))
    expected = np.sort(np.concatenate(
        [np.full(2 * rho + 1, rho * (rho + 1.0)) for rho in range(spec.two_j + 1)]))
    err = float(np.abs(w - expected).max())
    ok = err < tol and len(w) == spec.npoints
    return [("radius-casimir-spectrum", ok,
             f"eigenvalues rho(rho+1), multiplicity 2rho+1, max defect {err:.2e}")]


def verify_imported_m(spec: GridSpec, thetas=(0.3, 0.7, 2.0),
                      tol: float = 1e-9) -> list[tuple[str, bool, str]]:
    m = build_imported_M(spec)
    out = []
    err = 0.0
    blocks = imported_m_blocks(spec)
    for offset, width, n in mode_row_spans(spec):
        mmax = width - 1
        w = np.sort(np.linalg.eigvalsh(blocks[n]))
        err = max(err, float(np.abs(w - np.arange(-mmax, mmax + 1, 2)).max()))
    out.append(("imported-M-block-spectra", err < 1e-10,
                f"rhombus columns, max defect {err:.2e}"))
    err = 0.0
    for theta in thetas:
        rot = fourier_group.kernel_rotation_cart(spec, theta).values
        err = max(err, float(np.abs(numeric_expm_hermitian(m, theta) - rot).max()))
    out.append(("rotation-kernel-vs-expm", err < tol,
                f"exp(-i theta M) vs rotation kernel, max defect {err:.2e}"))
    ma = cart_basis.ma_mode_table(spec).values
    err = 0.0
    for col, (n, mval) in enumerate(enumerate_ma_rhombus(spec)):
        err = max(err, float(np.abs(m.matrix @ ma[:, col] - mval * ma[:, col]).max()))
    out.append(("ma-eigenvectors", err < 1e-10,
                f"M Lambda = m Lambda, max residual {err:.2e}"))
    # degenerate eigenspaces are compared through projectors, never
    # vector-wise: each m-eigenspace of M vs the span of its Lambda columns
    projs = {round(w): p for w, p in _eigenspace_projectors(m.matrix)}
    err = 0.0
    for mval in sorted({mm for _, mm in enumerate_ma_rhombus(spec)}):
        cols = [c for c, (_, mm) in enumerate(enumerate_ma_rhombus(spec)) if mm == mval]
        span = ma[:, cols] @ ma[:, cols].conj().T
        err = max(err, float(np.abs(projs[mval] - span).max()))
    out.append(("ma-eigenprojectors", err < 1e-10,
                f"eigh projectors vs Lambda spans, max defect {err:.2e}"))
    return out


def verify_bases(spec: GridSpec, tol: float = 1e-11) -> list[tuple[str, bool, str]]:
    eye = np.eye(spec.npoints)
    out = []
    for name, table in (("cart", cart_basis.cart_mode_table(spec).values),
                        ("ma", cart_basis.ma_mode_table(spec).values),
                        ("polar", polar_basis.polar_table(spec).values)):
        err = float(np.abs(table.conj().T @ table - eye).max())
        out.append((f"basis-unitarity-{name}", err < tol, f"max defect {err:.2e}"))
    return out


def verify_kernels(spec: GridSpec, rng: np.random.Generator,
                   tol: float = 1e-9) -> list[tuple[str, bool, str]]:
    out = []
    try:
        a, b = rng.uniform(-np.pi, np.pi, 2)
        families = {
            "rot_cart": fourier_group.kernel_rotation_cart,
            "aniso": fourier_group.kernel_aniso,
            "gyration": fourier_group.kernel_gyration,
            "iso": fourier_group.kernel_isotropic,
            "rot_polar": fourier_group.kernel_rotation_polar,
        }
        err = 0.0
        for name, fn in families.items():
            prod = fn(spec, a).values @ fn(spec, b).values
            err = max(err, float(np.abs(prod - fn(spec, a + b).values).max()))
        out.append(("one-parameter-laws", err < tol, f"X(a)X(b)=X(a+b), max defect {err:.2e}"))
        p1 = fourier_group.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        p2 = fourier_group.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        d12 = fourier_group.kernel_u2_cart(spec, fourier_group.compose_params(p1, p2))
        prod = (fourier_group.kernel_u2_cart(spec, p1).values
                @ fourier_group.kernel_u2_cart(spec, p2).values)
        err = float(np.abs(prod - d12.values).max())
        out.append(("u2-composition", err < tol, f"2x2 parameter product, max defect {err:.2e}"))
    except Exception as exc:   # a kernel failing its build gate lands here
        out.append(("kernel-builds", False, f"{type(exc).__name__}: {exc}"))
    return out


def verify_gridmap(spec: GridSpec, rng: np.random.Generator,
                   tol: float = 1e-10) -> list[tuple[str, bool, str]]:
    u = gridmap.kernel_U(spec)
    eye = np.eye(spec.npoints)
    out = []
    err = float(np.abs(u.values @ u.values.conj().T - eye).max())
    out.append(("gridmap-unitarity", err < tol, f"U U^H = 1, max defect {err:.2e}"))
    img = gridmap.CartImage(spec, rng.standard_normal(spec.npoints)
                            + 1j * rng.standard_normal(spec.npoints))
    back = gridmap.polar_to_cart(gridmap.cart_to_polar(img, u), u)
    err = float(np.abs(back.pixels - img.pixels).max())
    out.append(("gridmap-roundtrip", err < tol, f"V U f = f, max defect {err:.2e}"))
    theta = 2.0 * np.pi / (2 * spec.two_j + 1)
    dpol = fourier_group.kernel_u2_polar(spec, fourier_group.EulerParams(0, 0, 2 * theta, 0))
    rpol = fourier_group.kernel_rotation_polar(spec, theta)
    err = float(np.abs(dpol.values - rpol.values).max())
    out.append(("polar-rotation-crosscheck", err < 1e-9,
                f"U R U^H vs ring circulant, max defect {err:.2e}"))
    return out


def verify(j: HalfIntLike, seed: int = 20110601, max_n: int = DEFAULT_MAX_N,
           inject_failure: bool = False) -> list[tuple[str, bool, str]]:
    """Run every suite at representation j; returns (group, passed, detail) rows."""
    spec = GridSpec.of(j)
    if spec.N > max_n:
        raise DomainError(
            f"verification is O(N^6); N = {spec.N} exceeds the cap {max_n}")
    rng = np.random.default_rng(seed)
    results = []
    results += verify_su2(j)
    results += verify_kravchuk_convention(j)
    results += verify_so4(spec)
    results += verify_ring_chain(spec)
    results += verify_radius_spectrum(spec)
    results += verify_imported_m(spec)
    results += verify_bases(spec)
    results += verify_kernels(spec, rng)
    results += verify_gridmap(spec, rng)
    if inject_failure:
        results.append(("injected-perturbation", False, "forced failure for harness sanity"))
    return results
