import numpy as np
import pytest

from conftest import expm_hermitian, point_reflection_permutation
from fklens import cart_basis, fourier_group as fg, specfun
from fklens.errors import DomainError, UnitarityError
from fklens.grids import GridSpec, enumerate_cart_modes, mode_row_spans
from fklens.halfint import HalfInt

SPEC2 = GridSpec.of(2)


# ---------------------------------------------------------------------------
# identities and zero-angle short circuits
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("build", [fg.kernel_rotation_cart, fg.kernel_aniso,
                                   fg.kernel_gyration, fg.kernel_isotropic,
                                   fg.kernel_rotation_polar])
def test_zero_angle_is_exact_identity(build):
    kernel = build(SPEC2, 0.0)
    assert np.array_equal(kernel.values, np.eye(25))


def test_u2_identity_params():
    kernel = fg.kernel_u2_cart(SPEC2, fg.EulerParams())
    assert np.array_equal(kernel.values, np.eye(25))


# ---------------------------------------------------------------------------
# rotation on the square grid
# ---------------------------------------------------------------------------

def test_rotation_kernel_is_real():
    for theta in (0.3, 1.1, 2.9):
        kernel = fg.kernel_rotation_cart(SPEC2, theta)
        assert np.abs(kernel.values.imag).max() < 1e-14


def test_rotation_preserves_real_images(rng):
    img = rng.standard_normal(25)
    out = fg.kernel_rotation_cart(SPEC2, 0.9).apply(img)
    assert np.abs(out.imag).max() < 1e-13


@pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, 3])
def test_rotation_pi_is_point_reflection(j):
    spec = GridSpec.of(j)
    kernel = fg.kernel_rotation_cart(spec, np.pi)
    assert np.abs(kernel.values - point_reflection_permutation(spec.N)).max() < 1e-10


@pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, 3])
def test_rotation_two_pi_is_identity(j):
    spec = GridSpec.of(j)
    kernel = fg.kernel_rotation_cart(spec, 2 * np.pi)
    assert np.abs(kernel.values - np.eye(spec.npoints)).max() < 1e-10


def test_rotation_equals_exponential_of_generator():
    # independent route: expm via the test-local eigendecomposition of the
    # block generator conjugated by the mode table
    from fklens import oracle
    spec = SPEC2
    m = oracle.build_imported_M(spec).matrix
    for theta in (0.3, 0.7, 2.0):
        expected = expm_hermitian(m, theta)
        got = fg.kernel_rotation_cart(spec, theta).values
        assert np.abs(got - expected).max() < 1e-9


# ---------------------------------------------------------------------------
# anisotropic and isotropic transforms
# ---------------------------------------------------------------------------

def test_aniso_one_parameter_law():
    a1 = fg.kernel_aniso(SPEC2, 0.31).values
    a2 = fg.kernel_aniso(SPEC2, 0.55).values
    a12 = fg.kernel_aniso(SPEC2, 0.86).values
    assert np.abs(a1 @ a2 - a12).max() < 1e-10


def test_aniso_pi_is_identity():
    kernel = fg.kernel_aniso(SPEC2, np.pi)
    assert np.abs(kernel.values - np.eye(25)).max() < 1e-12


def test_aniso_diagonal_in_mode_basis():
    table = cart_basis.cart_mode_table(SPEC2).values
    a = fg.kernel_aniso(SPEC2, 0.4).values
    mode_form = table.T @ a @ table
    off = mode_form - np.diag(np.diag(mode_form))
    assert np.abs(off).max() < 1e-12
    expected = np.exp(-0.8j * np.array([nx - ny for nx, ny in enumerate_cart_modes(SPEC2)]))
    assert np.abs(np.diag(mode_form) - expected).max() < 1e-12


def test_iso_pi_is_identity():
    kernel = fg.kernel_isotropic(SPEC2, np.pi)
    assert np.abs(kernel.values - np.eye(25)).max() < 1e-12


def test_iso_commutes_with_rotation():
    k = fg.kernel_isotropic(SPEC2, 0.3).values
    r = fg.kernel_rotation_cart(SPEC2, 0.3).values
    assert np.abs(k @ r - r @ k).max() < 1e-10


def test_iso_block_scalar_on_fixed_n():
    table = cart_basis.cart_mode_table(SPEC2).values
    mode_form = table.T @ fg.kernel_isotropic(SPEC2, 0.7).values @ table
    for offset, width, n in mode_row_spans(SPEC2):
        block = mode_form[offset:offset + width, offset:offset + width]
        assert np.abs(block - np.exp(-1.4j * n) * np.eye(width)).max() < 1e-12


# ---------------------------------------------------------------------------
# gyration
# ---------------------------------------------------------------------------

def test_gyration_one_parameter_law():
    g1 = fg.kernel_gyration(SPEC2, 0.17).values
    g2 = fg.kernel_gyration(SPEC2, 0.46).values
    g12 = fg.kernel_gyration(SPEC2, 0.63).values
    assert np.abs(g1 @ g2 - g12).max() < 1e-10


def test_gyration_product_route_agrees():
    # direct block construction vs conjugating the rotation by the
    # anisotropic transform a quarter of the way to the Fourier plane
    psi = 0.4
    direct = fg.kernel_gyration(SPEC2, psi).values
    a = fg.kernel_aniso(SPEC2, np.pi / 8).values
    product = a @ fg.kernel_rotation_cart(SPEC2, psi).values @ a.conj().T
    assert np.abs(direct - product).max() < 1e-10


def test_gyration_quarter_exchanges_mode_kinds():
    # G(pi/4) maps each angular-momentum mode onto a single separable mode
    spec = GridSpec.of(1.5)
    g = fg.kernel_gyration(spec, np.pi / 4).values
    ma = cart_basis.ma_mode_table(spec).values
    cart = cart_basis.cart_mode_table(spec).values
    overlap = np.abs(cart.T @ g @ ma)   # rows: separable, cols: MA
    for col in range(overlap.shape[1]):
        assert overlap[:, col].max() == pytest.approx(1.0, abs=1e-10)


# ---------------------------------------------------------------------------
# the general element
# ---------------------------------------------------------------------------

def test_u2_pure_rotation_reduction():
    theta = 0.77
    d = fg.kernel_u2_cart(SPEC2, fg.EulerParams(0.0, 0.0, 2 * theta, 0.0))
    r = fg.kernel_rotation_cart(SPEC2, theta)
    assert np.abs(d.values - r.values).max() < 1e-10


def test_u2_factorization_cross_check():
    p = fg.EulerParams(0.5, -0.8, 1.3, 0.4)
    fg.kernel_u2_cart(SPEC2, p, debug_check=True)   # raises on disagreement


def test_u2_mode_matrix_elements_are_big_d():
    # mode-basis blocks: e^{-i omega n} e^{-i mu phi} d^{iota}(theta) e^{-i mu' psi}
    p = fg.EulerParams(0.37, 0.61, 1.1, -0.53)
    table = cart_basis.cart_mode_table(SPEC2).values
    mode_form = table.T @ fg.kernel_u2_cart(SPEC2, p).values @ table
    for offset, width, n in mode_row_spans(SPEC2):
        block = mode_form[offset:offset + width, offset:offset + width]
        iota = HalfInt(width - 1)
        for a in range(width):
            for b in range(width):
                mu_a = HalfInt(2 * a - (width - 1))
                mu_b = HalfInt(2 * b - (width - 1))
                expected = (np.exp(-1j * p.omega * n)
                            * specfun.wigner_big_D(iota, mu_a, mu_b,
                                                   0.0, p.phi, p.theta, p.psi))
                assert block[a, b] == pytest.approx(expected, abs=1e-9)
        mode_form[offset:offset + width, offset:offset + width] = 0.0
    assert np.abs(mode_form).max() < 1e-10   # no coupling between n rows


def test_u2_group_law(rng):
    for _ in range(3):
        p1 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        p2 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        lhs = fg.kernel_u2_cart(SPEC2, p1).values @ fg.kernel_u2_cart(SPEC2, p2).values
        rhs = fg.kernel_u2_cart(SPEC2, fg.compose_params(p1, p2)).values
        assert np.abs(lhs - rhs).max() < 1e-9


def test_compose_params_matches_2x2(rng):
    p1 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
    p2 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
    p12 = fg.compose_params(p1, p2)
    assert np.abs(fg._su2_of(p12) - fg._su2_of(p1) @ fg._su2_of(p2)).max() < 1e-12


@pytest.mark.parametrize("j", [1, 1.5, 2, 3])
def test_every_cart_kernel_is_a_generator_exponential(j):
    # rotation: generator M_imported; aniso/iso: diagonal mode phases;
    # gyration: M_imported conjugated an eighth turn toward the Fourier axis
    from fklens import oracle
    spec = GridSpec.of(j)
    table = cart_basis.cart_mode_table(spec).values
    diffs = np.array([nx - ny for nx, ny in enumerate_cart_modes(spec)], dtype=float)
    sums = np.array([nx + ny for nx, ny in enumerate_cart_modes(spec)], dtype=float)
    m_pos = oracle.build_imported_M(spec).matrix
    a_gen = (table * (2.0 * diffs)) @ table.T
    k_gen = (table * (2.0 * sums)) @ table.T
    a8 = fg.kernel_aniso(spec, np.pi / 8).values
    g_gen = a8 @ m_pos @ a8.conj().T
    angle = 0.57
    pairs = [
        (fg.kernel_rotation_cart(spec, angle).values, m_pos),
        (fg.kernel_aniso(spec, angle).values, a_gen),
        (fg.kernel_isotropic(spec, angle).values, k_gen),
        (fg.kernel_gyration(spec, angle).values, g_gen),
    ]
    for kernel, gen in pairs:
        expected = expm_hermitian(gen, angle)
        assert np.abs(kernel - expected).max() < 1e-9


# ---------------------------------------------------------------------------
# polar rotation
# ---------------------------------------------------------------------------

def test_polar_rotation_blocks_are_ring_diagonal():
    spec = GridSpec.of(2)
    values = fg.kernel_rotation_polar(spec, 0.9).values
    for rho in range(spec.two_j + 1):
        sl = slice(rho * rho, (rho + 1) * (rho + 1))
        outside = values.copy()
        outside[sl, sl] = 0.0
        assert np.abs(outside[sl, :]).max() < 1e-15


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_polar_rotation_unit_shifts(j):
    spec = GridSpec.of(j)
    for rho in range(spec.two_j + 1):
        size = 2 * rho + 1
        for shift in range(size):
            theta = 2 * np.pi * shift / size
            block = fg.kernel_rotation_polar(spec, theta).values[
                rho * rho:(rho + 1) * (rho + 1), rho * rho:(rho + 1) * (rho + 1)]
            expected = np.zeros((size, size))
            for a in range(size):
                expected[(a + shift) % size, a] = 1.0
            assert np.abs(block - expected).max() < 1e-12


def test_polar_rotation_blocks_are_circulant():
    spec = GridSpec.of(3)
    values = fg.kernel_rotation_polar(spec, 1.234).values
    for rho in range(spec.two_j + 1):
        size = 2 * rho + 1
        block = values[rho * rho:(rho + 1) * (rho + 1),
                       rho * rho:(rho + 1) * (rho + 1)]
        for a in range(size):
            for b in range(size):
                assert block[a, b] == pytest.approx(block[(a + 1) % size, (b + 1) % size],
                                                    abs=1e-12)


def test_polar_rotation_one_parameter_law():
    spec = GridSpec.of(2)
    r1 = fg.kernel_rotation_polar(spec, 0.37).values
    r2 = fg.kernel_rotation_polar(spec, 1.11).values
    r12 = fg.kernel_rotation_polar(spec, 1.48).values
    assert np.abs(r1 @ r2 - r12).max() < 1e-10


# ---------------------------------------------------------------------------
# the general element on the polar screen
# ---------------------------------------------------------------------------

def test_u2_polar_identity():
    kernel = fg.kernel_u2_polar(SPEC2, fg.EulerParams())
    assert np.abs(kernel.values - np.eye(25)).max() < 1e-12


@pytest.mark.parametrize("j", [1, 2, 3])
def test_u2_polar_pure_rotation_matches_circulant(j):
    spec = GridSpec.of(j)
    for theta in (2 * np.pi / 5, 0.9):
        d = fg.kernel_u2_polar(spec, fg.EulerParams(0.0, 0.0, 2 * theta, 0.0))
        r = fg.kernel_rotation_polar(spec, theta)
        assert np.abs(d.values - r.values).max() < 1e-9


def test_u2_polar_unitary_random(rng):
    p = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
    kernel = fg.kernel_u2_polar(SPEC2, p)
    assert fg.unitarity_defect(kernel.values) < 1e-10


def test_u2_polar_group_law(rng):
    # conjugation carries the composition law to the ring screen
    p1 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
    p2 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
    lhs = fg.kernel_u2_polar(SPEC2, p1).values @ fg.kernel_u2_polar(SPEC2, p2).values
    rhs = fg.kernel_u2_polar(SPEC2, fg.compose_params(p1, p2)).values
    assert np.abs(lhs - rhs).max() < 1e-9


# ---------------------------------------------------------------------------
# guards
# ---------------------------------------------------------------------------

def test_params_must_be_finite():
    with pytest.raises(DomainError):
        fg.EulerParams(np.nan, 0, 0, 0)


def test_unitarity_gate_fires():
    with pytest.raises(UnitarityError):
        fg.Kernel.checked(SPEC2, "cartesian", "rot_cart", (0.0,),
                          2.0 * np.eye(25, dtype=complex))


def test_kernel_apply_shape_guard(rng):
    kernel = fg.kernel_rotation_cart(SPEC2, 0.4)
    with pytest.raises(DomainError):
        kernel.apply(rng.standard_normal(24))
