"""Acceptance suite: one test per criterion, one PASS line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the report lines.
All tolerances are pinned here, not configurable.
"""

import time

import numpy as np
import pytest

from conftest import DATA_DIR, point_reflection_permutation
from fklens import (cart_basis, fourier_group as fg, gridmap, imageio,
                    kernel_cache as kc, oracle, polar_basis)
from fklens.grids import GridSpec, enumerate_ma_rhombus
from fklens.halfint import HalfInt

ACCEPTANCE_JS = (0.5, 1, 1.5, 2, 3)


def report(line: str) -> None:
    print(f"PASS  {line}", flush=True)


def test_criterion_1_unitarity_suite():
    """Every kernel kind is unitary to 1e-10 for five random parameter sets."""
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for j in ACCEPTANCE_JS:
        spec = GridSpec.of(j)
        for _ in range(5):
            a = float(rng.uniform(-np.pi, np.pi))
            p = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
            kernels = [
                fg.kernel_rotation_cart(spec, a),
                fg.kernel_aniso(spec, a),
                fg.kernel_gyration(spec, a),
                fg.kernel_isotropic(spec, a),
                fg.kernel_u2_cart(spec, p),
                fg.kernel_rotation_polar(spec, a),
                fg.kernel_u2_polar(spec, p),
                gridmap.kernel_U(spec),
            ]
            worst = max(worst, max(fg.unitarity_defect(k.values) for k in kernels))
    elapsed = time.perf_counter() - t0
    assert worst < 1e-10
    assert elapsed < 60.0
    report(f"criterion-1 unitarity: 8 kernel kinds x 5 params x j in {ACCEPTANCE_JS}, "
           f"worst defect {worst:.2e}, {elapsed:.1f}s")


def test_criterion_2_oracle_equivalence():
    """Rotation kernel equals the exponential of the imported generator."""
    worst = 0.0
    for j in (0.5, 1, 1.5, 2):
        spec = GridSpec.of(j)
        m = oracle.build_imported_M(spec)
        for theta in (0.3, 0.7, 2.0):
            diff = np.abs(oracle.numeric_expm_hermitian(m, theta)
                          - fg.kernel_rotation_cart(spec, theta).values).max()
            worst = max(worst, float(diff))
    assert worst < 1e-9
    report(f"criterion-2 oracle equivalence: expm(-i theta M) vs rotation kernel, "
           f"j <= 2, worst {worst:.2e}")


def test_criterion_3_radius_spectrum():
    """Radius Casimir spectrum rho(rho+1) with multiplicity 2 rho + 1."""
    for j in (1, 1.5, 2):
        spec = GridSpec.of(j)
        gens = oracle.build_so4_generators(spec)
        w = np.sort(np.linalg.eigvalsh(gens["R_casimir"].matrix))
        expected = np.sort(np.concatenate(
            [np.full(2 * rho + 1, rho * (rho + 1.0)) for rho in range(spec.two_j + 1)]))
        assert len(w) == spec.npoints
        assert np.abs(w - expected).max() < 1e-9
        assert sum(2 * rho + 1 for rho in range(spec.two_j + 1)) == spec.npoints
    report("criterion-3 spectral checks: radius Casimir eigenvalues and point count")


def test_criterion_4_eigenbasis_checks():
    """Lambda columns are angular-momentum eigenvectors; ring wavefunctions
    diagonalize the polar rotation with phases e^{-i m theta}."""
    worst_cart = 0.0
    worst_polar = 0.0
    for j in (0.5, 1, 1.5, 2, 2.5, 3):
        spec = GridSpec.of(j)
        m_op = oracle.build_imported_M(spec).matrix
        ma = cart_basis.ma_mode_table(spec).values
        pol = polar_basis.polar_table(spec).values
        theta = 0.683
        rot = fg.kernel_rotation_polar(spec, theta).values
        for col, (n, m) in enumerate(enumerate_ma_rhombus(spec)):
            worst_cart = max(worst_cart, float(
                np.abs(m_op @ ma[:, col] - m * ma[:, col]).max()))
            worst_polar = max(worst_polar, float(
                np.abs(rot @ pol[:, col] - np.exp(-1j * m * theta) * pol[:, col]).max()))
    assert worst_cart < 1e-10
    assert worst_polar < 1e-10
    report(f"criterion-4 eigenbases: M Lambda residual {worst_cart:.2e}, "
           f"polar rotation phase residual {worst_polar:.2e}")


def test_criterion_5_group_laws():
    """One-parameter laws for the five families, full composition by 2x2."""
    rng = np.random.default_rng(5)
    worst = 0.0
    for j in (0.5, 1, 1.5, 2, 3):
        spec = GridSpec.of(j)
        a, b = rng.uniform(-np.pi, np.pi, 2)
        for fn in (fg.kernel_rotation_cart, fg.kernel_aniso, fg.kernel_gyration,
                   fg.kernel_isotropic, fg.kernel_rotation_polar):
            diff = np.abs(fn(spec, a).values @ fn(spec, b).values
                          - fn(spec, a + b).values).max()
            worst = max(worst, float(diff))
        p1 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        p2 = fg.EulerParams(*rng.uniform(-np.pi, np.pi, 4))
        diff = np.abs(fg.kernel_u2_cart(spec, p1).values
                      @ fg.kernel_u2_cart(spec, p2).values
                      - fg.kernel_u2_cart(spec, fg.compose_params(p1, p2)).values).max()
        worst = max(worst, float(diff))
    assert worst < 1e-9
    report(f"criterion-5 group laws: five families + U(2) composition, worst {worst:.2e}")


def test_criterion_6_ring_shifts():
    """Commensurate polar rotations are exact cyclic ring shifts."""
    worst = 0.0
    for two_j in range(1, 9):   # j = 1/2 .. 4
        spec = GridSpec(two_j)
        for rho in range(two_j + 1):
            size = 2 * rho + 1
            lo, hi = rho * rho, (rho + 1) * (rho + 1)
            for shift in range(size):
                theta = 2.0 * np.pi * shift / size
                block = fg.kernel_rotation_polar(spec, theta).values[lo:hi, lo:hi]
                expected = np.zeros((size, size))
                for a in range(size):
                    expected[(a + shift) % size, a] = 1.0
                worst = max(worst, float(np.abs(block - expected).max()))
    assert worst < 1e-12
    report(f"criterion-6 circulant shifts: all rings, all offsets, j <= 4, "
           f"off-pattern max {worst:.2e}")


def test_criterion_7_letter_r_reproduction():
    """Square -> polar -> square on the letter R at N = 17, plus the polar
    support regression against the committed reference artifact."""
    screen = imageio.read_pgm(DATA_DIR / "letter_R_17.pgm")
    img = imageio.cart_image_from_screen((screen > 0).astype(float))
    assert img.spec.N == 17
    u = gridmap.kernel_U(img.spec)
    pol = gridmap.cart_to_polar(img, u)
    back = gridmap.polar_to_cart(pol, u)
    deviation = float(np.abs(back.pixels - img.pixels).max())
    assert deviation < 1e-9

    mags = np.abs(pol.pixels)
    support = mags > 0.1 * mags.max()
    ref = np.zeros(img.spec.npoints, dtype=bool)
    for line in (DATA_DIR / "letter_R_17_polar_support.csv").read_text().splitlines()[1:]:
        rho, k, flag = (int(x) for x in line.split(","))
        ref[rho * rho + k + rho] = bool(flag)
    overlap = (support & ref).sum() / max(support.sum(), ref.sum())
    assert overlap >= 0.90
    report(f"criterion-7 letter R: roundtrip deviation {deviation:.2e}, "
           f"polar support overlap {overlap:.0%}")


def test_criterion_8_parity():
    """Half turn is the point reflection; full turn is the identity."""
    worst_pi = 0.0
    worst_2pi = 0.0
    for j in (0.5, 1, 1.5, 2, 3):
        spec = GridSpec.of(j)
        perm = point_reflection_permutation(spec.N)
        worst_pi = max(worst_pi, float(
            np.abs(fg.kernel_rotation_cart(spec, np.pi).values - perm).max()))
        worst_2pi = max(worst_2pi, float(
            np.abs(fg.kernel_rotation_cart(spec, 2 * np.pi).values
                   - np.eye(spec.npoints)).max()))
    assert worst_pi < 1e-10
    assert worst_2pi < 1e-10
    report(f"criterion-8 parity: R(pi) vs point reflection {worst_pi:.2e}, "
           f"R(2 pi) vs identity {worst_2pi:.2e}")


def test_criterion_9_scale_note(tmp_path):
    """N = 32 kernel file is 16 N^4 bytes plus framing; apply cost ~1e6
    complex multiply-adds.  Build time reported, not asserted."""
    spec = GridSpec.for_size(32)
    t0 = time.perf_counter()
    kernel = gridmap.kernel_U(spec)
    build_s = time.perf_counter() - t0
    key = kc.CacheKey.for_kernel(kernel)
    path = kc.store(key, kernel, tmp_path)
    size = path.stat().st_size
    assert size == 48 + 16 * 32 ** 4 + 4
    assert abs(size - 16.8e6) / 16.8e6 < 0.01
    madds = spec.npoints ** 2
    assert madds == 2 ** 20
    rng = np.random.default_rng(9)
    vec = rng.standard_normal(spec.npoints) + 1j * rng.standard_normal(spec.npoints)
    t0 = time.perf_counter()
    kernel.apply(vec)
    apply_s = time.perf_counter() - t0
    report(f"criterion-9 scale: cache file {size / 1e6:.1f} MB (= 16 N^4 + 52 B), "
           f"apply ~{madds:.0f} madds in {apply_s * 1e3:.2f} ms, "
           f"build {build_s:.2f}s (reported, not asserted)")
