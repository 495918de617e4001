import math

import pytest

from fklens.errors import DomainError
from fklens.grids import (GridSpec, cartesian_index, enumerate_cart_modes,
                          enumerate_cartesian, enumerate_ma_rhombus,
                          enumerate_polar, ma_index, ma_row_width,
                          mode_row_spans, polar_index)
from fklens.halfint import HalfInt


def H(x):
    return HalfInt.of(x)


def test_cartesian_smallest():
    pts = enumerate_cartesian(GridSpec.of(0.5))
    assert pts == ((H(-0.5), H(-0.5)), (H(-0.5), H(0.5)),
                   (H(0.5), H(-0.5)), (H(0.5), H(0.5)))


def test_cartesian_count_and_first():
    for j in (0.5, 1, 2, 3.5, 8):
        spec = GridSpec.of(j)
        pts = enumerate_cartesian(spec)
        assert len(pts) == spec.npoints
        assert pts[0] == (H(-j), H(-j))


def test_cartesian_index_roundtrip():
    spec = GridSpec.of(1.5)
    for i, (qx, qy) in enumerate(enumerate_cartesian(spec)):
        assert cartesian_index(spec, qx, qy) == i
    with pytest.raises(DomainError):
        cartesian_index(spec, 2.5, 0.5)
    with pytest.raises(DomainError):
        cartesian_index(spec, 1.0, 0.5)   # off-lattice for half-integer j


def test_polar_smallest():
    pts = enumerate_polar(GridSpec.of(0.5))
    assert [(p.rho, p.k) for p in pts] == [(0, 0), (1, -1), (1, 0), (1, 1)]


def test_polar_count_matches_square():
    for two_j in range(1, 33):   # integer and half-integer j <= 16
        spec = GridSpec(two_j)
        pts = enumerate_polar(spec)
        assert len(pts) == spec.npoints
        assert sum(2 * rho + 1 for rho in range(spec.two_j + 1)) == spec.npoints


def test_polar_angles():
    pts = enumerate_polar(GridSpec.of(1))
    by_label = {(p.rho, p.k): p.phi for p in pts}
    assert by_label[(1, 1)] == pytest.approx(2 * math.pi / 3)
    assert by_label[(2, -2)] == pytest.approx(-4 * math.pi / 5)


def test_polar_ring_phase_offsets():
    spec = GridSpec.of(1)
    pts = enumerate_polar(spec, ring_phases=(0.0, 0.5, 0.0))
    by_label = {(p.rho, p.k): p.phi for p in pts}
    assert by_label[(1, 0)] == pytest.approx(0.5)
    assert by_label[(2, 0)] == pytest.approx(0.0)
    with pytest.raises(DomainError):
        enumerate_polar(spec, ring_phases=(0.0, 0.1))   # wrong length


def test_polar_index():
    spec = GridSpec.of(2)
    for i, p in enumerate(enumerate_polar(spec)):
        assert polar_index(spec, p.rho, p.k) == i
    with pytest.raises(DomainError):
        polar_index(spec, 1, 2)


def test_ma_rhombus_smallest():
    assert enumerate_ma_rhombus(GridSpec.of(0.5)) == ((0, 0), (1, -1), (1, 1), (2, 0))


def test_ma_rhombus_counts():
    for two_j in range(1, 33):
        spec = GridSpec(two_j)
        rhombus = enumerate_ma_rhombus(spec)
        assert len(rhombus) == spec.npoints
        assert len(enumerate_cartesian(spec)) == spec.npoints


def test_ma_rhombus_parity_and_corners():
    for j in (1, 1.5, 2, 3):
        spec = GridSpec.of(j)
        rhombus = enumerate_ma_rhombus(spec)
        assert all((n + m) % 2 == 0 for n, m in rhombus)
        # both corners of the middle row n = 2j are present
        assert (spec.two_j, spec.two_j) in rhombus
        assert (spec.two_j, -spec.two_j) in rhombus


def test_ma_index_roundtrip():
    spec = GridSpec.of(2)
    for i, (n, m) in enumerate(enumerate_ma_rhombus(spec)):
        assert ma_index(spec, n, m) == i
    with pytest.raises(DomainError):
        ma_index(spec, 1, 2)     # wrong parity
    with pytest.raises(DomainError):
        ma_index(spec, 3, -5)    # outside row


def test_cart_modes_blocks():
    spec = GridSpec.of(1)
    modes = enumerate_cart_modes(spec)
    assert modes == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2))
    spans = mode_row_spans(spec)
    for offset, width, n in spans:
        block = modes[offset:offset + width]
        assert all(nx + ny == n for nx, ny in block)
        assert [nx for nx, _ in block] == sorted(nx for nx, _ in block)
        assert width == ma_row_width(spec, n)


def test_row_widths_sum_to_npoints():
    for j in (0.5, 1, 2.5, 4):
        spec = GridSpec.of(j)
        assert sum(ma_row_width(spec, n) for n in range(2 * spec.two_j + 1)) == spec.npoints


def test_spec_validation():
    with pytest.raises(DomainError):
        GridSpec(-1)
    assert GridSpec.for_size(17).j == H(8)
    with pytest.raises(DomainError):
        GridSpec.for_size(0)
