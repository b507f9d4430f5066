"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import fdnkit


COUNTEREXAMPLE = np.array([[3.0, 2.0], [-4.0, -3.0]], dtype=complex)


def test_charpoly_anchor():
    coeffs = fdnkit.generalized_charpoly(COUNTEREXAMPLE, [1, 2])
    np.testing.assert_allclose(coeffs, [-1, 3, -3, 1], atol=1e-12)
    oracle = fdnkit.charpoly_oracle(COUNTEREXAMPLE, [1, 2])
    np.testing.assert_allclose(oracle, coeffs, atol=1e-9)


def test_roots_and_losslessness():
    coeffs = fdnkit.generalized_charpoly(COUNTEREXAMPLE, [2, 1])
    roots = fdnkit.poly_roots(coeffs)
    assert roots.shape == (3,)
    mags = np.sort(np.abs(roots))
    np.testing.assert_allclose(mags[-1], 2.0 + np.sqrt(3.0), atol=1e-9)
    lossless, max_dev = fdnkit.is_lossless_poly(coeffs, 1e-7)
    assert not lossless
    assert max_dev > 1.0


def test_unilossless_verdicts():
    report = fdnkit.is_unilossless(COUNTEREXAMPLE)
    assert not report.unilossless

    q = fdnkit.random_unitary(4, 7)
    report = fdnkit.is_unilossless(q)
    assert report.unilossless
    assert len(report.blocks) == 1
    np.testing.assert_allclose(report.blocks[0].certificate_e, np.ones(4),
                               atol=1e-8)


def test_scattering_certificate():
    y = np.array([1.0, 2.0, 3.0, 4.0])
    a = fdnkit.sdn_even(y)
    report = fdnkit.is_unilossless(a)
    assert report.unilossless
    e = np.asarray(report.blocks[0].certificate_e)
    np.testing.assert_allclose(e, y[0] / y, rtol=1e-9)


def test_decompose_schroeder():
    sys = fdnkit.schroeder([0.7, 0.7, 0.7, 0.7, 0.5, 0.5],
                           [24, 29, 31, 37, 7, 11])
    dec = fdnkit.decompose(sys.A)
    assert len(dec.blocks) == 6
    assert not fdnkit.is_irreducible(sys.A)


def test_transfer_and_ir():
    a = np.zeros((1, 1), dtype=complex)
    sys = fdnkit.FdnSystem(a, [3])
    assert fdnkit.transfer_eval(sys, 2.0 + 0.0j) == pytest.approx(0.125)
    ir = fdnkit.render_ir(sys, 6)
    np.testing.assert_allclose(ir.real, [0, 0, 0, 1, 0, 0], atol=1e-15)


def test_statespace_poles_match_companion():
    rng = np.random.default_rng(5)
    a = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))) * 0.5
    sys = fdnkit.FdnSystem(a, [2, 3, 4])
    ss_poles = np.sort_complex(fdnkit.statespace_poles(sys))
    comp = np.sort_complex(
        fdnkit.poly_roots(fdnkit.generalized_charpoly(a, [2, 3, 4])))
    np.testing.assert_allclose(ss_poles, comp, atol=1e-7)


def test_region_anchor():
    assert fdnkit.region_point_lossless(3.0 + 0j, -1.0 + 0j, 1, 2)
    assert not fdnkit.region_point_lossless(3.001 + 0j, -1.0 + 0j, 1, 2)
    boundary = fdnkit.region_boundary(-1.0 + 0j, 2, angles=16,
                                      radial_tol=1e-4)
    assert boundary.shape == (16, 4)
    assert boundary[0, 1] == pytest.approx(3.0, abs=1e-3)


def test_validation_errors_cross_the_boundary():
    with pytest.raises(ValueError):
        fdnkit.system_order([1, 0])
    with pytest.raises(ValueError):
        fdnkit.delay_matrix_eval([1, 2], 0.0 + 0.0j)
