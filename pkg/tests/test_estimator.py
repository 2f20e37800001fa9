from fractions import Fraction

import numpy as np
import pytest

from codemetro.codes import BinaryCode, concatenate_repetition, repetition
from codemetro.errors import DegenerateFamilyError, DisjointnessError
from codemetro.estimator import (
    fit_theta_squared,
    moment_curves,
    moments_at,
    moments_matrix,
    mse,
    mse_at_zero_exact,
    observable_L,
    theorem3_bound,
)
from codemetro.oracle import build_rho, exact_qfi, hamiltonian, sld_pure
from codemetro.shorten import ErasurePattern, partition

from conftest import all_patterns


def fam(C, idx=()):
    return partition(C, ErasurePattern(C.n, tuple(idx)))


def test_L_structure(rm13):
    for idx in [(), (0,), (1, 4)]:
        F = fam(rm13, idx)
        L = observable_L(F)
        rho = build_rho(F).matrix
        assert np.allclose(L, L.conj().T)
        assert abs(np.trace(L)) < 1e-12
        assert abs(np.trace(rho @ L)) < 1e-12
        assert moments_at(F, 0.0)[0] == 0.0


def test_pure_family_is_pure_sld(rm13):
    F = fam(rm13)
    rho = build_rho(F)
    psi = np.full(16, 0.25)
    assert np.allclose(observable_L(F), sld_pure(psi, hamiltonian(rho)))


def test_flat_classes_give_zero_L():
    C = BinaryCode.from_strings(["0011", "0101", "1001", "0110"])
    assert np.allclose(observable_L(fam(C)), 0)
    assert not mse(fam(C)).defined


@pytest.mark.parametrize("theta", [0.0, 0.1, 0.7])
def test_closed_form_matches_matrices(rm13, theta):
    for idx in [(), (0,), (0, 1), (2, 5, 7)]:
        F = fam(rm13, idx)
        assert np.allclose(moments_at(F, theta), moments_matrix(F, theta), atol=1e-10)
    F = fam(concatenate_repetition(rm13, 2), (3, 4))
    assert np.allclose(moments_at(F, theta), moments_matrix(F, theta), atol=1e-9)


def test_slope_matches_finite_difference(rm13):
    F = fam(rm13, (0,))
    h = 1e-6
    for theta in (0.0, 0.2):
        fd = (moments_at(F, theta + h)[0] - moments_at(F, theta - h)[0]) / (2 * h)
        assert fd == pytest.approx(moments_at(F, theta)[1], rel=1e-6)


def test_symmetries(rm13):
    F = fam(rm13, (0, 6))
    for theta in (0.01, 0.3):
        b, s, q = moments_at(F, theta)
        bm, sm, qm = moments_at(F, -theta)
        assert bm == pytest.approx(-b, abs=1e-12)
        assert np.allclose(moments_at(F, theta + np.pi), (b, s, q), atol=1e-9)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 5.0])
def test_scale_invariance(rm13, c):
    F = fam(rm13, (0,))
    for theta in (0.0, 0.004, 0.03):
        assert mse(F, theta, c).value == pytest.approx(mse(F, theta).value, abs=1e-12)


def test_theorem3_bound_values(rm13):
    assert theorem3_bound(fam(rm13)) == Fraction(1, 32)
    assert theorem3_bound(fam(rm13, (0,))) == Fraction(1, 14)
    assert theorem3_bound(fam(rm13, (0, 1))) == Fraction(1, 6)
    with pytest.raises(DegenerateFamilyError):
        theorem3_bound(fam(repetition(5), (0,)))
    with pytest.raises(DisjointnessError):
        theorem3_bound(fam(BinaryCode.from_strings(["00", "01"]), (1,)))


def test_mse_at_zero_closed_form(rm13):
    assert mse_at_zero_exact(fam(rm13)) == Fraction(1, 32)
    assert mse_at_zero_exact(fam(rm13, (0,))) == Fraction(1, 28)
    assert mse_at_zero_exact(fam(rm13, (0, 1))) == Fraction(1, 24)
    for E in all_patterns(8, 3):
        F = partition(rm13, E)
        m = mse(F, 0.0)
        assert m.defined
        assert m.value == pytest.approx(float(mse_at_zero_exact(F)), abs=1e-12)
        assert m.value <= float(theorem3_bound(F)) + 1e-12


def test_qcrb_saturated_for_rm(rm13):
    for E in all_patterns(8, 2):
        F = partition(rm13, E)
        q = exact_qfi(build_rho(F))
        assert mse(F, 0.0).value >= 1 / q - 1e-9


def test_ghz_erasure_undefined():
    F = fam(repetition(6), (0,))
    m = mse(F, 0.0)
    assert not m.defined and np.isnan(m.value)
    assert mse_at_zero_exact(F) is None
    with pytest.raises(DegenerateFamilyError):
        fit_theta_squared(F)


def test_bias_over_linear_term(rm13):
    F = fam(rm13, (0,))
    slope0 = moments_at(F, 0.0)[1]
    ratios = [moments_at(F, th)[0] / (th * slope0) for th in (1e-3, 1e-4, 1e-5)]
    assert abs(ratios[-1] - 1) < 1e-8
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)


def test_slope_constant(rm13):
    # slope at 0 is 8 c sum p^2 V; with c = 2 the pure RM(1,3) probe gives 32
    assert moments_at(fam(rm13), 0.0)[1] == pytest.approx(32, abs=1e-9)
    assert moments_at(fam(rm13, (0,)), 0.0, coeff=1.0)[1] == pytest.approx(7, abs=1e-9)


def test_quadratic_fit(rm13):
    for idx in [(), (0,), (0, 1)]:
        K, resid = fit_theta_squared(fam(rm13, idx))
        assert resid < 0.05


def test_curve_csv(rm13):
    curve = moment_curves(fam(rm13, (0,)), np.linspace(-0.01, 0.01, 5))
    lines = curve.to_csv().splitlines()
    assert lines[0] == "theta,bias_raw,slope,second_moment,mse,defined"
    assert len(lines) == 6 and lines[3].startswith("0,0,")
    bad = moment_curves(fam(repetition(4), (0,)), [0.0]).to_csv().splitlines()
    assert bad[1].endswith(",,false")
