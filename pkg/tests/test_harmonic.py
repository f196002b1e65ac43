import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexw import (
    AnnulusQuadrature,
    FourierSeries,
    InvalidRadius,
    h_half_seminorm_sq,
    harmonic_conjugate,
    integrate_annulus,
    normal_derivative_of_extension,
    tangential_derivative,
)


def _series(draw_floats):
    cos = draw_floats
    return FourierSeries.from_real(cos=cos[: len(cos) // 2], sin=cos[len(cos) // 2 :])


coeff_lists = st.lists(
    st.floats(-5, 5, allow_nan=False), min_size=2, max_size=12
)


class TestHarmonicConjugate:
    def test_cos_goes_to_sin(self):
        psi = FourierSeries.from_real(cos=[1.0])
        conj = harmonic_conjugate(psi)
        np.testing.assert_allclose(conj.cos_coeffs(), [0.0], atol=1e-15)
        np.testing.assert_allclose(conj.sin_coeffs(), [1.0], atol=1e-15)

    @given(coeff_lists)
    @settings(max_examples=60, deadline=None)
    def test_involution_is_minus_identity_mod_constants(self, vals):
        psi = _series(vals)
        twice = harmonic_conjugate(harmonic_conjugate(psi))
        np.testing.assert_allclose(
            twice.coeffs, -psi.with_zero_mean().coeffs, atol=1e-13
        )

    @given(coeff_lists)
    @settings(max_examples=60, deadline=None)
    def test_seminorm_preserved(self, vals):
        psi = _series(vals)
        assert h_half_seminorm_sq(harmonic_conjugate(psi)) == pytest.approx(
            h_half_seminorm_sq(psi), rel=1e-12, abs=1e-12
        )

    @given(coeff_lists)
    @settings(max_examples=30, deadline=None)
    def test_zero_mean(self, vals):
        psi = FourierSeries.from_real(a0=3.7, cos=vals)
        assert harmonic_conjugate(psi).mean == 0.0


class TestDerivatives:
    def test_tangential_on_cos(self):
        psi = FourierSeries.from_real(cos=[0.0, 1.0])  # cos(2 theta)
        d = tangential_derivative(psi)
        np.testing.assert_allclose(d.sin_coeffs(), [0.0, -2.0], atol=1e-14)

    def test_normal_on_modes(self):
        psi = FourierSeries.from_modes({1: 1.0, 3: 2.0j}, trunc=4)
        d = normal_derivative_of_extension(psi)
        assert d.coeff(1) == 1.0
        assert d.coeff(3) == 6.0j
        assert d.mean == 0.0

    def test_tangential_of_conjugate_equals_normal(self):
        # the Dirichlet-to-Neumann identity, mode by mode
        psi = FourierSeries.from_real(cos=[0.4, -0.1], sin=[0.0, 0.9])
        lhs = tangential_derivative(harmonic_conjugate(psi))
        rhs = normal_derivative_of_extension(psi)
        np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-14)


class TestSeminorm:
    def test_single_cos_mode(self):
        # |cos theta|^2_{1/2} = pi
        psi = FourierSeries.from_real(cos=[1.0])
        assert h_half_seminorm_sq(psi) == pytest.approx(np.pi)

    def test_mode_scaling(self):
        for n in (1, 2, 5):
            psi = FourierSeries.from_modes({n: 0.5}, trunc=8)
            assert h_half_seminorm_sq(psi) == pytest.approx(n * np.pi)

    def test_mean_does_not_contribute(self):
        a = FourierSeries.from_real(a0=0.0, cos=[1.0])
        b = FourierSeries.from_real(a0=9.0, cos=[1.0])
        assert h_half_seminorm_sq(a) == h_half_seminorm_sq(b)


class TestAnnulusQuadrature:
    def test_area(self):
        for rho in (0.0, 0.3, 0.9):
            area = integrate_annulus(lambda z: np.ones_like(z, dtype=float), rho)
            assert area == pytest.approx(np.pi * (1 - rho**2), rel=1e-12)

    def test_singular_moment(self):
        # integral of 1/r^2 over the annulus = 2 pi log(1/rho)
        val = integrate_annulus(lambda z: 1.0 / np.abs(z) ** 2, 0.25)
        assert val == pytest.approx(2 * np.pi * np.log(4.0), rel=1e-10)

    def test_harmonic_moment_vanishes(self):
        val = integrate_annulus(lambda z: z.real, 0.5)
        assert abs(val) < 1e-12

    def test_reused_rule_must_match_rho(self):
        quad = AnnulusQuadrature.build(0.2)
        with pytest.raises(InvalidRadius):
            integrate_annulus(lambda z: np.abs(z), 0.3, quad=quad)

    def test_bad_radius(self):
        with pytest.raises(InvalidRadius):
            AnnulusQuadrature.build(1.0)
        with pytest.raises(InvalidRadius):
            AnnulusQuadrature.build(-0.1)

    def test_deterministic(self):
        f = lambda z: np.exp(-np.abs(z) ** 2)  # noqa: E731
        assert integrate_annulus(f, 0.1) == integrate_annulus(f, 0.1)
