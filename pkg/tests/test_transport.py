import numpy as np
import pytest

from vortexw import (
    ConformalPolyMap,
    DiscEnergyContext,
    FourierSeries,
    VortexConfiguration,
    hat_w,
    log_fprime_hessian,
    n_disc,
    transport_hat_w,
    transport_hat_w_grad,
    transport_hat_w_hess,
    transport_n,
    transport_w,
    transport_w_grad,
    w_disc,
)

IDENTITY = ConformalPolyMap.identity()


def mobius(beta, z):
    return (z + beta) / (1 + np.conj(beta) * z)


def mobius_prime(beta, z):
    return (1 - abs(beta) ** 2) / (1 + np.conj(beta) * z) ** 2


class TestTransportHatW:
    def test_identity_is_noop(self):
        cfg = VortexConfiguration([0.3 + 0.1j, -0.2], (1, 1))
        assert transport_hat_w(IDENTITY, cfg) == hat_w(cfg)

    def test_scaling(self):
        for r in (0.5, 2.0, 3.5):
            val = transport_hat_w(
                ConformalPolyMap.scaling(r), VortexConfiguration([0.0], (1,))
            )
            assert val == pytest.approx(np.pi * np.log(r))

    def test_mobius_coherence(self):
        # both sides of the automorphism identity in closed form
        rng = np.random.default_rng(42)
        for _ in range(25):
            beta = 0.5 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
            pts = 0.6 * (rng.uniform(-1, 1, 2) + 1j * rng.uniform(-1, 1, 2))
            cfg = VortexConfiguration(pts, (1, 1))
            lhs = hat_w(cfg) + np.pi * np.sum(
                np.log(np.abs(mobius_prime(beta, pts)))
            )
            rhs = hat_w(VortexConfiguration(mobius(beta, pts), (1, 1)))
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_rotation_composition_coherence(self):
        # m(z) = e^{i phi} z composed into a polynomial map stays polynomial
        phi = 0.9
        f = ConformalPolyMap([0.1, 1.0, 0.08])
        rot = np.exp(1j * phi)
        f_rot = ConformalPolyMap(f.coeffs * rot ** np.arange(3))
        pts = np.array([0.25 - 0.3j, -0.1 + 0.4j])
        cfg = VortexConfiguration(pts, (1, 1))
        lhs = transport_hat_w(f_rot, cfg)
        rhs = transport_hat_w(f, VortexConfiguration(rot * pts, (1, 1)))
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_grad_matches_fd(self):
        f = ConformalPolyMap([0.0, 1.0, 0.1, -0.02j])
        cfg = VortexConfiguration([0.3 + 0.2j], (1,))
        g = transport_hat_w_grad(f, cfg)
        h = 1e-6
        fd = []
        for step in (h, 1j * h):
            up = transport_hat_w(f, cfg.with_points([cfg.points[0] + step]))
            dn = transport_hat_w(f, cfg.with_points([cfg.points[0] - step]))
            fd.append((up - dn) / (2 * h))
        np.testing.assert_allclose(g, fd, rtol=1e-6, atol=1e-8)

    def test_hess_matches_fd(self):
        f = ConformalPolyMap([0.0, 1.0, 0.05, 0.03])
        cfg = VortexConfiguration([0.2 - 0.25j], (1,))
        hess = transport_hat_w_hess(f, cfg)
        h = 1e-6
        cols = []
        for step in (h, 1j * h):
            up = transport_hat_w_grad(f, cfg.with_points([cfg.points[0] + step]))
            dn = transport_hat_w_grad(f, cfg.with_points([cfg.points[0] - step]))
            cols.append((up - dn) / (2 * h))
        fdh = np.column_stack(cols)
        np.testing.assert_allclose(hess, 0.5 * (fdh + fdh.T), rtol=1e-5, atol=1e-6)


class TestTransportW:
    def test_identity_is_noop(self):
        ctx = DiscEnergyContext(VortexConfiguration([0.1], (1,)))
        cfg = VortexConfiguration([0.3], (1,))
        psi = FourierSeries.from_real(cos=[0.2], trunc=ctx.trunc)
        assert transport_w(IDENTITY, ctx, cfg, psi) == w_disc(ctx, cfg, psi)

    def test_grad_correction_at_origin(self):
        # quadratic map: correction pi * conj(f''/f') = 2 pi conj(eps)
        eps = 0.04 + 0.01j
        f = ConformalPolyMap([0.0, 1.0, eps])
        ctx = DiscEnergyContext(VortexConfiguration([0.0], (1,)))
        cfg = VortexConfiguration([0.0], (1,))
        psi0 = FourierSeries.zeros(ctx.trunc)
        g = transport_w_grad(f, ctx, cfg, psi0)
        # w_disc part vanishes at the base origin
        np.testing.assert_allclose(
            g, [2 * np.pi * eps.real, -2 * np.pi * eps.imag], atol=1e-12
        )


class TestLogFprimeHessian:
    def test_identity_zero(self):
        np.testing.assert_allclose(
            log_fprime_hessian(IDENTITY, 0.3 + 0.1j), 0.0, atol=1e-15
        )

    def test_cubic_fixture(self):
        eps = 0.03
        f = ConformalPolyMap([0.0, 1.0, 0.0, eps])
        w = 6 * eps  # f'''(0) / f'(0)
        expected = np.pi * np.array([[w, 0.0], [0.0, -w]])
        np.testing.assert_allclose(log_fprime_hessian(f, 0.0), expected, atol=1e-14)

    def test_matches_fd(self):
        f = ConformalPolyMap([0.0, 1.0, 0.07, -0.02])
        a = 0.2 - 0.3j
        hess = log_fprime_hessian(f, a)
        h = 1e-5

        def val(p):
            return np.pi * np.log(np.abs(complex(f.derivative(p))))

        fd = np.empty((2, 2))
        steps = (h, 1j * h)
        for i, si in enumerate(steps):
            for j, sj in enumerate(steps):
                fd[i, j] = (
                    val(a + si + sj) - val(a + si - sj) - val(a - si + sj) + val(a - si - sj)
                ) / (4 * h * h)
        np.testing.assert_allclose(hess, fd, atol=1e-5)


class TestTransportN:
    def test_identity_unchanged(self):
        ctx = DiscEnergyContext(VortexConfiguration([0.1j], (1,)), trunc=16)
        cfg = VortexConfiguration([0.3], (1,))
        psi = FourierSeries.from_real(cos=[0.2], sin=[0.1], trunc=16)
        base = n_disc(ctx, cfg, psi)
        out = transport_n(IDENTITY, ctx, cfg, psi)
        np.testing.assert_allclose(out.coeffs, base.coeffs, atol=1e-15)

    def test_scaling_divides_by_r(self):
        r = 2.5
        ctx = DiscEnergyContext(VortexConfiguration([0.0], (1,)), trunc=16)
        cfg = VortexConfiguration([0.4], (1,))
        psi = FourierSeries.zeros(16)
        base = n_disc(ctx, cfg, psi)
        out = transport_n(ConformalPolyMap.scaling(r), ctx, cfg, psi)
        np.testing.assert_allclose(out.coeffs, base.coeffs / r, atol=1e-12)

    def test_weighted_integral_vanishes(self):
        # arc-length integral over the image boundary is zero
        rng = np.random.default_rng(9)
        f = ConformalPolyMap([0.0, 1.0, 0.12, 0.02j])
        ctx = DiscEnergyContext(VortexConfiguration([0.15 - 0.1j], (1,)), trunc=32)
        for _ in range(5):
            cfg = VortexConfiguration(
                [0.6 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))], (1,)
            )
            psi = FourierSeries.from_real(
                cos=rng.normal(0, 0.5, 3), sin=rng.normal(0, 0.5, 3), trunc=32
            )
            tn = transport_n(f, ctx, cfg, psi)
            theta = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
            ds = np.abs(f.derivative(np.exp(1j * theta)))
            assert abs(np.mean(tn.evaluate(theta) * ds)) < 1e-10
