"""Transport of the disc quantities onto Omega = f(D).

Every Omega-side quantity is represented by pullback to disc coordinates;
the energies pick up the exact correction pi sum_j d_j^2 log|f'(alpha_j)|
and the normal trace a 1/|f'| weight on the circle.
"""
from __future__ import annotations

import numpy as np

from ._calculus import grad_to_vec, m_matrix
from .core import ConformalPolyMap, FourierSeries, VortexConfiguration, validate_configuration
from .disc_energy import (
    DiscEnergyContext,
    hat_w,
    hat_w_grad,
    hat_w_hess,
    n_disc,
    w_disc,
    w_disc_grad,
    w_disc_hess,
)
from .errors import DegenerateDerivative


def _log_fprime_sum(f: ConformalPolyMap, cfg: VortexConfiguration) -> float:
    a = cfg.points_array()
    d = cfg.degrees_array()
    fp = f.derivative(a)
    if np.any(np.abs(fp) == 0.0):
        raise DegenerateDerivative("f' vanishes at a vortex")
    return float(np.pi * np.sum(d**2 * np.log(np.abs(fp))))


def map_correction_grad(f: ConformalPolyMap, cfg: VortexConfiguration) -> np.ndarray:
    """Gradient of alpha -> pi sum d_j^2 log|f'(alpha_j)| (real 2k-vector)."""
    a = cfg.points_array()
    d = cfg.degrees_array()
    fp = f.derivative(a)
    fpp = f.derivative(a, 2)
    # d/dalpha (pi log|f'|) = pi f''/(2 f'); real gradient doubles and conjugates
    return grad_to_vec(np.pi * d**2 * fpp / (2.0 * fp))


def log_fprime_hessian(f: ConformalPolyMap, alpha: complex) -> np.ndarray:
    """Hessian of alpha -> pi log|f'(alpha)| at a single point."""
    fp = complex(f.derivative(alpha))
    if fp == 0.0:
        raise DegenerateDerivative(f"f'({alpha}) = 0")
    fpp = complex(f.derivative(alpha, 2))
    f3 = complex(f.derivative(alpha, 3))
    # second Wirtinger derivative of pi log|f'|; the mixed derivative vanishes
    p = 0.5 * np.pi * (f3 * fp - fpp**2) / fp**2
    return 2.0 * m_matrix(p)


def map_correction_hess(f: ConformalPolyMap, cfg: VortexConfiguration) -> np.ndarray:
    """Block-diagonal Hessian of the map correction term."""
    k = cfg.k
    d = cfg.degrees_array()
    h = np.zeros((2 * k, 2 * k))
    for j in range(k):
        h[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = d[j] ** 2 * log_fprime_hessian(
            f, cfg.points[j]
        )
    return h


def transport_hat_w(f: ConformalPolyMap, cfg: VortexConfiguration) -> float:
    """hat_w on Omega = f(D), evaluated at a = f(alpha) in disc coordinates."""
    validate_configuration(cfg)
    return hat_w(cfg) + _log_fprime_sum(f, cfg)


def transport_hat_w_grad(f: ConformalPolyMap, cfg: VortexConfiguration) -> np.ndarray:
    validate_configuration(cfg)
    return hat_w_grad(cfg) + map_correction_grad(f, cfg)


def transport_hat_w_hess(f: ConformalPolyMap, cfg: VortexConfiguration) -> np.ndarray:
    validate_configuration(cfg)
    return hat_w_hess(cfg) + map_correction_hess(f, cfg)


def transport_w(
    f: ConformalPolyMap,
    ctx: DiscEnergyContext,
    cfg: VortexConfiguration,
    psi: FourierSeries,
) -> float:
    """Full energy on Omega in disc coordinates."""
    validate_configuration(cfg)
    return w_disc(ctx, cfg, psi) + _log_fprime_sum(f, cfg)


def transport_w_grad(f, ctx, cfg, psi) -> np.ndarray:
    validate_configuration(cfg)
    return w_disc_grad(ctx, cfg, psi) + map_correction_grad(f, cfg)


def transport_w_hess(f, ctx, cfg, psi) -> np.ndarray:
    validate_configuration(cfg)
    return w_disc_hess(ctx, cfg, psi) + map_correction_hess(f, cfg)


def transport_n(
    f: ConformalPolyMap,
    ctx: DiscEnergyContext,
    cfg: VortexConfiguration,
    psi: FourierSeries,
) -> FourierSeries:
    """Pullback to the circle of the Omega-side semi-stiff trace:
    N_Omega(f(e^{i theta})) = N_disc(theta) / |f'(e^{i theta})|.

    The arc-length integral of the result against |f'| dtheta vanishes.
    """
    nd = n_disc(ctx, cfg, psi)
    if f.is_identity():
        return nd
    m = 4 * max(nd.trunc, f.degree) + 4
    theta = np.linspace(0.0, 2 * np.pi, m, endpoint=False)
    vals = nd.evaluate(theta) / np.abs(f.derivative(np.exp(1j * theta)))
    spec = np.fft.rfft(vals) / m
    c = np.zeros(nd.trunc + 1, dtype=complex)
    c[0] = spec[0].real
    c[1 : nd.trunc + 1] = spec[1 : nd.trunc + 1]
    return FourierSeries(c)
