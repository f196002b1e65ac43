"""Explicit unit-disc quantities: the singular potential, the prescribed
degree energy and its derivatives, the canonical boundary datum, the
phase-relative boundary traces, the full energy W, and the semi-stiff
normal trace N.

Conventions. Configurations alpha live in the open unit disc; the
reference configuration alpha^0 of a DiscEnergyContext fixes the
canonical boundary datum against which boundary phases psi are measured.
All boundary functions are truncated Fourier series on the circle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._calculus import assemble_hessian, grad_to_vec
from .core import DEFAULT_TRUNC, FourierSeries, VortexConfiguration, validate_configuration
from .errors import EvaluationAtVortex
from .harmonic import h_half_seminorm_sq, harmonic_conjugate

_VORTEX_EVAL_TOL = 1e-12


@dataclass(frozen=True)
class DiscEnergyContext:
    """Reference configuration alpha^0 (defining the canonical datum) plus
    the series truncation used for all expansions."""

    base: VortexConfiguration
    trunc: int = DEFAULT_TRUNC

    def __post_init__(self):
        validate_configuration(self.base)
        if self.trunc < 1:
            raise ValueError("trunc must be >= 1")


def hat_phi(cfg: VortexConfiguration, z) -> np.ndarray:
    """Singular potential sum_j d_j (log|z - a_j| - log|1 - conj(a_j) z|).

    Vanishes on the unit circle; raises EvaluationAtVortex at the a_j.
    """
    zz = np.asarray(z, dtype=complex)
    a = cfg.points_array()
    d = cfg.degrees_array()
    dist = np.abs(zz[..., None] - a)
    if np.any(dist < _VORTEX_EVAL_TOL):
        raise EvaluationAtVortex("z coincides with a vortex")
    vals = d * (np.log(dist) - np.log(np.abs(1.0 - np.conj(a) * zz[..., None])))
    out = np.sum(vals, axis=-1)
    return out if out.ndim else float(out)


def hat_w(cfg: VortexConfiguration) -> float:
    """Renormalized energy of the canonical datum (prescribed-degree energy)."""
    validate_configuration(cfg)
    a = cfg.points_array()
    d = cfg.degrees_array()
    k = cfg.k
    total = np.sum(d**2 * np.log(1.0 - np.abs(a) ** 2))
    for j in range(k):
        for l in range(k):
            if l == j:
                continue
            total -= d[j] * d[l] * np.log(np.abs(a[j] - a[l]))
            total += d[j] * d[l] * np.log(np.abs(1.0 - np.conj(a[j]) * a[l]))
    return float(np.pi * total)


def _hat_w_wirtinger(cfg: VortexConfiguration):
    """First and second Wirtinger derivatives of hat_w."""
    a = cfg.points_array()
    d = cfg.degrees_array()
    k = cfg.k
    du = np.zeros(k, dtype=complex)
    duv = np.zeros((k, k), dtype=complex)
    duvbar = np.zeros((k, k), dtype=complex)
    for j in range(k):
        omr = 1.0 - abs(a[j]) ** 2
        du[j] = -d[j] ** 2 * np.conj(a[j]) / omr
        duv[j, j] = -d[j] ** 2 * np.conj(a[j]) ** 2 / omr**2
        duvbar[j, j] = -d[j] ** 2 / omr**2
        for l in range(k):
            if l == j:
                continue
            diff = a[j] - a[l]
            q = 1.0 - a[j] * np.conj(a[l])
            du[j] += -d[j] * d[l] / diff - d[j] * d[l] * np.conj(a[l]) / q
            duv[j, j] += d[j] * d[l] / diff**2 - d[j] * d[l] * np.conj(a[l]) ** 2 / q**2
            duv[j, l] = -d[j] * d[l] / diff**2
            duvbar[j, l] = -d[j] * d[l] / q**2
    return np.pi * du, np.pi * duv, np.pi * duvbar


def hat_w_grad(cfg: VortexConfiguration) -> np.ndarray:
    """Analytic gradient of hat_w as a real 2k-vector (x1, y1, x2, y2, ...)."""
    validate_configuration(cfg)
    du, _, _ = _hat_w_wirtinger(cfg)
    return grad_to_vec(du)


def hat_w_hess(cfg: VortexConfiguration) -> np.ndarray:
    """Analytic Hessian of hat_w, a symmetric 2k x 2k matrix."""
    validate_configuration(cfg)
    _, duv, duvbar = _hat_w_wirtinger(cfg)
    return assemble_hessian(cfg.k, duv, duvbar)


def canonical_datum_density(cfg: VortexConfiguration, trunc: int = DEFAULT_TRUNC) -> FourierSeries:
    """Boundary density g^a wedge dg^a/dtau = normal derivative of the
    singular potential; its circle mean equals the total degree d."""
    validate_configuration(cfg)
    a = cfg.points_array()
    d = cfg.degrees_array()
    c = np.zeros(trunc + 1, dtype=complex)
    c[0] = cfg.total_degree
    n = np.arange(1, trunc + 1)
    c[1:] = np.sum(d[:, None] * np.conj(a[:, None]) ** n[None, :], axis=0)
    return FourierSeries(c)


def psi_star_base_boundary(ctx: DiscEnergyContext, cfg: VortexConfiguration) -> FourierSeries:
    """Zero-mean boundary trace of the conjugate phase relating the canonical
    data of cfg and of the reference configuration."""
    validate_configuration(cfg)
    b = _base_shift_coeffs(ctx, cfg)
    c = np.zeros(ctx.trunc + 1, dtype=complex)
    c[1:] = b
    return FourierSeries(c)


def _base_shift_coeffs(ctx: DiscEnergyContext, cfg: VortexConfiguration) -> np.ndarray:
    """Coefficients b_n (n = 1..trunc) of the conjugate phase trace:
    b_n = sum_j d_j (conj(alpha_j)^n - conj(alpha^0_j)^n) / n."""
    a = cfg.points_array()
    a0 = ctx.base.points_array()
    d = cfg.degrees_array()
    n = np.arange(1, ctx.trunc + 1)
    pw = np.conj(a[:, None]) ** n[None, :] - np.conj(a0[:, None]) ** n[None, :]
    return np.sum(d[:, None] * pw, axis=0) / n


def psi_star_base_grad(ctx: DiscEnergyContext, cfg: VortexConfiguration, z) -> np.ndarray:
    """Gradient (as C = R^2) of the harmonic conjugate phase at z in the
    closed disc; identically zero when cfg equals the reference."""
    zz = np.asarray(z, dtype=complex)
    a = cfg.points_array()
    a0 = ctx.base.points_array()
    d = cfg.degrees_array()

    def term(al):
        q = 1.0 - np.conj(al) * zz[..., None]
        return al * q / np.abs(q) ** 2

    out = 2.0 * np.sum(d * (term(a) - term(a0)), axis=-1)
    return out if out.ndim else complex(out)


def _composite_coeffs(ctx: DiscEnergyContext, cfg: VortexConfiguration, psi: FourierSeries) -> np.ndarray:
    """Coefficients u_n = b_n + c_n of the total conjugate phase trace,
    where c_n comes from the user phase psi (c_n = -i a_n)."""
    u = _base_shift_coeffs(ctx, cfg).copy()
    m = min(psi.trunc, ctx.trunc)
    u[:m] += -1j * psi.coeffs[1 : m + 1]
    return u


def w_disc(ctx: DiscEnergyContext, cfg: VortexConfiguration, psi: FourierSeries) -> float:
    """Full renormalized energy W(alpha, g^0 e^{i psi}) on the disc:
    hat_w plus half the squared H^{1/2} seminorm of the composite phase."""
    validate_configuration(cfg)
    composite = psi_star_base_boundary(ctx, cfg) + harmonic_conjugate(psi)
    return hat_w(cfg) + 0.5 * h_half_seminorm_sq(composite)


def _seminorm_term_wirtinger(ctx, cfg, psi):
    """Wirtinger derivatives of S(alpha) = 2 pi sum n |b_n(alpha) + c_n|^2."""
    a = cfg.points_array()
    d = cfg.degrees_array()
    k = cfg.k
    n = np.arange(1, ctx.trunc + 1)
    u = _composite_coeffs(ctx, cfg, psi)
    # powers alpha_j^(n-1)
    pw = a[:, None] ** (n[None, :] - 1)
    du = 2.0 * np.pi * d * np.sum(n[None, :] * u[None, :] * pw, axis=1)
    duv = np.zeros((k, k), dtype=complex)
    duvbar = np.zeros((k, k), dtype=complex)
    pw2 = np.zeros_like(pw)
    pw2[:, 1:] = a[:, None] ** (n[None, 1:] - 2)
    for j in range(k):
        duv[j, j] = 2.0 * np.pi * d[j] * np.sum(n * (n - 1) * u * pw2[j])
        for l in range(k):
            duvbar[j, l] = (
                2.0 * np.pi * d[j] * d[l] * np.sum(n * pw[j] * np.conj(pw[l]))
            )
    return du, duv, duvbar


def w_disc_grad(ctx: DiscEnergyContext, cfg: VortexConfiguration, psi: FourierSeries) -> np.ndarray:
    """Analytic alpha-gradient of w_disc as a real 2k-vector."""
    validate_configuration(cfg)
    du_hat, _, _ = _hat_w_wirtinger(cfg)
    du_s, _, _ = _seminorm_term_wirtinger(ctx, cfg, psi)
    return grad_to_vec(du_hat + du_s)


def w_disc_hess(ctx: DiscEnergyContext, cfg: VortexConfiguration, psi: FourierSeries) -> np.ndarray:
    """Analytic alpha-Hessian of w_disc, symmetric 2k x 2k."""
    validate_configuration(cfg)
    _, duv_h, duvbar_h = _hat_w_wirtinger(cfg)
    _, duv_s, duvbar_s = _seminorm_term_wirtinger(ctx, cfg, psi)
    return assemble_hessian(cfg.k, duv_h + duv_s, duvbar_h + duvbar_s)


def n_disc(ctx: DiscEnergyContext, cfg: VortexConfiguration, psi: FourierSeries) -> FourierSeries:
    """Semi-stiff trace N(alpha, g^0 e^{i psi}): the boundary function whose
    vanishing characterizes prescribed-degree critical points. Zero mean by
    construction; mode n coefficient n a_n + i n b_n."""
    validate_configuration(cfg)
    b = _base_shift_coeffs(ctx, cfg)
    n = np.arange(1, ctx.trunc + 1)
    c = np.zeros(ctx.trunc + 1, dtype=complex)
    m = min(psi.trunc, ctx.trunc)
    c[1 : m + 1] = n[:m] * psi.coeffs[1 : m + 1]
    c[1:] += 1j * n * b
    return FourierSeries(c)
