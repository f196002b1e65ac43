"""Fourier-side harmonic calculus on the unit circle and disc.

Everything acts mode-wise on truncated series: the harmonic extension of
a mode e^{i n theta} is r^{|n|} e^{i n theta}, which makes conjugation,
boundary derivatives and the H^{1/2} seminorm exact coefficient maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import FourierSeries
from .errors import InvalidRadius

DEFAULT_RADIAL = 128
DEFAULT_ANGULAR = 512


def harmonic_conjugate(psi: FourierSeries) -> FourierSeries:
    """Conjugate trace psi*: coefficient map a_n -> -i sign(n) a_n, a_0 -> 0.

    The harmonic extensions then pair into a holomorphic psi + i psi*.
    """
    c = psi.coeffs.copy()
    c[0] = 0.0
    c[1:] *= -1j
    return FourierSeries(c)


def tangential_derivative(psi: FourierSeries) -> FourierSeries:
    """d/dtheta on the circle: a_n -> i n a_n."""
    n = np.arange(psi.trunc + 1)
    return FourierSeries(1j * n * psi.coeffs)


def normal_derivative_of_extension(psi: FourierSeries) -> FourierSeries:
    """Trace of d/dr of the harmonic extension at r = 1: a_n -> |n| a_n."""
    n = np.arange(psi.trunc + 1)
    return FourierSeries(n * psi.coeffs)


def h_half_seminorm_sq(psi: FourierSeries) -> float:
    """Dirichlet energy of the harmonic extension: 2 pi sum |n| |a_n|^2."""
    n = np.arange(1, psi.trunc + 1)
    return float(4.0 * np.pi * np.sum(n * np.abs(psi.coeffs[1:]) ** 2))


@dataclass(frozen=True)
class AnnulusQuadrature:
    """Tensor rule on the annulus rho <= |z| <= 1: Gauss-Legendre radially,
    uniform (trapezoid) angularly."""

    rho: float
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_nodes: np.ndarray

    @classmethod
    def build(
        cls, rho: float, n_radial: int = DEFAULT_RADIAL, n_angular: int = DEFAULT_ANGULAR
    ) -> "AnnulusQuadrature":
        if not 0.0 <= rho < 1.0:
            raise InvalidRadius(f"rho = {rho} outside [0, 1)")
        x, w = np.polynomial.legendre.leggauss(n_radial)
        r = 0.5 * (rho + 1.0) + 0.5 * (1.0 - rho) * x
        wr = 0.5 * (1.0 - rho) * w
        theta = np.linspace(0.0, 2 * np.pi, n_angular, endpoint=False)
        return cls(
            rho=float(rho),
            radial_nodes=r,
            radial_weights=wr,
            angular_nodes=theta,
        )


def integrate_annulus(
    field: Callable[[np.ndarray], np.ndarray],
    rho: float,
    quad: AnnulusQuadrature | None = None,
) -> float:
    """Integrate field(z) dA over the annulus rho <= |z| <= 1.

    field must accept a complex ndarray and return real values of the
    same shape.
    """
    if quad is None:
        quad = AnnulusQuadrature.build(rho)
    elif abs(quad.rho - rho) > 1e-14:
        raise InvalidRadius(
            f"quadrature built for rho={quad.rho}, asked for rho={rho}"
        )
    r = quad.radial_nodes[:, None]
    theta = quad.angular_nodes[None, :]
    z = r * np.exp(1j * theta)
    vals = np.asarray(field(z), dtype=float)
    dtheta = 2 * np.pi / quad.angular_nodes.size
    # fixed summation order keeps the result deterministic
    return float(np.sum(quad.radial_weights @ (vals * r)) * dtheta)
