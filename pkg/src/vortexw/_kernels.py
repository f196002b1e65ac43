"""Hot-path field kernels with backend dispatch.

The phase-gradient field is evaluated on every quadrature node of the
punctured-energy integrals, so it gets a compiled implementation when the
extension built; the numpy fallback is always available and is the
reference for correctness.
"""
from __future__ import annotations

import numpy as np

try:  # pragma: no cover - depends on build environment
    from . import _fastkernels

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    _fastkernels = None
    BACKEND = "numpy"


def grad_phi_field_numpy(
    z: np.ndarray,
    alpha: np.ndarray,
    degrees: np.ndarray,
    alpha0: np.ndarray,
    degrees0: np.ndarray,
    gprime: np.ndarray,
) -> np.ndarray:
    """Gradient (as a complex number dx + i dy) of the total phase potential.

    Terms per vortex: the singular part (z - a)/|z - a|^2, the reflected
    part -a (1 - conj(a) z)/|1 - conj(a) z|^2, twice the reflected part of
    the reference vortices, minus i conj(P(z)) for the boundary-phase
    polynomial P = gprime.
    """
    zz = np.asarray(z, dtype=complex)
    out = np.zeros_like(zz)
    for a, d in zip(alpha, degrees):
        dz = zz - a
        u = 1.0 - np.conj(a) * zz
        out += d * (dz / (dz.real**2 + dz.imag**2) - a * u / (u.real**2 + u.imag**2))
    for a, d in zip(alpha0, degrees0):
        u = 1.0 - np.conj(a) * zz
        out += 2.0 * d * a * u / (u.real**2 + u.imag**2)
    if gprime.size:
        out -= 1j * np.conj(np.polynomial.polynomial.polyval(zz, gprime))
    return out


def grad_phi_field(z, alpha, degrees, alpha0, degrees0, gprime) -> np.ndarray:
    zz = np.asarray(z, dtype=complex)
    if _fastkernels is None:
        return grad_phi_field_numpy(zz, alpha, degrees, alpha0, degrees0, gprime)
    flat = np.ascontiguousarray(zz.ravel())
    out = np.empty_like(flat)
    _fastkernels.grad_phi_kernel(
        flat,
        np.ascontiguousarray(alpha, dtype=complex),
        np.ascontiguousarray(degrees, dtype=float),
        np.ascontiguousarray(alpha0, dtype=complex),
        np.ascontiguousarray(degrees0, dtype=float),
        np.ascontiguousarray(gprime, dtype=complex),
        out,
    )
    return out.reshape(zz.shape)
