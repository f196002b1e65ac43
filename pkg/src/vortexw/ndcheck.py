"""Numerical certification of the two nondegeneracy conditions for a
domain Omega = f(D): (1) the best single-vortex configuration is a
nondegenerate critical point of both energies, and (2) the linearized
semi-stiff trace operator at that point is invertible on truncated
Fourier space.

The operator check is implemented for one vortex of degree one, where
the trace U(f, psi) is available in closed form through n_disc.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConformalPolyMap, FourierSeries, ND_TOL, OperatorMatrix, VortexConfiguration, validate_map
from .critpoint import CriticalPointReport, find_critical_w, find_max_hat_w
from .disc_energy import DiscEnergyContext, n_disc, w_disc_hess
from .errors import LeftAdmissibleRegion, NewtonDiverged, NoCriticalPointFound
from .transport import map_correction_hess

FD_STEP = 1e-4
FD_AGREEMENT = 1e-5
TOL_OP = 1e-3
STABILITY_REL = 1e-2


@dataclass(frozen=True)
class Nd1Report:
    alpha0: complex
    a0: complex
    hessian_hat: np.ndarray
    hessian_w: np.ndarray
    passed: bool
    critical: CriticalPointReport


def check_nd1(f: ConformalPolyMap, multistart: int = 16) -> Nd1Report:
    """Locate the maximizer of the transported hat_w and test that it is a
    nondegenerate critical point of both energies."""
    validate_map(f)
    try:
        rep = find_max_hat_w(f, multistart=multistart)
    except (NewtonDiverged, LeftAdmissibleRegion) as exc:
        raise NoCriticalPointFound(str(exc)) from exc
    cfg = rep.location
    ctx = DiscEnergyContext(cfg)
    psi0 = FourierSeries.zeros(ctx.trunc)
    h_w = w_disc_hess(ctx, cfg, psi0) + map_correction_hess(f, cfg)
    sv_hat = np.linalg.svd(rep.hessian, compute_uv=False)
    sv_w = np.linalg.svd(h_w, compute_uv=False)
    passed = bool(sv_hat[-1] > ND_TOL and sv_w[-1] > ND_TOL)
    alpha0 = cfg.points[0] if cfg.k == 1 else None
    return Nd1Report(
        alpha0=alpha0,
        a0=complex(f(alpha0)) if alpha0 is not None else None,
        hessian_hat=rep.hessian,
        hessian_w=h_w,
        passed=passed,
        critical=rep,
    )


def du_star_matrix_analytic_disc(trunc: int) -> OperatorMatrix:
    """Exact matrix of the linearized trace operator on the disc with the
    vortex at the origin: diagonal (-1, -1, 2, 2, 3, 3, ..., N, N) over the
    real modes {cos n theta, sin n theta}.

    The mode-1 block picks up a rank-two correction from the motion of the
    critical vortex; every higher mode sees only the stiff part n.
    """
    if trunc < 2:
        raise ValueError("trunc must be >= 2")
    diag = np.repeat(np.arange(1, trunc + 1), 2).astype(float)
    diag[:2] = -1.0
    return OperatorMatrix(
        matrix=np.diag(diag),
        mode_index=OperatorMatrix.standard_index(trunc),
        trunc=trunc,
    )


def _basis_mode(m: int, trunc: int) -> FourierSeries:
    """m-th real basis element in the standard index order."""
    n, kind = OperatorMatrix.standard_index(trunc)[m]
    cos = np.zeros(trunc)
    sin = np.zeros(trunc)
    (cos if kind == "cos" else sin)[n - 1] = 1.0
    return FourierSeries.from_real(cos=cos, sin=sin, trunc=trunc)


def _trace_coeffs(f, ctx, alpha0, psi) -> np.ndarray:
    """Real Fourier coefficients (cos_1, sin_1, ..., cos_N, sin_N) of the
    semi-stiff trace at the critical vortex position for boundary phase psi."""
    init = VortexConfiguration([alpha0], (1,))
    rep = find_critical_w(f, ctx, psi, init)
    tr = n_disc(ctx, rep.location, psi)
    out = np.empty(2 * ctx.trunc)
    out[0::2] = 2.0 * tr.coeffs[1:].real
    out[1::2] = -2.0 * tr.coeffs[1:].imag
    return out


def assemble_du_matrix(
    f: ConformalPolyMap, trunc: int, fd_step: float = FD_STEP
) -> OperatorMatrix:
    """Finite-difference assembly of the linearized trace operator.

    Column m is the central difference of psi -> U(f, psi) along the m-th
    real Fourier mode, evaluated through the inner critical-point solve.
    Single vortex of degree one only. If the full-step and half-step
    estimates disagree, the column is Richardson-extrapolated.
    """
    nd1 = check_nd1(f)
    if not nd1.passed or nd1.alpha0 is None:
        raise NoCriticalPointFound("no nondegenerate single-vortex critical point")
    alpha0 = nd1.alpha0
    ctx = DiscEnergyContext(VortexConfiguration([alpha0], (1,)), trunc=trunc)
    cols = []
    for m in range(2 * trunc):
        e = _basis_mode(m, trunc)

        def central(h):
            up = _trace_coeffs(f, ctx, alpha0, h * e)
            dn = _trace_coeffs(f, ctx, alpha0, (-h) * e)
            return (up - dn) / (2.0 * h)

        d_full = central(fd_step)
        d_half = central(0.5 * fd_step)
        if np.max(np.abs(d_full - d_half)) > FD_AGREEMENT:
            col = (4.0 * d_half - d_full) / 3.0
        else:
            col = d_full
        cols.append(col)
    return OperatorMatrix(
        matrix=np.column_stack(cols),
        mode_index=OperatorMatrix.standard_index(trunc),
        trunc=trunc,
    )


@dataclass(frozen=True)
class Nd2Report:
    smallest_singular_value: float
    smallest_singular_value_refined: float
    relative_change: float
    stable: bool
    passed: bool
    trunc: int


def check_nd2(f: ConformalPolyMap, trunc: int = 16) -> Nd2Report:
    """Invertibility of the assembled operator: smallest singular value
    above tolerance and stable under doubling the truncation.

    The doubling test is a heuristic surrogate for the untruncated
    operator; the report exposes the observed relative change.
    """
    sv = assemble_du_matrix(f, trunc).smallest_singular_value()
    sv2 = assemble_du_matrix(f, 2 * trunc).smallest_singular_value()
    rel = abs(sv2 - sv) / sv if sv > 0 else np.inf
    stable = rel < STABILITY_REL
    return Nd2Report(
        smallest_singular_value=sv,
        smallest_singular_value_refined=sv2,
        relative_change=rel,
        stable=stable,
        passed=bool(sv > TOL_OP and stable),
        trunc=trunc,
    )


def magic_determinant_check(w: complex) -> bool:
    """det(M_w - 2I) and det(M_w + 2I) agree, both equal to 4 - |w|^2,
    where M_w is the matrix of xi -> conj(w xi)."""
    w = complex(w)
    m = np.array([[w.real, -w.imag], [-w.imag, -w.real]])
    det_minus = float(np.linalg.det(m - 2.0 * np.eye(2)))
    det_plus = float(np.linalg.det(m + 2.0 * np.eye(2)))
    target = 4.0 - abs(w) ** 2
    scale = 1.0 + abs(target)
    return (
        abs(det_minus - det_plus) <= 1e-12 * scale
        and abs(det_minus - target) <= 1e-12 * scale
    )
