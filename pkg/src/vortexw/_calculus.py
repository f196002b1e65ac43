"""Wirtinger-calculus helpers for real functions of complex points.

For a real-valued F of complex variables u = alpha_j, the real gradient
with respect to (Re u, Im u) is 2 conj(dF/du), and the 2x2 real Hessian
block coupling u and v is determined by the pair (F_uv, F_{u vbar}).
"""
from __future__ import annotations

import numpy as np


def grad_to_vec(wirtinger_du: np.ndarray) -> np.ndarray:
    """Pack complex Wirtinger derivatives (dF/du_j) into the real 2k-gradient."""
    g = 2.0 * np.conj(np.atleast_1d(wirtinger_du))
    out = np.empty(2 * g.size)
    out[0::2] = g.real
    out[1::2] = g.imag
    return out


def hess_block(f_uv: complex, f_uvbar: complex) -> np.ndarray:
    """Real 2x2 Hessian block from the mixed Wirtinger derivatives."""
    a, c = complex(f_uv), complex(f_uvbar)
    return 2.0 * np.array(
        [
            [a.real + c.real, -a.imag + c.imag],
            [-a.imag - c.imag, -a.real + c.real],
        ]
    )


def assemble_hessian(k: int, f_uv, f_uvbar) -> np.ndarray:
    """Assemble the full 2k x 2k Hessian from k x k Wirtinger arrays.

    f_uv[j, l] = d^2 F / (d alpha_j d alpha_l),
    f_uvbar[j, l] = d^2 F / (d alpha_j d conj(alpha_l)).
    """
    h = np.zeros((2 * k, 2 * k))
    for j in range(k):
        for l in range(k):
            h[2 * j : 2 * j + 2, 2 * l : 2 * l + 2] = hess_block(
                f_uv[j, l], f_uvbar[j, l]
            )
    return 0.5 * (h + h.T)


def m_matrix(w: complex) -> np.ndarray:
    """Matrix of the R-linear map xi -> conj(w xi)."""
    w = complex(w)
    return np.array([[w.real, -w.imag], [-w.imag, -w.real]])
