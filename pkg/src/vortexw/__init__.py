"""Renormalized vortex energies on the unit disc and on polynomial
conformal images of it: closed-form values, derivatives, critical-point
search, nondegeneracy certification, and a quadrature cross-check of the
small-core energy expansion."""

from ._kernels import BACKEND
from .core import (
    BOUNDARY_MARGIN,
    ConformalPolyMap,
    DEFAULT_TRUNC,
    EnergyReport,
    FourierSeries,
    ND_TOL,
    OperatorMatrix,
    SEPARATION_MARGIN,
    VortexConfiguration,
    validate_configuration,
    validate_map,
)
from .critpoint import (
    CriticalPointReport,
    continue_critical,
    find_critical_hat_w,
    find_critical_w,
    find_max_hat_w,
)
from .disc_energy import (
    DiscEnergyContext,
    canonical_datum_density,
    hat_phi,
    hat_w,
    hat_w_grad,
    hat_w_hess,
    n_disc,
    psi_star_base_boundary,
    psi_star_base_grad,
    w_disc,
    w_disc_grad,
    w_disc_hess,
)
from .errors import (
    BoundaryNotSimple,
    DegenerateDerivative,
    EmptyConfiguration,
    EvaluationAtVortex,
    InvalidRadius,
    LeftAdmissibleRegion,
    NewtonDiverged,
    NoCriticalPointFound,
    NondegeneracyLost,
    TruncationUnstable,
    VortexTooCloseToBoundary,
    VortexwError,
    VorticesCollide,
)
from .expansion import ExpansionReport, expansion_report, grad_phi_ag, punctured_energy
from .harmonic import (
    AnnulusQuadrature,
    h_half_seminorm_sq,
    harmonic_conjugate,
    integrate_annulus,
    normal_derivative_of_extension,
    tangential_derivative,
)
from .ndcheck import (
    Nd1Report,
    Nd2Report,
    assemble_du_matrix,
    check_nd1,
    check_nd2,
    du_star_matrix_analytic_disc,
    magic_determinant_check,
)
from .transport import (
    log_fprime_hessian,
    transport_hat_w,
    transport_hat_w_grad,
    transport_hat_w_hess,
    transport_n,
    transport_w,
    transport_w_grad,
    transport_w_hess,
)

__version__ = "0.1.0"

__all__ = [
    "AnnulusQuadrature",
    "BACKEND",
    "BOUNDARY_MARGIN",
    "BoundaryNotSimple",
    "ConformalPolyMap",
    "CriticalPointReport",
    "DEFAULT_TRUNC",
    "DegenerateDerivative",
    "DiscEnergyContext",
    "EmptyConfiguration",
    "EnergyReport",
    "EvaluationAtVortex",
    "ExpansionReport",
    "FourierSeries",
    "InvalidRadius",
    "LeftAdmissibleRegion",
    "ND_TOL",
    "Nd1Report",
    "Nd2Report",
    "NewtonDiverged",
    "NoCriticalPointFound",
    "NondegeneracyLost",
    "OperatorMatrix",
    "SEPARATION_MARGIN",
    "TruncationUnstable",
    "VortexConfiguration",
    "VortexTooCloseToBoundary",
    "VortexwError",
    "VorticesCollide",
    "assemble_du_matrix",
    "canonical_datum_density",
    "check_nd1",
    "check_nd2",
    "continue_critical",
    "du_star_matrix_analytic_disc",
    "expansion_report",
    "find_critical_hat_w",
    "find_critical_w",
    "find_max_hat_w",
    "grad_phi_ag",
    "h_half_seminorm_sq",
    "harmonic_conjugate",
    "hat_phi",
    "hat_w",
    "hat_w_grad",
    "hat_w_hess",
    "integrate_annulus",
    "log_fprime_hessian",
    "magic_determinant_check",
    "n_disc",
    "normal_derivative_of_extension",
    "psi_star_base_boundary",
    "psi_star_base_grad",
    "punctured_energy",
    "tangential_derivative",
    "transport_hat_w",
    "transport_hat_w_grad",
    "transport_hat_w_hess",
    "transport_n",
    "transport_w",
    "transport_w_grad",
    "transport_w_hess",
    "validate_configuration",
    "validate_map",
    "w_disc",
    "w_disc_grad",
    "w_disc_hess",
]
