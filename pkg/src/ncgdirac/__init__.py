"""ncgdirac: exact symbolic engine for quasi-commutative Riemannian spin geometry.

Builds R-matrix quasi-commutative algebras with normal-form rewriting, the
Riemannian and spinorial layers on their free form modules, the level-set
hypersurface induction producing quotient Dirac operators, and the numeric
spectrum of the induced torus operator.
"""

from .scalars import GaussianRational, Scalar
from .algebra import (
    AlgebraElement,
    Presentation,
    PresentationError,
    RewriteBudgetExceeded,
    RewriteRule,
    brute_force_normal_form,
    extend_presentation,
    is_central,
    normal_form,
)
from .tensors import (
    BasisWord,
    LeftLinearMap,
    ShapeError,
    TensorElement,
    check_right_linearity,
    differential,
    partial_coeffs,
    right_mul,
    tensor,
)
from .geometry import Calculus, Connection, Metric, tensor_connection_apply, verify_metric
from .spin import SpinStructure, StructureSet, dirac, gamma_apply, theta_brackets, verify_spinorial
from .hypersurface import (
    AssumptionCertificate,
    HypersurfaceError,
    HypersurfaceSpec,
    build_hypersurface,
    check_assumptions,
    induced_connection,
    induced_dirac,
    induced_metric,
    induced_spin,
    induced_structures,
    projector_apply,
)
from .catalog import SpaceBundle, build_r4, build_s3, build_t2, dtilde_apply, phi_basis
from .spectrum import SectorMatrix, sector_matrix, spectrum_scan

__all__ = [
    "GaussianRational",
    "Scalar",
    "AlgebraElement",
    "Presentation",
    "PresentationError",
    "RewriteBudgetExceeded",
    "RewriteRule",
    "brute_force_normal_form",
    "extend_presentation",
    "is_central",
    "normal_form",
    "BasisWord",
    "LeftLinearMap",
    "ShapeError",
    "TensorElement",
    "check_right_linearity",
    "differential",
    "partial_coeffs",
    "right_mul",
    "tensor",
    "Calculus",
    "Connection",
    "Metric",
    "tensor_connection_apply",
    "verify_metric",
    "SpinStructure",
    "StructureSet",
    "dirac",
    "gamma_apply",
    "theta_brackets",
    "verify_spinorial",
    "AssumptionCertificate",
    "HypersurfaceError",
    "HypersurfaceSpec",
    "build_hypersurface",
    "check_assumptions",
    "induced_connection",
    "induced_dirac",
    "induced_metric",
    "induced_spin",
    "induced_structures",
    "projector_apply",
    "SpaceBundle",
    "build_r4",
    "build_s3",
    "build_t2",
    "dtilde_apply",
    "phi_basis",
    "SectorMatrix",
    "sector_matrix",
    "spectrum_scan",
]
