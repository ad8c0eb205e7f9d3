"""Newton-structured polynomial projectors and their convergence experiments."""

from .extremal import (
    CompactModel,
    RhoEstimate,
    bws_check,
    fit_decay_rate,
    parse_compact,
    rho_estimate,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    convergence_run,
    cylinder_run,
    polya_bisect,
    polya_run,
    report_write,
)
from .functionals import (
    DerivativeEval,
    Functional,
    InnerProduct,
    KerginCondition,
    PointEval,
    Tensor,
    parse_functional,
)
from .growth import (
    CombinedNorm,
    GrowthParams,
    LpNorm,
    Norm,
    gelfond_constant,
    growth_norm_monomial,
    mn_radius_max,
    omega_density,
    parse_norm,
    power_series_coeff_bound,
)
from .indexing import exponents, monomial_count, rank_of
from .measures import (
    OrthonormalBasis,
    QuadratureMeasure,
    chebyshev_measure,
    circle_measure,
    gram_schmidt_basis,
    parse_measure,
    product_measure,
)
from .points import (
    chebyshev_nodes,
    equiangular_nodes,
    integer_nodes,
    leja_disk,
    leja_greedy,
    leja_greedy_gap,
    real_leja,
)
from .polynomials import Polynomial, coeff_distance, multiply, tensor_product
from .projectors import (
    BSet,
    NestedUnisolvenceFailure,
    NewtonProduct,
    NewtonStructuredProjector,
    parse_projector,
)
from .testfunctions import parse_function
from .zoo import (
    kergin_projector,
    lagrange_projector,
    nodes_by_name,
    orthogonal_projector,
    projector_from_spec,
    taylor_projector,
)

__all__ = [
    "BSet",
    "CombinedNorm",
    "CompactModel",
    "DerivativeEval",
    "ExperimentConfig",
    "ExperimentReport",
    "Functional",
    "GrowthParams",
    "InnerProduct",
    "KerginCondition",
    "LpNorm",
    "NestedUnisolvenceFailure",
    "NewtonProduct",
    "NewtonStructuredProjector",
    "Norm",
    "OrthonormalBasis",
    "PointEval",
    "Polynomial",
    "QuadratureMeasure",
    "RhoEstimate",
    "Tensor",
    "bws_check",
    "chebyshev_measure",
    "chebyshev_nodes",
    "circle_measure",
    "coeff_distance",
    "convergence_run",
    "cylinder_run",
    "equiangular_nodes",
    "exponents",
    "fit_decay_rate",
    "gelfond_constant",
    "gram_schmidt_basis",
    "growth_norm_monomial",
    "integer_nodes",
    "kergin_projector",
    "lagrange_projector",
    "leja_disk",
    "leja_greedy",
    "leja_greedy_gap",
    "mn_radius_max",
    "monomial_count",
    "multiply",
    "nodes_by_name",
    "omega_density",
    "orthogonal_projector",
    "parse_compact",
    "parse_function",
    "parse_functional",
    "parse_measure",
    "parse_norm",
    "parse_projector",
    "polya_bisect",
    "polya_run",
    "power_series_coeff_bound",
    "product_measure",
    "projector_from_spec",
    "rank_of",
    "real_leja",
    "report_write",
    "rho_estimate",
    "taylor_projector",
    "tensor_product",
]

__version__ = "0.1.0"
