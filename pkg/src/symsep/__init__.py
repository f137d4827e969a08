"""Separability criteria, operator Schmidt decomposition and entanglement
witnesses for symmetric bipartite quantum states."""

__version__ = "0.1.0"

from .criteria import (  # noqa: E402
    CriteriaReport,
    LocalOrthogonalBasis,
    correlation_matrix,
    covariance_condition,
    expectation_value_matrix,
    extremal_observable,
    full_report,
    hermitian_basis,
    multiqubit_partial_transpose,
    multiqubit_realign,
    partial_transpose,
    realign,
)
from .schmidt import SchmidtDecomposition, schmidt_decompose  # noqa: E402
from .states import (  # noqa: E402
    Bipartition,
    BipartiteState,
    MultiQubitState,
    builtin_rho33,
    flip_operator,
    smolin_state,
    symmetric_projector,
)
from .witness import (  # noqa: E402
    Witness,
    build_rho33_witness,
    certify_by_grid,
    evaluate,
    optimize_symmetric_product,
)

__all__ = [
    "BipartiteState",
    "Bipartition",
    "build_rho33_witness",
    "builtin_rho33",
    "certify_by_grid",
    "correlation_matrix",
    "covariance_condition",
    "CriteriaReport",
    "evaluate",
    "expectation_value_matrix",
    "extremal_observable",
    "flip_operator",
    "full_report",
    "hermitian_basis",
    "LocalOrthogonalBasis",
    "multiqubit_partial_transpose",
    "multiqubit_realign",
    "MultiQubitState",
    "optimize_symmetric_product",
    "partial_transpose",
    "realign",
    "schmidt_decompose",
    "SchmidtDecomposition",
    "smolin_state",
    "symmetric_projector",
    "Witness",
    "__version__",
]
