from burkholder.deficits import (
    GradientBoundReport,
    check_gradient_bound,
    fd_gradient,
    gradient_bound_constant,
    is_admissible_probe,
    orthogonal_deficit,
    sample_admissible_probes,
    zigzag_deficit,
)
from burkholder.params import BurkholderParams
from burkholder.sup_search import SupApproximation, sup_u_approx
from burkholder.wang import (
    BivariateFunction,
    burkholder_v,
    check_majorization,
    diagonal_value,
    trivial_value,
    v_from_u,
    wang_function,
    wang_u,
)

__all__ = [
    "BivariateFunction",
    "BurkholderParams",
    "GradientBoundReport",
    "SupApproximation",
    "burkholder_v",
    "check_gradient_bound",
    "check_majorization",
    "diagonal_value",
    "fd_gradient",
    "gradient_bound_constant",
    "is_admissible_probe",
    "orthogonal_deficit",
    "sample_admissible_probes",
    "sup_u_approx",
    "trivial_value",
    "v_from_u",
    "wang_function",
    "wang_u",
]
