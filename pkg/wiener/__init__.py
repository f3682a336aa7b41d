from wiener.checks import (
    WienerCheckReport,
    antisymmetric_transform_experiment,
    ito_isometry_check,
    onedim_transform_check,
    orthogonal_pair_check,
    selfadjoint_transform_check,
    spectral_norm,
    stochastic_integral,
)
from wiener.ensemble import WienerEnsemble
from wiener.integrand import (
    FACTOR_RULES,
    BoundedFactorRule,
    ConstantFactorRule,
    SignOfPathRule,
    StepIntegrand,
)
from wiener.scenarios import random_onedim, random_orthogonal_pair, random_selfadjoint

__all__ = [
    "BoundedFactorRule",
    "ConstantFactorRule",
    "FACTOR_RULES",
    "SignOfPathRule",
    "StepIntegrand",
    "WienerCheckReport",
    "WienerEnsemble",
    "antisymmetric_transform_experiment",
    "ito_isometry_check",
    "onedim_transform_check",
    "random_onedim",
    "random_orthogonal_pair",
    "random_selfadjoint",
    "orthogonal_pair_check",
    "selfadjoint_transform_check",
    "spectral_norm",
    "stochastic_integral",
]
