from mart.adversarial import AdversarialResult, adversarial_search
from mart.ensemble import DiscretePathEnsemble, FactorProcess
from mart.generators import enumerate_paley_walsh, gen_paley_walsh, gen_random_walk
from mart.moments import lp_moment, martingale_drift, subordination_ratio
from mart.rules import (
    COEFFICIENT_RULES,
    FACTOR_RULES,
    CoefficientRule,
    ConstantFactor,
    ConstantRule,
    FactorRule,
    HistoryProductRule,
    PredictableSignFactor,
    RandomFactorRule,
    TableFactorRule,
    TableRule,
)
from mart.transform import extract_factor, factor_process, transform

__all__ = [
    "AdversarialResult",
    "COEFFICIENT_RULES",
    "CoefficientRule",
    "ConstantFactor",
    "ConstantRule",
    "DiscretePathEnsemble",
    "FACTOR_RULES",
    "FactorProcess",
    "FactorRule",
    "HistoryProductRule",
    "PredictableSignFactor",
    "RandomFactorRule",
    "TableFactorRule",
    "TableRule",
    "adversarial_search",
    "enumerate_paley_walsh",
    "extract_factor",
    "factor_process",
    "gen_paley_walsh",
    "gen_random_walk",
    "lp_moment",
    "martingale_drift",
    "subordination_ratio",
    "transform",
]
