from core.constants import Exponent, beta_hilbert
from core.errors import (
    ConfigError,
    ContractViolation,
    DegenerateInputError,
    DomainError,
    LabError,
    NotAdmissibleError,
    SubordinationViolatedError,
    UnsupportedSpaceError,
    UsageError,
)
from core.spaces import (
    DirectSumP,
    Lq,
    NormedSpace,
    Vector,
    as_vector,
    is_hilbert,
    norm,
    normalize,
    pairing,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "DegenerateInputError",
    "DirectSumP",
    "DomainError",
    "Exponent",
    "LabError",
    "Lq",
    "NormedSpace",
    "NotAdmissibleError",
    "SubordinationViolatedError",
    "UnsupportedSpaceError",
    "UsageError",
    "Vector",
    "as_vector",
    "beta_hilbert",
    "is_hilbert",
    "norm",
    "normalize",
    "pairing",
]
