from dataclasses import dataclass
from typing import Optional, Union

from core.constants import Exponent, beta_hilbert
from core.errors import DomainError
from core.spaces import NormedSpace, is_hilbert


@dataclass(frozen=True)
class BurkholderParams:
    space: NormedSpace
    p: Exponent
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "p", Exponent.of(self.p))
        # Below beta_{p,H} = p* - 1 no Burkholder function exists; for other
        # norms the UMD constant is at least as large.
        if self.beta < beta_hilbert(self.p) - 1e-12:
            raise DomainError(
                f"beta={self.beta} is below p*-1={beta_hilbert(self.p)} for p={self.p.p}"
            )

    @classmethod
    def sharp(
        cls, space: NormedSpace, p: Union[Exponent, float], beta: Optional[float] = None
    ) -> "BurkholderParams":
        p = Exponent.of(p)
        return cls(space, p, beta_hilbert(p) if beta is None else beta)

    @property
    def is_hilbert(self) -> bool:
        return is_hilbert(self.space)
