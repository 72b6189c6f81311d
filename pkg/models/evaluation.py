import math
from enum import Enum
from typing import FrozenSet, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import DEFAULT_EM_ORDER, DEFAULT_MAX_L, DEFAULT_POLE_EPS, DEFAULT_TOL


class ComplexValue(BaseModel):
    """A finite complex number in double precision"""
    model_config = ConfigDict(frozen=True)

    re: float
    im: float = 0.0

    @field_validator("re", "im")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("complex components must be finite")
        return value

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


class EvalOptions(BaseModel):
    """Accuracy and effort controls for the numeric evaluators"""
    model_config = ConfigDict(frozen=True)

    tol: float = Field(DEFAULT_TOL, gt=0, description="Target absolute error")
    max_l: int = Field(DEFAULT_MAX_L, ge=1, description="Cap on the binomial series length")
    pole_eps: float = Field(DEFAULT_POLE_EPS, gt=0, description="Rejection radius around true poles")
    em_order: int = Field(DEFAULT_EM_ORDER, ge=2, description="Euler-Maclaurin correction order")

    @field_validator("em_order")
    @classmethod
    def _even_order(cls, value: int) -> int:
        if value % 2:
            raise ValueError("em_order must be even")
        return value


class EvalFlag(str, Enum):
    TRUNCATED = "truncated"
    NEAR_CANCELLATION = "near-cancellation"
    EXACT_ROUTED = "exact-routed"
    TOLERANCE_CLAMPED = "tolerance-clamped"


class EvalResult(BaseModel):
    """
    A numeric value together with a bound on its absolute error and
    diagnostics about how it was obtained.
    """
    model_config = ConfigDict(frozen=True)

    value: ComplexValue
    error_bound: float = Field(..., ge=0)
    terms_used: int = Field(0, ge=0)
    flags: FrozenSet[EvalFlag] = frozenset()
    exact: Optional[str] = Field(None, description="Exact rational when the value was exact-routed")

    @property
    def as_complex(self) -> complex:
        return complex(self.value)

    def has(self, flag: EvalFlag) -> bool:
        return flag in self.flags
