from enum import Enum
from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CoefficientMethod(str, Enum):
    """How a row of B_{k,j} was computed"""
    EXPANSION = "expansion"
    STIRLING = "stirling"
    REDUCED_STIRLING = "reduced-stirling"
    RECURSION = "recursion"


class CoefficientTable(BaseModel):
    """
    The row B_{k,0}, ..., B_{k,k-1}: coefficients of (k-1)! P_k(x - (k-1)/2)
    in powers of x.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=2)
    coeffs: Tuple[Fraction, ...]
    method: CoefficientMethod

    @model_validator(mode="after")
    def _row_length(self):
        if len(self.coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(self.coeffs)}")
        return self

    def __getitem__(self, j: int) -> Fraction:
        if 0 <= j < self.k:
            return self.coeffs[j]
        return Fraction(0)

    def nonzero(self):
        """Yield (j, B_{k,j}) for the non-vanishing entries"""
        for j, value in enumerate(self.coeffs):
            if value:
                yield j, value

    def evaluate(self, x: Fraction, weight: int = 1) -> Fraction:
        """Sum_j weight^j B_{k,j} x^j, exactly"""
        total = Fraction(0)
        for j in range(self.k - 1, -1, -1):
            total = total * weight * x + self.coeffs[j]
        return total


class IdentityCheck(BaseModel):
    """One exact identity: its name, both sides, and whether they agree"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    left: Fraction
    right: Fraction

    @property
    def passed(self) -> bool:
        return self.left == self.right
