from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SpaceKind(str, Enum):
    """Which spectral zeta function: the k-sphere or the real projective k-space"""
    SPHERE = "sphere"
    PROJECTIVE = "projective"


class SpaceSpec(BaseModel):
    """
    Identifies a zeta function: Z_k for the sphere S^k or L_k for the
    projective space P^k.
    """
    model_config = ConfigDict(frozen=True)

    space: SpaceKind = Field(..., description="Sphere or projective space")
    k: int = Field(..., ge=2, description="Dimension, at least 2")

    @property
    def is_sphere(self) -> bool:
        return self.space is SpaceKind.SPHERE

    @property
    def label(self) -> str:
        return f"{'Z' if self.is_sphere else 'L'}_{self.k}"


class PolePoint(BaseModel):
    """Candidate pole s = k/2 - n"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=2)
    n: int = Field(..., ge=0, description="Pole candidate index")
    location: Fraction

    @model_validator(mode="after")
    def _location_matches_index(self):
        if self.location != Fraction(self.k, 2) - self.n:
            raise ValueError(f"pole location {self.location} is not k/2 - n for k={self.k}, n={self.n}")
        return self

    @classmethod
    def at(cls, k: int, n: int) -> "PolePoint":
        return cls(k=k, n=n, location=Fraction(k, 2) - n)


class PoleEntry(BaseModel):
    """A pole candidate with its exact residue"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: PolePoint
    residue: Fraction
    regular: bool = Field(..., description="True when the residue vanishes")
