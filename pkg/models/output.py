from enum import Enum
from typing import Any, Dict

from pydantic import BaseModel, Field


class RecordKind(str, Enum):
    COEFF = "coeff"
    EVAL = "eval"
    RESIDUE = "residue"
    SPECIAL = "special"
    VERIFY_ITEM = "verify-item"


class OutputRecord(BaseModel):
    """
    One line of machine-readable CLI output. Rationals in the payload are
    {"num": "...", "den": "..."} decimal strings, never rounded.
    """
    kind: RecordKind
    payload: Dict[str, Any] = Field(default_factory=dict)
