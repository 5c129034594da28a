# app/schemas/invocation.py
from pydantic import BaseModel, Field, field_validator
from typing import List, Literal, Optional, Tuple

SUBCOMMANDS = ("field", "equiv", "iso", "dual", "coordinatize", "extend", "coextend", "catalog")


def parse_int_list(value) -> Optional[List[int]]:
    """'1,2,3' or [1, 2, 3] -> [1, 2, 3]."""
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p.strip() for p in value.replace(" ", ",").split(",") if p.strip()]
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"expected comma-separated integers, got {value!r}")
    return [int(v) for v in value]


def parse_positions(value) -> Optional[List[Tuple[int, int]]]:
    """'1:4,2:4' -> [(1, 4), (2, 4)]."""
    if value is None:
        return None
    if not isinstance(value, str):
        return [(int(b), int(e)) for b, e in value]
    out = []
    for part in value.split(","):
        part = part.strip()
        if not part:
            continue
        b, sep, e = part.partition(":")
        if not sep:
            raise ValueError(f"position {part!r} must look like row:col")
        try:
            out.append((int(b), int(e)))
        except ValueError:
            raise ValueError(f"position {part!r} must look like row:col")
    return out


class Invocation(BaseModel):
    subcommand: Literal["field", "equiv", "iso", "dual", "coordinatize", "extend", "coextend", "catalog"]
    inputs: List[str] = Field(default_factory=list)
    matroid: Optional[str] = None
    field_order: Optional[int] = Field(default=None, ge=2)
    poly: Optional[List[int]] = None
    relation: Literal["projective", "algebraic", "geometric"] = "geometric"
    witness: bool = False
    basis: Optional[List[int]] = None
    ones: Optional[List[Tuple[int, int]]] = None
    max_unknowns: Optional[int] = Field(default=None, ge=0)
    max_n: Optional[int] = Field(default=None, ge=1)
    jobs: Optional[int] = Field(default=None, ge=1)
    stability: bool = False
    output: Literal["plain", "json"] = "plain"

    @field_validator("basis", "poly", mode="before")
    @classmethod
    def validate_int_list(cls, v):
        return parse_int_list(v)

    @field_validator("ones", mode="before")
    @classmethod
    def validate_ones(cls, v):
        return parse_positions(v)

    @field_validator("basis")
    @classmethod
    def validate_basis_distinct(cls, v):
        if v is not None and len(set(v)) != len(v):
            raise ValueError("basis labels must be distinct")
        return v
