# app/schemas/reports.py
from pydantic import BaseModel, ConfigDict, Field
from typing import Dict, List, Optional


class StatusOut(BaseModel):
    status: str = "ok"


class FieldOut(BaseModel):
    status: str = "ok"
    q: int
    p: int
    k: int
    reduction: List[int] = Field(default_factory=list, description="c0..c(k-1), leading 1 implicit")
    polynomial: str = ""
    elements: List[int]


class MatrixOut(BaseModel):
    q: int
    rows: List[List[int]]
    labels: List[int]


class WitnessOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    frob_power: int = Field(0, alias="frobPower")
    row_transform: List[List[int]] = Field(alias="rowTransform")
    col_scale: List[int] = Field(alias="colScale")
    col_perm: List[int] = Field(alias="colPerm", description="0-based target position of each column")


class EquivalenceOut(BaseModel):
    status: str          # equivalent | inequivalent
    relation: str
    witness: Optional[WitnessOut] = None


class IsomorphismOut(BaseModel):
    status: str          # isomorphic | not isomorphic
    mapping: Optional[List[List[int]]] = None   # [label in first, label in second]


class PartitionOut(BaseModel):
    relation: str
    classes: List[List[int]]
    witnesses: Dict[str, WitnessOut] = Field(default_factory=dict, description="member index -> witness to its representative")


class RejectedOut(BaseModel):
    assignment: List[int]
    lines: int


class CoordinationOut(BaseModel):
    status: str          # representable | not representable
    q: int
    basis: List[int]
    forest: List[List[int]]
    unknowns: List[List[int]]
    tried: int
    assignments: List[List[int]]
    projective_classes: int
    geometric: Optional[PartitionOut] = None
    rejected: List[RejectedOut] = Field(default_factory=list)


class ExtensionClassOut(BaseModel):
    class_id: int
    representative_matrix: MatrixOut
    columns: List[List[List[int]]]
    projective_rep_count: int
    projective_rep_counts: List[int]
    geometric_rep_count: int
    geometric_classes: List[List[int]]
    witnesses: Dict[str, WitnessOut] = Field(default_factory=dict)


class ExtensionReportOut(BaseModel):
    status: str = "ok"
    kind: str
    q: int
    base: MatrixOut
    candidate_count: int
    new_label: int
    classes: List[ExtensionClassOut] = Field(default_factory=list)


class StabilityRowOut(BaseModel):
    class_id: int
    columns: int
    projective_rep_count: int
    geometric_rep_count: int
    projectively_unstable: bool
    geometrically_unstable: bool


class StabilityOut(BaseModel):
    status: str = "ok"
    q: int
    rows: List[StabilityRowOut] = Field(default_factory=list)


class ProvenanceOut(BaseModel):
    parent: Optional[int] = None
    parent_rep: Optional[int] = None
    column: Optional[List[int]] = None


class CatalogEntryOut(BaseModel):
    status: str = "ok"
    entry_id: int
    n: int
    r: int
    q: int
    bases: int
    representatives: List[MatrixOut]
    provenance: List[ProvenanceOut]
