# app/api/render.py
"""
Report rendering: domain results -> pydantic report models -> bytes.

JSON keeps model field order; catalogs are JSON lines (one entry per line).
Plain output is aligned text tables. Both are byte-stable for a given input.
"""
from __future__ import annotations

import json
from typing import Iterable, List, Optional, Sequence, Union

from pydantic import BaseModel

from app.schemas.reports import (
    CatalogEntryOut,
    CoordinationOut,
    EquivalenceOut,
    ExtensionClassOut,
    ExtensionReportOut,
    FieldOut,
    IsomorphismOut,
    MatrixOut,
    PartitionOut,
    ProvenanceOut,
    RejectedOut,
    StabilityOut,
    StabilityRowOut,
    StatusOut,
    WitnessOut,
)
from app.services.catalog import CatalogEntry
from app.services.coordinatizer import CoordinationReport
from app.services.equivalence import ClassPartition
from app.services.extender import ExtensionReport, StabilityRow
from app.services.finite_field import FieldSpec, enumerate_elements, reduction_polynomial_text
from app.services.matrix import LabeledMatrix, TransformWitness

Report = Union[BaseModel, List[BaseModel], None]


# ---- domain -> schema ------------------------------------------------------

def field_out(spec: FieldSpec) -> FieldOut:
    return FieldOut(
        q=spec.q, p=spec.p, k=spec.k,
        reduction=list(spec.reduction),
        polynomial=reduction_polynomial_text(spec),
        elements=enumerate_elements(spec),
    )


def matrix_out(m: LabeledMatrix) -> MatrixOut:
    return MatrixOut(q=m.spec.q, rows=[list(row) for row in m.rows], labels=list(m.labels))


def witness_out(w: TransformWitness) -> WitnessOut:
    return WitnessOut(
        frob_power=w.frob_power,
        row_transform=[list(row) for row in w.row_transform],
        col_scale=list(w.col_scale),
        col_perm=list(w.col_perm),
    )


def equivalence_out(relation: str, w: Optional[TransformWitness], with_witness: bool = True) -> EquivalenceOut:
    return EquivalenceOut(
        status="equivalent" if w is not None else "inequivalent",
        relation=relation,
        witness=witness_out(w) if w is not None and with_witness else None,
    )


def isomorphism_out(mapping: Optional[dict]) -> IsomorphismOut:
    if mapping is None:
        return IsomorphismOut(status="not isomorphic")
    return IsomorphismOut(status="isomorphic", mapping=[[a, mapping[a]] for a in sorted(mapping)])


def partition_out(p: ClassPartition, relation: str) -> PartitionOut:
    return PartitionOut(
        relation=relation,
        classes=[list(c) for c in p.classes],
        witnesses={str(i): witness_out(w) for i, w in sorted(p.witnesses.items())},
    )


def coordination_out(report: CoordinationReport) -> CoordinationOut:
    prob = report.problem
    return CoordinationOut(
        status="representable" if report.representable else "not representable",
        q=report.spec.q,
        basis=list(prob.basis),
        forest=[list(pos) for pos in prob.forest],
        unknowns=[list(pos) for pos in prob.unknowns],
        tried=report.tried,
        assignments=[list(a) for a in report.assignments],
        projective_classes=len(report.projective_classes),
        geometric=partition_out(report.geometric, "geometric") if report.geometric else None,
        rejected=[RejectedOut(assignment=list(a), lines=lines) for a, lines in report.rejected],
    )


def extension_report_out(report: ExtensionReport) -> ExtensionReportOut:
    classes = []
    for c in report.classes:
        classes.append(ExtensionClassOut(
            class_id=c.class_id,
            representative_matrix=matrix_out(c.representative),
            columns=[[list(x) for x in group] for group in c.grouped_columns],
            projective_rep_count=c.projective_rep_count,
            projective_rep_counts=c.projective_rep_counts,
            geometric_rep_count=c.geometric_rep_count,
            geometric_classes=[list(g) for g in c.geometric.classes],
            witnesses={str(i): witness_out(w) for i, w in sorted(c.geometric.witnesses.items())},
        ))
    return ExtensionReportOut(
        kind=report.kind,
        q=report.base.spec.q,
        base=matrix_out(report.base),
        candidate_count=report.candidate_count,
        new_label=report.new_label,
        classes=classes,
    )


def stability_out(rows: Sequence[StabilityRow], q: int) -> StabilityOut:
    return StabilityOut(q=q, rows=[
        StabilityRowOut(
            class_id=r.class_id,
            columns=r.columns,
            projective_rep_count=r.projective_rep_count,
            geometric_rep_count=r.geometric_rep_count,
            projectively_unstable=r.projectively_unstable,
            geometrically_unstable=r.geometrically_unstable,
        )
        for r in rows
    ])


def catalog_out(entries: Iterable[CatalogEntry]) -> List[CatalogEntryOut]:
    return [
        CatalogEntryOut(
            entry_id=e.entry_id, n=e.n, r=e.r, q=e.q,
            bases=len(e.matroid.bases),
            representatives=[matrix_out(m) for m in e.representatives],
            provenance=[
                ProvenanceOut(parent=p.parent, parent_rep=p.parent_rep, column=list(p.column) if p.column else None)
                for p in e.provenance
            ],
        )
        for e in entries
    ]


# ---- plain text ------------------------------------------------------------

def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _col(x: Sequence[int]) -> str:
    return "(" + ",".join(str(a) for a in x) + ")"


def _matrix_text(m: MatrixOut) -> str:
    return _table([str(e) for e in m.labels], m.rows)


def _witness_text(w: WitnessOut) -> str:
    return "\n".join([
        f"frobPower: {w.frob_power}",
        "rowTransform: " + " ".join(_col(row) for row in w.row_transform),
        "colScale: " + " ".join(str(a) for a in w.col_scale),
        "colPerm: " + " ".join(str(a) for a in w.col_perm),
    ])


def _plain(report: BaseModel) -> str:
    if isinstance(report, FieldOut):
        head = f"GF({report.q})  p={report.p}  k={report.k}"
        if report.polynomial:
            head += f"  reduction {report.polynomial}"
        return head + "\nelements: " + " ".join(str(a) for a in report.elements)
    if isinstance(report, MatrixOut):
        return f"matrix over GF({report.q})\n" + _matrix_text(report)
    if isinstance(report, EquivalenceOut):
        text = f"{report.relation}: {report.status}"
        return text + ("\n" + _witness_text(report.witness) if report.witness else "")
    if isinstance(report, IsomorphismOut):
        text = report.status
        if report.mapping:
            text += "\n" + " ".join(f"{a}->{b}" for a, b in report.mapping)
        return text
    if isinstance(report, CoordinationOut):
        lines = [
            f"{report.status} over GF({report.q})",
            f"basis: {' '.join(map(str, report.basis))}",
            "pinned ones: " + " ".join(f"{b}:{e}" for b, e in report.forest),
            "unknowns: " + " ".join(f"{b}:{e}" for b, e in report.unknowns),
            f"assignments tried: {report.tried}, kept: {len(report.assignments)}",
        ]
        if report.geometric:
            lines.append(f"{report.projective_classes} projective classes / {len(report.geometric.classes)} geometric classes")
            rows = []
            for k, members in enumerate(report.geometric.classes, start=1):
                for i in members:
                    rows.append([k, _col(report.assignments[i])])
            lines.append(_table(["geometric class", "assignment"], rows))
        return "\n".join(lines)
    if isinstance(report, ExtensionReportOut):
        rows = [
            [c.class_id, sum(len(g) for g in c.columns), len(c.columns), c.projective_rep_count, c.geometric_rep_count,
             " | ".join(" ".join(_col(x) for x in g) for g in c.columns)]
            for c in report.classes
        ]
        head = f"{report.kind}s over GF({report.q}): {report.candidate_count} candidate columns, {len(report.classes)} isomorphism classes"
        return head + "\n" + _table(["class", "columns", "groups", "projective", "geometric", "labeled groups"], rows)
    if isinstance(report, StabilityOut):
        rows = [
            [r.class_id, r.columns, r.projective_rep_count, r.geometric_rep_count,
             "yes" if r.projectively_unstable else "no", "yes" if r.geometrically_unstable else "no"]
            for r in report.rows
        ]
        return _table(["class", "columns", "projective", "geometric", "proj. >= 2", "geom. >= 2"], rows)
    if isinstance(report, CatalogEntryOut):
        return _plain_catalog([report])
    if isinstance(report, StatusOut):
        return report.status
    raise TypeError(f"no plain rendering for {type(report).__name__}")


def _plain_catalog(entries: Sequence[CatalogEntryOut]) -> str:
    rows = []
    for e in entries:
        parents = sorted({p.parent for p in e.provenance if p.parent is not None})
        rows.append([e.entry_id, e.n, e.r, e.bases, len(e.representatives), ",".join(map(str, parents)) or "seed"])
    return _table(["entry", "n", "r", "bases", "geometric reps", "parents"], rows)


def _dump(model: BaseModel) -> dict:
    return model.model_dump(mode="json", by_alias=True)


def write_report(report: Report, fmt: str = "plain") -> bytes:
    if report is None or (isinstance(report, list) and not report):
        report = StatusOut(status="empty")
    if fmt == "json":
        if isinstance(report, list):
            return "".join(json.dumps(_dump(r)) + "\n" for r in report).encode()
        return (json.dumps(_dump(report), indent=2) + "\n").encode()
    if isinstance(report, list):
        if all(isinstance(r, CatalogEntryOut) for r in report):
            return (_plain_catalog(report) + "\n").encode()
        return "".join(_plain(r) + "\n" for r in report).encode()
    return (_plain(report) + "\n").encode()
