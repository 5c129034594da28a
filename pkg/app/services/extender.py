# app/services/extender.py
"""Single-element extensions and coextensions with isomorph rejection.

Candidates are the points of PG(r-1, q) not already among A's columns, so every
extension is simple. Candidates giving the same labeled matroid form a group;
groups with isomorphic matroids form a class; each class is partitioned by
geometric equivalence over all of its candidate matrices.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product

from app.core.errors import MatroidError
from app.core.workers import ordered_map
from app.services.equivalence import ClassPartition, Relation, partition
from app.services.finite_field import FieldSpec
from app.services.matrix import (
    Column,
    LabeledMatrix,
    StandardForm,
    append_column,
    dual_matrix,
    normalize_vector,
    to_standard_form,
)
from app.services.matroid import (
    Matroid,
    are_isomorphic,
    dual,
    flags,
    isomorphism_signature,
    lexicographic_basis,
    matroid_of_matrix,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PGPointSet:
    r: int
    spec: FieldSpec
    points: tuple[Column, ...]

    def __len__(self) -> int:
        return len(self.points)


def pg_points(r: int, spec: FieldSpec) -> PGPointSet:
    """Normalized representatives of the 1-dimensional subspaces, lexicographic."""
    if r < 1:
        raise MatroidError("projective geometry needs r >= 1")
    points = tuple(v for v in product(range(spec.q), repeat=r) if next((a for a in v if a), 0) == 1)
    return PGPointSet(r, spec, points)


@dataclass
class ExtensionClass:
    class_id: int
    columns: list[Column]                 # candidate columns, in candidate order
    matrices: list[LabeledMatrix]         # one per column
    groups: list[list[int]]               # labeled-equality groups, indexes into columns
    geometric: ClassPartition

    @property
    def representative(self) -> LabeledMatrix:
        return self.matrices[0]

    @property
    def matroid(self) -> Matroid:
        return matroid_of_matrix(self.matrices[0])

    @property
    def grouped_columns(self) -> list[list[Column]]:
        return [[self.columns[i] for i in g] for g in self.groups]

    @property
    def projective_rep_counts(self) -> list[int]:
        return [len(g) for g in self.groups]

    @property
    def projective_rep_count(self) -> int:
        return max(self.projective_rep_counts)

    @property
    def geometric_rep_count(self) -> int:
        return len(self.geometric.classes)


@dataclass
class ExtensionReport:
    base: LabeledMatrix
    kind: str                              # "extension" | "coextension"
    candidate_count: int
    new_label: int
    classes: list[ExtensionClass] = field(default_factory=list)

    def class_of_column(self, column: Column) -> ExtensionClass:
        column = tuple(column)
        for c in self.classes:
            if column in c.columns:
                return c
        raise MatroidError(f"{column} is not a candidate column")


@dataclass(frozen=True)
class StabilityRow:
    class_id: int
    columns: int
    projective_rep_count: int
    geometric_rep_count: int

    @property
    def projectively_unstable(self) -> bool:
        return self.projective_rep_count >= 2

    @property
    def geometrically_unstable(self) -> bool:
        return self.geometric_rep_count >= 2


def _as_matrix(A: StandardForm | LabeledMatrix) -> LabeledMatrix:
    return A.base if isinstance(A, StandardForm) else A


def require_simple_connected(M: Matroid, what: str) -> None:
    simple, connected = flags(M)
    if not simple:
        raise MatroidError(f"{what} must be simple")
    if not connected:
        raise MatroidError(f"{what} must be connected")


def candidate_columns(m: LabeledMatrix) -> list[Column]:
    present = {normalize_vector(m.spec, c)[0] for c in m.columns()}
    return [p for p in pg_points(m.r, m.spec).points if p not in present]


def isomorphism_classes(matroids: list[Matroid], order: list[int]) -> list[list[int]]:
    """Group ``order`` (indexes into matroids) by isomorphism, classes in first-index order."""
    classes: list[list[int]] = []
    buckets: dict[tuple, list[int]] = {}
    for i in order:
        sig = isomorphism_signature(matroids[i])
        home = None
        for k in buckets.get(sig, []):
            if are_isomorphic(matroids[classes[k][0]], matroids[i]) is not None:
                home = k
                break
        if home is None:
            buckets.setdefault(sig, []).append(len(classes))
            classes.append([i])
        else:
            classes[home].append(i)
    return classes


@dataclass
class _Candidates:
    columns: list[Column]
    matrices: list[LabeledMatrix]
    matroids: list[Matroid]
    groups: dict[frozenset[int], list[int]]    # bases -> candidate indexes
    classes: list[list[int]]                    # group heads per isomorphism class


def _extension_candidates(m: LabeledMatrix, jobs: int) -> _Candidates:
    require_simple_connected(matroid_of_matrix(m), "the base matroid")
    columns = candidate_columns(m)
    label = max(m.labels) + 1
    matrices = [append_column(m, x, label) for x in columns]
    matroids = ordered_map(matroid_of_matrix, matrices, jobs)
    groups: dict[frozenset[int], list[int]] = {}
    for i, N in enumerate(matroids):
        groups.setdefault(N.bases, []).append(i)
    heads = [g[0] for g in groups.values()]
    classes = isomorphism_classes(matroids, heads)
    logger.info(
        "%d candidate columns over %s: %d labeled extensions, %d isomorphism classes",
        len(columns), m.spec, len(groups), len(classes),
    )
    return _Candidates(columns, matrices, matroids, groups, classes)


def extend_all(A: StandardForm | LabeledMatrix, jobs: int = 1) -> ExtensionReport:
    m = _as_matrix(A)
    cands = _extension_candidates(m, jobs)
    report = ExtensionReport(m, "extension", len(cands.columns), max(m.labels) + 1)
    for class_id, heads in enumerate(cands.classes, start=1):
        member_groups = [cands.groups[cands.matroids[h].bases] for h in heads]
        members = sorted(i for g in member_groups for i in g)
        local = {i: t for t, i in enumerate(members)}
        class_matrices = [cands.matrices[i] for i in members]
        report.classes.append(ExtensionClass(
            class_id=class_id,
            columns=[cands.columns[i] for i in members],
            matrices=class_matrices,
            groups=sorted([local[i] for i in g] for g in member_groups),
            geometric=partition(class_matrices, Relation.GEOMETRIC, jobs),
        ))
    return report


def _dualize(m: LabeledMatrix) -> LabeledMatrix:
    return dual_matrix(to_standard_form(m, m.labels[:m.r])).base


def coextend_all(A: StandardForm | LabeledMatrix, jobs: int = 1) -> ExtensionReport:
    """Extensions of the dual, each dualized back; geometric classes recomputed on the results."""
    m = _as_matrix(A)
    s = A if isinstance(A, StandardForm) else to_standard_form(m, lexicographic_basis(matroid_of_matrix(m)))
    require_simple_connected(dual(matroid_of_matrix(m)), "the dual of the base matroid")
    extensions = extend_all(dual_matrix(s), jobs)
    report = ExtensionReport(m, "coextension", extensions.candidate_count, extensions.new_label)
    for c in extensions.classes:
        matrices = ordered_map(_dualize, c.matrices, jobs)
        report.classes.append(ExtensionClass(
            class_id=c.class_id,
            columns=c.columns,
            matrices=matrices,
            groups=c.groups,
            geometric=partition(matrices, Relation.GEOMETRIC, jobs),
        ))
    return report


def stability_report(A: StandardForm | LabeledMatrix, jobs: int = 1) -> list[StabilityRow]:
    report = extend_all(A, jobs)
    return [
        StabilityRow(c.class_id, len(c.columns), c.projective_rep_count, c.geometric_rep_count)
        for c in report.classes
    ]


def extension_signatures(A: StandardForm | LabeledMatrix, jobs: int = 1) -> list[Matroid]:
    """One matroid per extension isomorphism class, for comparing extension sets."""
    cands = _extension_candidates(_as_matrix(A), jobs)
    return [cands.matroids[heads[0]] for heads in cands.classes]


def same_extension_classes(first: list[Matroid], second: list[Matroid]) -> bool:
    if len(first) != len(second):
        return False
    unmatched = list(second)
    for M in first:
        hit = next((k for k, N in enumerate(unmatched) if are_isomorphic(M, N) is not None), None)
        if hit is None:
            return False
        unmatched.pop(hit)
    return True
