# app/services/coordinatizer.py
"""Coordinatize an abstract connected matroid over GF(q).

Pipeline: fundamental circuits give the 0/1 pattern of [I_r | D]; a spanning
forest of its bipartite graph is pinned to 1; the remaining nonzero entries are
unknowns, scanned over GF(q)* in lexicographic order. An assignment is kept when
the assembled matrix has exactly the bases of M.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import partial
from itertools import product
from typing import Iterable, Sequence

from app.core import config
from app.core.errors import CapExceeded, MatrixError, MatroidError
from app.core.workers import chunked, ordered_map
from app.services.equivalence import ClassPartition, Relation, partition
from app.services.finite_field import FieldSpec, enumerate_elements
from app.services.forest import bfs_forest, incidence_graph, is_spanning_forest, row_side
from app.services.matrix import LabeledMatrix
from app.services.matroid import (
    Matroid,
    equal_labeled,
    fundamental_circuit,
    is_connected,
    lexicographic_basis,
    matroid_of_matrix,
    nontrivial_lines,
)

logger = logging.getLogger(__name__)

Position = tuple[int, int]   # (basis label, non-basis label)


@dataclass(frozen=True)
class CoordinationProblem:
    matroid: Matroid
    basis: tuple[int, ...]
    others: tuple[int, ...]
    dsharp: tuple[tuple[int, ...], ...]
    forest: tuple[Position, ...]
    unknowns: tuple[Position, ...]


@dataclass
class CoordinationReport:
    problem: CoordinationProblem
    spec: FieldSpec
    tried: int
    assignments: list[tuple[int, ...]] = field(default_factory=list)
    matrices: list[LabeledMatrix] = field(default_factory=list)
    geometric: ClassPartition | None = None
    # rejected assignment -> number of 3+-point lines it produced
    rejected: list[tuple[tuple[int, ...], int]] = field(default_factory=list)

    @property
    def representable(self) -> bool:
        return bool(self.assignments)

    @property
    def projective_classes(self) -> list[list[int]]:
        # forest fixed: distinct kept assignments are projectively inequivalent
        return [[i] for i in range(len(self.assignments))]

    @property
    def geometric_classes(self) -> list[list[int]]:
        return self.geometric.classes if self.geometric else []


def build_problem(
    M: Matroid,
    basis: Sequence[int] | None = None,
    pinned_ones: Iterable[Position] | None = None,
) -> CoordinationProblem:
    if not is_connected(M):
        raise MatroidError("only connected matroids can be coordinatized")
    basis = tuple(basis) if basis is not None else lexicographic_basis(M)
    if len(basis) != M.rank or M.mask(basis) not in M.bases:
        raise MatroidError(f"{list(basis)} is not a basis")
    others = tuple(sorted(e for e in M.labels if e not in basis))
    dsharp = []
    for b in basis:
        dsharp.append(tuple(1 if b in fundamental_circuit(M, e, basis) else 0 for e in others))
    dsharp = tuple(dsharp)

    G = incidence_graph(basis, others, lambda i, t: dsharp[i][t] == 1)
    if pinned_ones is None:
        forest = tuple((u, v) if row_side(G, u) else (v, u) for u, v in bfs_forest(G))
    else:
        forest = tuple((int(b), int(e)) for b, e in pinned_ones)
        for b, e in forest:
            if b not in basis or e not in others:
                raise MatroidError(f"pinned position ({b},{e}) is not a basis/non-basis pair")
        if not is_spanning_forest(G, forest):
            raise MatroidError("pinned ones are not a spanning forest of the fundamental-circuit graph")
    pinned = set(forest)
    unknowns = tuple(
        (b, e)
        for i, b in enumerate(basis)
        for t, e in enumerate(others)
        if dsharp[i][t] and (b, e) not in pinned
    )
    logger.info("coordination problem: basis %s, %d pinned ones, %d unknowns", basis, len(forest), len(unknowns))
    return CoordinationProblem(M, basis, others, dsharp, forest, unknowns)


def assemble(prob: CoordinationProblem, spec: FieldSpec, assignment: Sequence[int]) -> LabeledMatrix:
    """[I_r | D] on labels basis + others with forest entries 1 and unknowns from ``assignment``."""
    if len(assignment) != len(prob.unknowns):
        raise MatrixError(f"assignment has {len(assignment)} values, problem has {len(prob.unknowns)} unknowns")
    if any(not 0 < spec.check(a) for a in assignment):
        raise MatrixError("assignment values must be nonzero")
    values = dict(zip(prob.unknowns, assignment))
    r = len(prob.basis)
    rows = []
    for i, b in enumerate(prob.basis):
        ident = tuple(1 if j == i else 0 for j in range(r))
        d = tuple(values.get((b, e), 1) if prob.dsharp[i][t] else 0 for t, e in enumerate(prob.others))
        rows.append(ident + d)
    return LabeledMatrix.build(spec, rows, prob.basis + prob.others)


def classify_assignment(prob: CoordinationProblem, spec: FieldSpec, assignment: Sequence[int]) -> Matroid:
    return matroid_of_matrix(assemble(prob, spec, assignment))


def _scan(prob: CoordinationProblem, spec: FieldSpec, chunk: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int | None]]:
    out = []
    for assignment in chunk:
        N = classify_assignment(prob, spec, assignment)
        if equal_labeled(N, prob.matroid):
            out.append((assignment, None))
        else:
            out.append((assignment, len(nontrivial_lines(N))))
    return out


def enumerate_representations(
    prob: CoordinationProblem,
    spec: FieldSpec,
    max_unknowns: int | None = None,
    jobs: int = 1,
) -> CoordinationReport:
    cap = config.MAX_UNKNOWNS if max_unknowns is None else max_unknowns
    if len(prob.unknowns) > cap:
        raise CapExceeded(f"{len(prob.unknowns)} unknowns exceed the cap of {cap}")
    units = enumerate_elements(spec, units_only=True)
    assignments = list(product(units, repeat=len(prob.unknowns)))
    scanned = ordered_map(partial(_scan, prob, spec), chunked(assignments, jobs), jobs)
    report = CoordinationReport(prob, spec, tried=len(assignments))
    for chunk in scanned:
        for assignment, lines in chunk:
            if lines is None:
                report.assignments.append(assignment)
                report.matrices.append(assemble(prob, spec, assignment))
            else:
                report.rejected.append((assignment, lines))
    if report.matrices:
        report.geometric = partition(report.matrices, Relation.GEOMETRIC, jobs)
    logger.info(
        "coordinatized over %s: %d/%d assignments kept, %d geometric classes",
        spec, len(report.assignments), report.tried, len(report.geometric_classes),
    )
    return report
