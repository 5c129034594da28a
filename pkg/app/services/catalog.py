# app/services/catalog.py
"""Breadth-first catalog of simple GF(q)-representable matroids.

Every geometric representative of every entry is extended at the next level;
carrying only one representation per matroid loses extensions reachable from
the others.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from app.core.errors import MatrixError
from app.core.workers import ordered_map
from app.services.equivalence import Relation, partition
from app.services.extender import candidate_columns, isomorphism_classes, require_simple_connected
from app.services.finite_field import FieldSpec
from app.services.matrix import Column, LabeledMatrix, StandardForm, append_column
from app.services.matroid import Matroid, matroid_of_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Provenance:
    parent: int | None          # entry_id of the parent, None for seeds
    parent_rep: int | None      # which representative of the parent was extended
    column: Column | None


@dataclass
class CatalogEntry:
    entry_id: int
    n: int
    r: int
    q: int
    matroid: Matroid
    representatives: list[LabeledMatrix] = field(default_factory=list)
    provenance: list[Provenance] = field(default_factory=list)


def _level_entries(
    pool: list[tuple[LabeledMatrix, Provenance]],
    first_id: int,
    spec: FieldSpec,
    jobs: int,
) -> list[CatalogEntry]:
    matroids = ordered_map(matroid_of_matrix, [m for m, _ in pool], jobs)
    entries = []
    for offset, members in enumerate(isomorphism_classes(matroids, list(range(len(pool))))):
        geometric = partition([pool[i][0] for i in members], Relation.GEOMETRIC, jobs)
        reps = [members[k] for k in geometric.representatives]
        head = pool[members[0]][0]
        entries.append(CatalogEntry(
            entry_id=first_id + offset,
            n=head.n,
            r=head.r,
            q=spec.q,
            matroid=matroids[members[0]],
            representatives=[pool[i][0] for i in reps],
            provenance=[pool[i][1] for i in reps],
        ))
    return entries


def generate_catalog(
    seeds: Sequence[StandardForm | LabeledMatrix],
    spec: FieldSpec,
    n_max: int,
    jobs: int = 1,
) -> list[CatalogEntry]:
    seeds = [s.base if isinstance(s, StandardForm) else s for s in seeds]
    if not seeds:
        return []
    for s in seeds:
        if s.spec != spec:
            raise MatrixError(f"seed over {s.spec} does not match {spec}")
        require_simple_connected(matroid_of_matrix(s), "every seed")
    catalog: list[CatalogEntry] = []
    level: list[CatalogEntry] = []
    n = min(s.n for s in seeds)
    while n <= n_max:
        pool = [(s, Provenance(None, None, None)) for s in seeds if s.n == n]
        for entry in level:
            for k, rep in enumerate(entry.representatives):
                label = max(rep.labels) + 1
                for x in candidate_columns(rep):
                    pool.append((append_column(rep, x, label), Provenance(entry.entry_id, k, x)))
        if not pool and all(s.n < n for s in seeds):
            break
        level = _level_entries(pool, len(catalog) + 1, spec, jobs) if pool else []
        catalog.extend(level)
        logger.info(
            "catalog n=%d: %d matrices -> %d entries, %d representatives",
            n, len(pool), len(level), sum(len(e.representatives) for e in level),
        )
        n += 1
    return catalog
