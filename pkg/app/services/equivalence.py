# app/services/equivalence.py
"""Projective, algebraic and geometric equivalence of representations.

Every positive answer comes with a TransformWitness w such that
apply_witness(A1, w) reproduces A2 entry for entry.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import partial
from itertools import product
from typing import Callable, Sequence

from networkx.utils import UnionFind

from app.core.errors import MatrixError
from app.core.workers import ordered_map
from app.services.forest import bfs_forest, incidence_graph, row_side
from app.services.matrix import (
    LabeledMatrix,
    TransformWitness,
    frobenius_matrix,
    invert,
    mat_mul,
    mat_vec,
    normalize_vector,
    rank,
    rank_of_columns,
)
from app.services.matroid import (
    are_isomorphic,
    element_degrees,
    equal_labeled,
    matroid_of_matrix,
)

logger = logging.getLogger(__name__)


class Relation(str, Enum):
    PROJECTIVE = "projective"
    ALGEBRAIC = "algebraic"
    GEOMETRIC = "geometric"


@dataclass(frozen=True)
class EquivalenceQuery:
    A1: LabeledMatrix
    A2: LabeledMatrix
    relation: Relation


@dataclass
class ClassPartition:
    items: list[LabeledMatrix]
    classes: list[list[int]]
    witnesses: dict[int, TransformWitness] = field(default_factory=dict)   # member -> its representative

    @property
    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    def class_of(self, index: int) -> int:
        return next(k for k, c in enumerate(self.classes) if index in c)


def _check_pair(A1: LabeledMatrix, A2: LabeledMatrix) -> None:
    if A1.spec != A2.spec:
        raise MatrixError(f"field mismatch: {A1.spec} vs {A2.spec}")
    if (A1.r, A1.n) != (A2.r, A2.n):
        raise MatrixError(f"dimension mismatch: {A1.r}x{A1.n} vs {A2.r}x{A2.n}")
    for A in (A1, A2):
        if rank(A) != A.r:
            raise MatrixError("representations must have linearly independent rows")


# ---- projective ------------------------------------------------------------

def _forest_normal_form(A: LabeledMatrix, basis: Sequence[int]) -> tuple[tuple, tuple, tuple]:
    """(N, T, S) with N = T * A * diag(S): identity on ``basis`` positions and ones on a BFS forest."""
    spec = A.spec
    cols = A.columns()
    tb = invert(spec, tuple(tuple(cols[b][i] for b in basis) for i in range(A.r)))
    X = mat_mul(spec, tb, A.rows)
    others = [j for j in range(A.n) if j not in basis]
    row_labels = [A.labels[b] for b in basis]
    col_labels = [A.labels[j] for j in others]
    G = incidence_graph(row_labels, col_labels, lambda i, t: X[i][others[t]] != 0)
    row_of = {e: i for i, e in enumerate(row_labels)}
    col_of = {e: others[t] for t, e in enumerate(col_labels)}
    rho = [1] * A.r
    gamma = [1] * A.n
    inv, mul = spec.inv_table, spec.mul_table
    for parent, child in bfs_forest(G):
        if row_side(G, parent):
            i, j = row_of[parent], col_of[child]
            gamma[j] = inv[mul[rho[i]][X[i][j]]]
        else:
            i, j = row_of[child], col_of[parent]
            rho[i] = inv[mul[X[i][j]][gamma[j]]]
    for i, b in enumerate(basis):
        gamma[b] = inv[rho[i]]
    T = tuple(tuple(mul[rho[i]][a] for a in row) for i, row in enumerate(tb))
    N = tuple(tuple(mul[mul[rho[i]][a]][gamma[j]] for j, a in enumerate(row)) for i, row in enumerate(X))
    return N, T, tuple(gamma)


def projective_equivalent(A1: LabeledMatrix, A2: LabeledMatrix) -> TransformWitness | None:
    _check_pair(A1, A2)
    if A1.labels != A2.labels:
        return None
    M1, M2 = matroid_of_matrix(A1), matroid_of_matrix(A2)
    if not equal_labeled(M1, M2):
        return None
    basis = min(tuple(i for i in range(M1.n) if b >> i & 1) for b in M1.bases)
    N1, T1, S1 = _forest_normal_form(A1, basis)
    N2, T2, S2 = _forest_normal_form(A2, basis)
    if N1 != N2:
        return None
    spec = A1.spec
    T = mat_mul(spec, invert(spec, T2), T1)
    scale = tuple(spec.div(s1, s2) for s1, s2 in zip(S1, S2))
    return TransformWitness(T, scale, tuple(range(A1.n)), 0)


def algebraically_equivalent(A1: LabeledMatrix, A2: LabeledMatrix) -> TransformWitness | None:
    _check_pair(A1, A2)
    for j in range(A1.spec.k):
        w = projective_equivalent(frobenius_matrix(A1, j), A2)
        if w is not None:
            return replace(w, frob_power=j)
    return None


# ---- geometric -------------------------------------------------------------

def _first_basis(spec, cols) -> list[int]:
    chosen: list[int] = []
    r = len(cols[0])
    for j in range(len(cols)):
        if rank_of_columns(spec, [cols[c] for c in chosen] + [cols[j]]) == len(chosen) + 1:
            chosen.append(j)
            if len(chosen) == r:
                break
    return chosen


def geometrically_equivalent(A1: LabeledMatrix, A2: LabeledMatrix) -> TransformWitness | None:
    """Search T, column scalars and a permutation with apply_witness(A1, w) == A2.

    Enumerates ordered images of A1's first basis among A2's columns (matching
    basis degrees) and the (q-1)^(r-1) relative scalings of those images; each
    choice fixes T, which must carry A1's point multiset onto A2's.
    """
    _check_pair(A1, A2)
    spec, r, n = A1.spec, A1.r, A1.n
    cols1, cols2 = A1.columns(), A2.columns()
    for j, col in enumerate(cols1 + cols2):
        if not any(col):
            raise MatrixError("geometric equivalence needs nonzero columns")
    M1, M2 = matroid_of_matrix(A1), matroid_of_matrix(A2)
    if are_isomorphic(M1, M2) is None:
        return None
    pts1 = [normalize_vector(spec, c)[0] for c in cols1]
    pts2 = [normalize_vector(spec, c)[0] for c in cols2]
    target = Counter(pts2)
    if sorted(Counter(pts1).values()) != sorted(target.values()):
        return None
    base = _first_basis(spec, pts1)
    inv_b = invert(spec, tuple(tuple(pts1[b][i] for b in base) for i in range(r)))
    coords = [mat_vec(spec, inv_b, p) for p in pts1]
    deg1, deg2 = element_degrees(M1), element_degrees(M2)
    choices = [[c for c in range(n) if deg2[c] == deg1[b]] for b in base]
    order = [j for j in range(n) if j not in base] + base
    units = range(1, spec.q)
    add, mul = spec.add_table, spec.mul_table

    def images_fit(W) -> bool:
        remaining = target.copy()
        for j in order:
            y = coords[j]
            v = [0] * r
            for i in range(r):
                if y[i]:
                    wi = W[i]
                    yi = y[i]
                    v = [add[a][mul[yi][b]] for a, b in zip(v, wi)]
            if not any(v):
                return False
            p = normalize_vector(spec, v)[0]
            if remaining[p] == 0:
                return False
            remaining[p] -= 1
        return True

    def tuples(depth: int, used: tuple[int, ...]):
        if depth == r:
            yield used
            return
        for c in choices[depth]:
            if c not in used:
                yield from tuples(depth + 1, used + (c,))

    tested = 0
    for image in tuples(0, ()):
        V = [pts2[c] for c in image]
        if rank_of_columns(spec, V) < r:
            continue
        for lam in product(units, repeat=r - 1):
            lam = (1,) + lam
            W = [tuple(mul[l][a] for a in v) for l, v in zip(lam, V)]
            tested += 1
            if images_fit(W):
                logger.debug("geometric witness after %d transforms", tested)
                return _geometric_witness(A1, A2, W, inv_b, pts2)
    logger.debug("no geometric witness among %d transforms", tested)
    return None


def _geometric_witness(A1, A2, W, inv_b, pts2) -> TransformWitness:
    spec = A1.spec
    r, n = A1.r, A1.n
    w_rows = tuple(tuple(W[i][t] for i in range(r)) for t in range(r))
    T = mat_mul(spec, w_rows, inv_b)
    cols1, cols2 = A1.columns(), A2.columns()
    taken = [False] * n
    perm, scale = [0] * n, [0] * n
    for j in range(n):
        v = mat_vec(spec, T, cols1[j])
        p, lead = normalize_vector(spec, v)
        c = next(c for c in range(n) if not taken[c] and pts2[c] == p)
        taken[c] = True
        perm[j] = c
        scale[j] = spec.div(normalize_vector(spec, cols2[c])[1], lead)
    return TransformWitness(T, tuple(scale), tuple(perm), 0)


# ---- dispatch & partition --------------------------------------------------

RELATIONS: dict[Relation, Callable[[LabeledMatrix, LabeledMatrix], TransformWitness | None]] = {
    Relation.PROJECTIVE: projective_equivalent,
    Relation.ALGEBRAIC: algebraically_equivalent,
    Relation.GEOMETRIC: geometrically_equivalent,
}


def decide(query: EquivalenceQuery) -> TransformWitness | None:
    return RELATIONS[Relation(query.relation)](query.A1, query.A2)


def _test_against(relation: Relation, item: LabeledMatrix, rep: LabeledMatrix) -> TransformWitness | None:
    return RELATIONS[relation](item, rep)


def partition(items: Sequence[LabeledMatrix], relation: Relation | str, jobs: int = 1) -> ClassPartition:
    """Classes in order of their least index; each member is tested against earlier representatives only."""
    relation = Relation(relation)
    items = list(items)
    for other in items[1:]:
        if other.spec != items[0].spec or (other.r, other.n) != (items[0].r, items[0].n):
            raise MatrixError("partition needs matrices of one shape over one field")
    uf = UnionFind(range(len(items)))
    reps: list[int] = []
    witnesses: dict[int, TransformWitness] = {}
    for i, item in enumerate(items):
        results = ordered_map(partial(_test_against, relation, item), [items[k] for k in reps], jobs)
        hit = next(((k, w) for k, w in zip(reps, results) if w is not None), None)
        if hit is None:
            reps.append(i)
            continue
        uf.union(hit[0], i)
        witnesses[i] = hit[1]
    groups: dict[int, list[int]] = {}
    for i in range(len(items)):
        groups.setdefault(uf[i], []).append(i)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    logger.info("partition: %d items -> %d %s classes", len(items), len(classes), relation.value)
    return ClassPartition(items, classes, witnesses)
