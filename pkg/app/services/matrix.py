# app/services/matrix.py
"""Labeled matrices over GF(q).

Matrices are immutable: rows are tuples of integer-encoded field elements and
every column carries a ground-set label. All operations return new matrices.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from app.core.errors import MatrixError
from app.services.finite_field import FieldSpec, frobenius

logger = logging.getLogger(__name__)

Rows = tuple[tuple[int, ...], ...]
Column = tuple[int, ...]


@dataclass(frozen=True)
class LabeledMatrix:
    spec: FieldSpec
    rows: Rows
    labels: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MatrixError(f"column labels must be distinct, got {list(self.labels)}")
        for row in self.rows:
            if len(row) != n:
                raise MatrixError(f"row length {len(row)} does not match {n} labels")
            for a in row:
                if not 0 <= a < self.spec.q:
                    raise MatrixError(f"entry {a} is not an element of {self.spec}")

    @classmethod
    def build(cls, spec: FieldSpec, rows: Iterable[Sequence[int]], labels: Sequence[int] | None = None) -> "LabeledMatrix":
        rows = tuple(tuple(int(a) for a in row) for row in rows)
        n = len(rows[0]) if rows else len(labels or ())
        return cls(spec, rows, tuple(labels) if labels is not None else tuple(range(1, n + 1)))

    @classmethod
    def from_columns(cls, spec: FieldSpec, columns: Sequence[Column], labels: Sequence[int] | None = None) -> "LabeledMatrix":
        if not columns:
            raise MatrixError("a matrix needs at least one column")
        r = len(columns[0])
        rows = tuple(tuple(col[i] for col in columns) for i in range(r))
        return cls.build(spec, rows, labels)

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.labels)

    def column(self, j: int) -> Column:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[Column]:
        return [tuple(col) for col in zip(*self.rows)] if self.rows else [() for _ in self.labels]

    def position(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MatrixError(f"label {label} is not a column of this matrix")

    def select(self, labels: Sequence[int]) -> "LabeledMatrix":
        cols = self.columns()
        return LabeledMatrix.from_columns(self.spec, [cols[self.position(e)] for e in labels], labels)


@dataclass(frozen=True)
class StandardForm:
    base: LabeledMatrix
    basis_labels: tuple[int, ...]

    def __post_init__(self):
        r = self.base.r
        if tuple(self.base.labels[:r]) != tuple(self.basis_labels):
            raise MatrixError("basis labels must label the first r columns")
        for i, row in enumerate(self.base.rows):
            if tuple(row[:r]) != tuple(1 if j == i else 0 for j in range(r)):
                raise MatrixError("first r columns are not the identity")

    @property
    def D(self) -> Rows:
        r = self.base.r
        return tuple(row[r:] for row in self.base.rows)

    @property
    def other_labels(self) -> tuple[int, ...]:
        return self.base.labels[self.base.r:]


@dataclass(frozen=True)
class TransformWitness:
    """Automorphism power, then T on the left, then column scaling, then permutation.

    ``col_perm[j]`` is the position column j moves to.
    """
    row_transform: Rows
    col_scale: tuple[int, ...]
    col_perm: tuple[int, ...]
    frob_power: int = 0


# ---- plain row arithmetic -------------------------------------------------

def _rref_rows(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """RREF with leftmost-column, topmost-nonzero-row pivoting."""
    mat = [list(row) for row in rows]
    m = len(mat)
    n = len(mat[0]) if mat else 0
    pivots: list[int] = []
    i = 0
    add, mul, neg, inv = spec.add_table, spec.mul_table, spec.neg_table, spec.inv_table
    for j in range(n):
        if i >= m:
            break
        k = next((t for t in range(i, m) if mat[t][j]), None)
        if k is None:
            continue
        mat[i], mat[k] = mat[k], mat[i]
        s = inv[mat[i][j]]
        pivot_row = [mul[s][a] for a in mat[i]]
        mat[i] = pivot_row
        for t in range(m):
            if t != i and mat[t][j]:
                f = neg[mat[t][j]]
                row = mat[t]
                mat[t] = [add[a][mul[f][b]] for a, b in zip(row, pivot_row)]
        pivots.append(j)
        i += 1
    return mat, pivots


def rank_of_columns(spec: FieldSpec, columns: Sequence[Column]) -> int:
    """Rank of a list of column vectors (eliminates on the vectors as rows)."""
    if not columns:
        return 0
    _, pivots = _rref_rows(spec, columns)
    return len(pivots)


def mat_mul(spec: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Rows:
    add, mul = spec.add_table, spec.mul_table
    out = []
    for row in a:
        new = []
        for col in zip(*b):
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(spec: FieldSpec, a: Sequence[Sequence[int]], v: Sequence[int]) -> Column:
    add, mul = spec.add_table, spec.mul_table
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = add[acc][mul[x][y]]
        out.append(acc)
    return tuple(out)


def identity(r: int) -> Rows:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def invert(spec: FieldSpec, square: Sequence[Sequence[int]]) -> Rows:
    r = len(square)
    if any(len(row) != r for row in square):
        raise MatrixError("only square matrices can be inverted")
    augmented = [list(row) + list(e) for row, e in zip(square, identity(r))]
    reduced, pivots = _rref_rows(spec, augmented)
    if pivots[:r] != list(range(r)):
        raise MatrixError("matrix is singular")
    return tuple(tuple(row[r:]) for row in reduced)


def normalize_vector(spec: FieldSpec, v: Sequence[int]) -> tuple[Column, int]:
    """(v scaled so its first nonzero entry is 1, that first nonzero entry)."""
    lead = next((a for a in v if a), 0)
    if lead == 0:
        raise MatrixError("zero column has no projective point")
    s = spec.inv_table[lead]
    mul = spec.mul_table
    return tuple(mul[s][a] for a in v), lead


# ---- module operations ----------------------------------------------------

def rref(m: LabeledMatrix) -> tuple[LabeledMatrix, int]:
    reduced, pivots = _rref_rows(m.spec, m.rows)
    return LabeledMatrix.build(m.spec, reduced, m.labels), len(pivots)


def rank(m: LabeledMatrix) -> int:
    return len(_rref_rows(m.spec, m.rows)[1])


def to_standard_form(m: LabeledMatrix, basis_labels: Sequence[int]) -> StandardForm:
    basis_labels = tuple(basis_labels)
    if len(basis_labels) != m.r:
        raise MatrixError(f"a standard form needs {m.r} basis labels, got {len(basis_labels)}")
    if len(set(basis_labels)) != len(basis_labels):
        raise MatrixError("basis labels must be distinct")
    order = list(basis_labels) + [e for e in m.labels if e not in basis_labels]
    cols = m.columns()
    pos = {e: j for j, e in enumerate(m.labels)}
    missing = [e for e in basis_labels if e not in pos]
    if missing:
        raise MatrixError(f"basis labels {missing} are not columns of the matrix")
    basis_block = tuple(tuple(cols[pos[e]][i] for e in basis_labels) for i in range(m.r))
    try:
        t = invert(m.spec, basis_block)
    except MatrixError:
        raise MatrixError(f"columns {list(basis_labels)} are linearly dependent")
    reordered = LabeledMatrix.from_columns(m.spec, [cols[pos[e]] for e in order], order)
    rows = mat_mul(m.spec, t, reordered.rows)
    return StandardForm(LabeledMatrix.build(m.spec, rows, order), basis_labels)


def normalize_columns(m: LabeledMatrix) -> LabeledMatrix:
    cols = []
    for j, col in enumerate(m.columns()):
        if not any(col):
            raise MatrixError(f"column {m.labels[j]} is zero")
        cols.append(normalize_vector(m.spec, col)[0])
    return LabeledMatrix.from_columns(m.spec, cols, m.labels)


def dual_matrix(s: StandardForm) -> StandardForm:
    """[I_r | D] on (b..., e...) -> [I_{n-r} | -D^T] on (e..., b...)."""
    spec = s.base.spec
    r, n = s.base.r, s.base.n
    d = s.D
    neg = spec.neg_table
    k = n - r
    rows = []
    for i in range(k):
        rows.append(tuple(1 if j == i else 0 for j in range(k)) + tuple(neg[d[t][i]] for t in range(r)))
    labels = s.other_labels + s.basis_labels
    if k == 0:
        raise MatrixError("the dual of a matrix with no non-basis columns has rank 0")
    return StandardForm(LabeledMatrix.build(spec, rows, labels), tuple(s.other_labels))


def frobenius_matrix(m: LabeledMatrix, j: int) -> LabeledMatrix:
    if j % m.spec.k == 0:
        return m
    rows = tuple(tuple(frobenius(m.spec, a, j) for a in row) for row in m.rows)
    return LabeledMatrix(m.spec, rows, m.labels)


def check_witness(m: LabeledMatrix, w: TransformWitness) -> None:
    spec = m.spec
    if len(w.row_transform) != m.r or any(len(row) != m.r for row in w.row_transform):
        raise MatrixError(f"row transform must be {m.r}x{m.r}")
    if len(w.col_scale) != m.n or len(w.col_perm) != m.n:
        raise MatrixError(f"witness covers {len(w.col_scale)} columns, matrix has {m.n}")
    if any(not 0 < s < spec.q for s in w.col_scale):
        raise MatrixError("column scalars must be nonzero field elements")
    if sorted(w.col_perm) != list(range(m.n)):
        raise MatrixError("column permutation is not a bijection")
    if w.frob_power < 0:
        raise MatrixError("automorphism power must be >= 0")
    invert(spec, w.row_transform)


def apply_witness(m: LabeledMatrix, w: TransformWitness) -> LabeledMatrix:
    """sigma^j entrywise, then T*m, then per-column scaling, then column permutation."""
    check_witness(m, w)
    spec = m.spec
    m = frobenius_matrix(m, w.frob_power)
    rows = mat_mul(spec, w.row_transform, m.rows)
    mul = spec.mul_table
    scaled = [tuple(mul[w.col_scale[j]][a] for j, a in enumerate(row)) for row in rows]
    out_rows = []
    for row in scaled:
        new = [0] * m.n
        for j, a in enumerate(row):
            new[w.col_perm[j]] = a
        out_rows.append(tuple(new))
    labels = [0] * m.n
    for j, e in enumerate(m.labels):
        labels[w.col_perm[j]] = e
    return LabeledMatrix(spec, tuple(out_rows), tuple(labels))


def same_entries(a: LabeledMatrix, b: LabeledMatrix) -> bool:
    return a.spec == b.spec and a.rows == b.rows


def identity_witness(r: int, n: int) -> TransformWitness:
    return TransformWitness(identity(r), (1,) * n, tuple(range(n)), 0)


def append_column(m: LabeledMatrix, column: Column, label: int | None = None) -> LabeledMatrix:
    if len(column) != m.r:
        raise MatrixError(f"column has {len(column)} entries, matrix has {m.r} rows")
    label = max(m.labels, default=0) + 1 if label is None else label
    rows = tuple(row + (a,) for row, a in zip(m.rows, column))
    return LabeledMatrix(m.spec, rows, m.labels + (label,))


def compose_operations(spec: FieldSpec, r: int, n: int, operations: Iterable[tuple]) -> TransformWitness:
    """Turn a literal operation sequence into a witness.

    Operations use 1-based indices as written by hand:
      ("swap_rows", i, j), ("scale_row", i, c), ("add_row", i, j)  # row_i += row_j
      ("scale_col", j, c), ("swap_cols", i, j)
    Row operations may be interleaved freely; column scalings refer to the
    column position at the time they are applied.
    """
    t = [list(row) for row in identity(r)]
    scale = [1] * n
    perm = list(range(n))          # perm[original] = current position
    at = list(range(n))            # at[position] = original column
    add, mul = spec.add_table, spec.mul_table
    for op in operations:
        kind = op[0]
        if kind == "swap_rows":
            i, j = op[1] - 1, op[2] - 1
            t[i], t[j] = t[j], t[i]
        elif kind == "scale_row":
            i, c = op[1] - 1, op[2] % spec.q
            t[i] = [mul[c][a] for a in t[i]]
        elif kind == "add_row":
            i, j = op[1] - 1, op[2] - 1
            t[i] = [add[a][b] for a, b in zip(t[i], t[j])]
        elif kind == "scale_col":
            j, c = op[1] - 1, op[2] % spec.q
            orig = at[j]
            scale[orig] = mul[scale[orig]][c]
        elif kind == "swap_cols":
            i, j = op[1] - 1, op[2] - 1
            a, b = at[i], at[j]
            at[i], at[j] = b, a
            perm[a], perm[b] = j, i
        else:
            raise MatrixError(f"unknown operation {kind!r}")
    return TransformWitness(tuple(tuple(row) for row in t), tuple(scale), tuple(perm), 0)
