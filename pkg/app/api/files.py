# app/api/files.py
"""
Matrix and matroid text files.

Matrix file:
    # comment
    field 5                      (or: field 9 poly 1 0 -> x^2 + 1)
    rows 3 cols 6
    1 0 0 1 0 1
    0 1 0 1 1 0
    0 0 1 0 1 1
    labels 1 2 3 4 5 6           (optional, default 1..n)

Matroid file:
    matroid n=6 r=3
    labels 1 2 3 4 5 6           (optional, default 1..n)
    basis 1 2 3
    ...

Either reader also accepts `builtin:NAME@q` (matrix) or `builtin:NAME` (matroid).
"""
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterator

from app.core.errors import ForgeError, InputError
from app.services.finite_field import FieldSpec, field_of_order
from app.services.matrix import LabeledMatrix
from app.services.matroid import Matroid, from_bases, matroid_of_matrix
from app.services.named_matroids import builtin, builtin_matrix

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"
_MATROID_HEADER = re.compile(r"^matroid\s+n\s*=\s*(\d+)\s+r\s*=\s*(\d+)$")


def _lines(path: str) -> Iterator[tuple[int, list[str]]]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read file: {e.strerror}", path)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens: list[str], path: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(tokens)!r}", path, lineno)


def parse_field(tokens: list[str], path: str = "<field>", lineno: int | None = None) -> FieldSpec:
    """`field q` or `field q poly c0 .. c(k-1)`."""
    if len(tokens) < 2 or tokens[0] != "field":
        raise InputError("expected 'field q [poly c0 ... c(k-1)]'", path, lineno)
    q = _ints(tokens[1:2], path, lineno)[0]
    reduction = None
    if len(tokens) > 2:
        if tokens[2] != "poly":
            raise InputError(f"unexpected {tokens[2]!r} after field order", path, lineno)
        reduction = _ints(tokens[3:], path, lineno)
    try:
        return field_of_order(q, reduction)
    except ForgeError as e:
        raise InputError(e.detail, path, lineno)


def _split_builtin(ref: str) -> tuple[str, int | None]:
    body = ref[len(BUILTIN_PREFIX):]
    name, _, q = body.partition("@")
    if not q:
        return name, None
    try:
        return name, int(q)
    except ValueError:
        raise InputError(f"bad field order in {ref!r}")


def read_matrix(path: str) -> LabeledMatrix:
    if path.startswith(BUILTIN_PREFIX):
        name, q = _split_builtin(path)
        if q is None:
            raise InputError(f"{path!r} needs a field, e.g. {path}@5")
        try:
            return builtin_matrix(name, field_of_order(q))
        except ForgeError as e:
            raise InputError(e.detail, path)

    spec = None
    shape = None
    rows: list[list[int]] = []
    labels = None
    labels_line = None
    for lineno, tokens in _lines(path):
        head = tokens[0]
        if head == "field":
            if spec is not None:
                raise InputError("duplicate field line", path, lineno)
            spec = parse_field(tokens, path, lineno)
        elif head == "rows":
            if len(tokens) != 4 or tokens[2] != "cols":
                raise InputError("expected 'rows R cols N'", path, lineno)
            shape = tuple(_ints([tokens[1], tokens[3]], path, lineno))
            if labels is not None and len(labels) != shape[1]:
                raise InputError(f"{len(labels)} labels for {shape[1]} columns", path, labels_line)
        elif head == "labels":
            labels, labels_line = _ints(tokens[1:], path, lineno), lineno
            if shape and len(labels) != shape[1]:
                raise InputError(f"{len(labels)} labels for {shape[1]} columns", path, lineno)
            if len(set(labels)) != len(labels):
                raise InputError("labels must be distinct", path, lineno)
        else:
            if spec is None or shape is None:
                raise InputError("matrix rows must follow the 'field' and 'rows' lines", path, lineno)
            row = _ints(tokens, path, lineno)
            if len(row) != shape[1]:
                raise InputError(f"row has {len(row)} entries, expected {shape[1]}", path, lineno)
            bad = [a for a in row if not 0 <= a < spec.q]
            if bad:
                raise InputError(f"entry {bad[0]} is not an element of {spec}", path, lineno)
            if len(rows) == shape[0]:
                raise InputError(f"more than {shape[0]} rows", path, lineno)
            rows.append(row)
    if spec is None:
        raise InputError("missing 'field' line", path)
    if shape is None:
        raise InputError("missing 'rows R cols N' line", path)
    if len(rows) != shape[0]:
        raise InputError(f"expected {shape[0]} rows, found {len(rows)}", path)
    try:
        return LabeledMatrix.build(spec, rows, labels)
    except ForgeError as e:
        raise InputError(e.detail, path)


def read_matroid(path: str) -> Matroid:
    if path.startswith(BUILTIN_PREFIX):
        name, _ = _split_builtin(path)
        try:
            return builtin(name).matroid
        except ForgeError as e:
            raise InputError(e.detail, path)

    header = None
    labels = None
    bases: list[list[int]] = []
    for lineno, tokens in _lines(path):
        head = tokens[0]
        if head == "matroid":
            match = _MATROID_HEADER.match(" ".join(tokens))
            if not match:
                raise InputError("expected 'matroid n=N r=R'", path, lineno)
            header = (int(match.group(1)), int(match.group(2)))
        elif head == "labels":
            labels = _ints(tokens[1:], path, lineno)
        elif head == "basis":
            if header is None:
                raise InputError("'basis' before the 'matroid' header", path, lineno)
            basis = _ints(tokens[1:], path, lineno)
            if len(basis) != header[1]:
                raise InputError(f"basis has {len(basis)} elements, rank is {header[1]}", path, lineno)
            bases.append(basis)
        else:
            raise InputError(f"unknown directive {head!r}", path, lineno)
    if header is None:
        raise InputError("missing 'matroid n=N r=R' header", path)
    n = header[0]
    labels = labels if labels is not None else list(range(1, n + 1))
    if len(labels) != n:
        raise InputError(f"{len(labels)} labels for n={n}", path)
    if not bases:
        raise InputError("no 'basis' lines", path)
    try:
        return from_bases(labels, bases)
    except ForgeError as e:
        raise InputError(e.detail, path)


def read_any_matroid(path: str) -> Matroid:
    """A matroid from either file kind; matrix files give M[A]."""
    if path.startswith(BUILTIN_PREFIX):
        return matroid_of_matrix(read_matrix(path)) if "@" in path else read_matroid(path)
    first = next(_lines(path), None)
    if first is not None and first[1][0] == "matroid":
        return read_matroid(path)
    return matroid_of_matrix(read_matrix(path))


def format_matrix(m: LabeledMatrix) -> str:
    lines = [_field_line(m.spec), f"rows {m.r} cols {m.n}"]
    lines += [" ".join(str(a) for a in row) for row in m.rows]
    lines.append("labels " + " ".join(str(e) for e in m.labels))
    return "\n".join(lines) + "\n"


def format_matroid(M: Matroid) -> str:
    lines = [f"matroid n={M.n} r={M.rank}", "labels " + " ".join(str(e) for e in M.labels)]
    lines += ["basis " + " ".join(str(e) for e in b) for b in M.sorted_bases()]
    return "\n".join(lines) + "\n"


def _field_line(spec: FieldSpec) -> str:
    if spec.k == 1:
        return f"field {spec.q}"
    return f"field {spec.q} poly " + " ".join(str(c) for c in spec.reduction)


def write_matrix(m: LabeledMatrix, path: str) -> None:
    Path(path).write_text(format_matrix(m))
    logger.debug("wrote %dx%d matrix to %s", m.r, m.n, path)


def write_matroid(M: Matroid, path: str) -> None:
    Path(path).write_text(format_matroid(M))
