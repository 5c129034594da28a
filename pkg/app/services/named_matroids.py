# app/services/named_matroids.py
"""Built-in named matroids and the matrix families they come from.

whirl(t)        = [I3 | (1,1,0) (0,1,1) (1,0,t)]   t = 1, 2, 3 over GF(5) are
                  three projectively inequivalent whirls.
q6_family(a, b) = [I3 | (1,1,0) (0,1,1) (1,a,b)]   the wheel at (1,1), whirls when
                  exactly one of a = 1, a = b, a = b + 1 holds, Q6 when none does.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

from app.core.errors import MatroidError
from app.services.finite_field import FieldSpec, make_field
from app.services.matrix import LabeledMatrix, append_column
from app.services.matroid import (
    Matroid,
    equal_labeled,
    from_bases,
    matroid_of_matrix,
    uniform,
)

logger = logging.getLogger(__name__)

BUILTIN_NAMES = ("W3wheel", "W3whirl", "Q6", "P6", "F7minus", "X7", "U(r,n)", "whirl(t)", "Q6family(a,b)")


@dataclass(frozen=True)
class NamedMatroid:
    name: str
    matroid: Matroid
    rows: tuple[tuple[int, ...], ...] | None = None   # defining matrix as small integers
    defined_over: int | None = None                    # q the defining matrix is stated over


def whirl_matrix(t: int, spec: FieldSpec) -> LabeledMatrix:
    return LabeledMatrix.build(spec, [
        [1, 0, 0, 1, 0, 1],
        [0, 1, 0, 1, 1, 0],
        [0, 0, 1, 0, 1, t % spec.q],
    ])


def q6_family_matrix(a: int, b: int, spec: FieldSpec) -> LabeledMatrix:
    return LabeledMatrix.build(spec, [
        [1, 0, 0, 1, 0, 1],
        [0, 1, 0, 1, 1, a % spec.q],
        [0, 0, 1, 0, 1, b % spec.q],
    ])


def with_all_ones(m: LabeledMatrix) -> LabeledMatrix:
    return append_column(m, (1,) * m.r)


def uniform_matrix(r: int, n: int, spec: FieldSpec) -> LabeledMatrix:
    """Vandermonde columns (1, x, ..., x^{r-1}) plus the point (0, ..., 0, 1); needs n <= q + 1."""
    if n > spec.q + 1:
        raise MatroidError(f"U({r},{n}) is not representable over {spec} by this construction")
    cols = [tuple(spec.pow(x, i) for i in range(r)) for x in range(spec.q)]
    cols.append(tuple(1 if i == r - 1 else 0 for i in range(r)))
    return LabeledMatrix.from_columns(spec, cols[:n])


_UNIFORM = re.compile(r"^U\((\d+),(\d+)\)$")
_WHIRL = re.compile(r"^whirl\((\d+)\)$")
_Q6FAMILY = re.compile(r"^Q6family\((\d+),(\d+)\)$")


def _p6() -> Matroid:
    from itertools import combinations
    return from_bases(range(1, 7), [b for b in combinations(range(1, 7), 3) if set(b) != {1, 2, 4}])


@lru_cache(maxsize=64)
def builtin(name: str) -> NamedMatroid:
    gf5 = make_field(5)
    name = name.replace(" ", "")
    if name == "W3wheel":
        m = q6_family_matrix(1, 1, gf5)
    elif name == "W3whirl":
        m = whirl_matrix(1, gf5)
    elif name == "Q6":
        m = q6_family_matrix(3, 1, gf5)
    elif name == "F7minus":
        m = with_all_ones(whirl_matrix(1, gf5))
    elif name == "X7":
        m = with_all_ones(whirl_matrix(2, gf5))
    elif name == "P6":
        return NamedMatroid("P6", _p6())
    elif (match := _UNIFORM.match(name)):
        r, n = int(match.group(1)), int(match.group(2))
        return NamedMatroid(name, uniform(r, n))
    elif (match := _WHIRL.match(name)):
        m = whirl_matrix(int(match.group(1)), gf5)
    elif (match := _Q6FAMILY.match(name)):
        m = q6_family_matrix(int(match.group(1)), int(match.group(2)), gf5)
    else:
        raise MatroidError(f"unknown built-in matroid {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return NamedMatroid(name, matroid_of_matrix(m), m.rows, 5)


def builtin_matrix(name: str, spec: FieldSpec) -> LabeledMatrix:
    """The built-in's defining matrix read over ``spec``.

    Parametrized families are taken as given; the fixed names must still
    represent their matroid over the requested field.
    """
    named = builtin(name)
    if (match := _UNIFORM.match(name.replace(" ", ""))):
        return uniform_matrix(int(match.group(1)), int(match.group(2)), spec)
    if named.rows is None:
        raise MatroidError(f"{name} has no defining matrix")
    if name.startswith("whirl(") or name.startswith("Q6family("):
        if name.startswith("whirl("):
            return whirl_matrix(int(_WHIRL.match(name).group(1)), spec)
        match = _Q6FAMILY.match(name)
        return q6_family_matrix(int(match.group(1)), int(match.group(2)), spec)
    m = LabeledMatrix.build(spec, [[a % spec.q for a in row] for row in named.rows])
    if not equal_labeled(matroid_of_matrix(m), named.matroid):
        raise MatroidError(f"the defining matrix of {name} does not represent it over {spec}")
    return m
