# app/services/finite_field.py
"""GF(q) arithmetic on integer-encoded elements.

An element of GF(p^k) is the integer sum(c_i * p**i) of its coefficient vector
(c_0, ..., c_{k-1}) modulo the field's reduction polynomial. The tables are
built once per field with galois and kept as plain tuples, so the search loops
only ever do tuple lookups.

Usage:
    gf = make_field(2, 2)       # GF(4) modulo x^2 + x + 1
    gf.mul(2, 2)                # -> 3, i.e. x^2 = x + 1
    frobenius(gf, 2, 1)         # -> 3
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import galois
import numpy as np

from app.core import config
from app.core.errors import FieldError

logger = logging.getLogger(__name__)

FieldElement = int

# Lexicographically least monic irreducible polynomial per (p, k).
# Coefficients are degree-ascending c_0 .. c_{k-1}; the leading 1 is implicit.
BUILTIN_REDUCTIONS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1),                 # x^2 + x + 1
    (2, 3): (1, 1, 0),              # x^3 + x + 1
    (2, 4): (1, 1, 0, 0),           # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0),        # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0),     # x^6 + x + 1
    (3, 2): (1, 0),                 # x^2 + 1
    (3, 3): (1, 2, 0),              # x^3 + 2x + 1
    (5, 2): (2, 0),                 # x^2 + 2
    (7, 2): (1, 0),                 # x^2 + 1
    (11, 2): (1, 0),                # x^2 + 1
}

OPS = ("add", "sub", "mul", "neg", "inv", "pow")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    reduction: tuple[int, ...] = ()
    add_table: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    neg_table: tuple[int, ...] = field(default=(), compare=False, repr=False)
    inv_table: tuple[int, ...] = field(default=(), compare=False, repr=False)
    frob_table: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def __str__(self) -> str:
        return f"GF({self.q})"

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self}")
        return a

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError(f"inverse of zero in {self}")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_table[result][base]
            base = self.mul_table[base][base]
            e >>= 1
        return result


def _is_prime(n: int) -> bool:
    return n >= 2 and galois.is_prime(n)


def _galois_field(p: int, k: int, reduction: tuple[int, ...]):
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly([1, *reversed(reduction)], field=galois.GF(p))
    return galois.GF(p ** k, irreducible_poly=poly)


def _validate_reduction(p: int, k: int, reduction: Sequence[int]) -> tuple[int, ...]:
    reduction = tuple(int(c) for c in reduction)
    if len(reduction) != k:
        raise FieldError(f"reduction polynomial for GF({p}^{k}) needs {k} coefficients, got {len(reduction)}")
    if any(not 0 <= c < p for c in reduction):
        raise FieldError(f"reduction coefficients must lie in [0, {p})")
    poly = galois.Poly([1, *reversed(reduction)], field=galois.GF(p))
    if not poly.is_irreducible():
        raise FieldError(f"reduction polynomial {poly} is reducible over GF({p})")
    return reduction


@lru_cache(maxsize=64)
def _make_field(p: int, k: int, reduction: tuple[int, ...]) -> FieldSpec:
    q = p ** k
    gf = _galois_field(p, k, reduction)
    elems = gf(list(range(q)))
    add = (elems[:, np.newaxis] + elems[np.newaxis, :]).view(np.ndarray).tolist()
    mul = (elems[:, np.newaxis] * elems[np.newaxis, :]).view(np.ndarray).tolist()
    neg = (-elems).view(np.ndarray).tolist()
    inv = [0] + np.reciprocal(elems[1:]).view(np.ndarray).tolist()
    frob = (elems ** p).view(np.ndarray).tolist()
    logger.debug("built tables for GF(%d) reduction=%s", q, reduction)
    return FieldSpec(
        p=p,
        k=k,
        reduction=reduction,
        add_table=tuple(tuple(int(x) for x in row) for row in add),
        mul_table=tuple(tuple(int(x) for x in row) for row in mul),
        neg_table=tuple(int(x) for x in neg),
        inv_table=tuple(int(x) for x in inv),
        frob_table=tuple(int(x) for x in frob),
    )


def make_field(p: int, k: int = 1, reduction: Sequence[int] | None = None) -> FieldSpec:
    """FieldSpec for GF(p^k); built-in polynomial unless one is supplied (then validated)."""
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if p ** k > config.MAX_FIELD_ORDER:
        raise FieldError(f"GF({p ** k}) exceeds the supported order {config.MAX_FIELD_ORDER}")
    if k == 1:
        if reduction:
            raise FieldError(f"prime field GF({p}) takes no reduction polynomial")
        return _make_field(p, 1, ())
    if reduction is None:
        if (p, k) not in BUILTIN_REDUCTIONS:
            raise FieldError(f"no built-in reduction polynomial for GF({p}^{k}); supply one")
        return _make_field(p, k, BUILTIN_REDUCTIONS[(p, k)])
    return _make_field(p, k, _validate_reduction(p, k, reduction))


def field_of_order(q: int, reduction: Sequence[int] | None = None) -> FieldSpec:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    if len(primes) != 1:
        raise FieldError(f"{q} is not a prime power")
    return make_field(int(primes[0]), int(exponents[0]), reduction)


def arith(spec: FieldSpec, op: str, *operands: int) -> int:
    """Dispatch one of add|sub|mul|neg|inv|pow; pow takes (element, integer exponent)."""
    if op not in OPS:
        raise FieldError(f"unknown field operation {op!r}")
    if op == "pow":
        a, e = operands
        return spec.pow(spec.check(a), int(e))
    args = [spec.check(a) for a in operands]
    if op in ("neg", "inv"):
        (a,) = args
        return spec.neg(a) if op == "neg" else spec.inv(a)
    a, b = args
    return getattr(spec, op)(a, b)


def frobenius(spec: FieldSpec, e: int, j: int = 1) -> int:
    """e ** (p ** j); the identity when j is a multiple of k."""
    for _ in range(j % spec.k):
        e = spec.frob_table[e]
    return e


def enumerate_elements(spec: FieldSpec, units_only: bool = False) -> list[int]:
    return list(range(1 if units_only else 0, spec.q))


def decode(spec: FieldSpec, value: int) -> list[int]:
    spec.check(value)
    coeffs = []
    for _ in range(spec.k):
        value, c = divmod(value, spec.p)
        coeffs.append(c)
    return coeffs


def encode(spec: FieldSpec, coeffs: Sequence[int]) -> int:
    if len(coeffs) != spec.k or any(not 0 <= c < spec.p for c in coeffs):
        raise FieldError(f"{list(coeffs)} is not a coefficient vector of {spec}")
    return sum(c * spec.p ** i for i, c in enumerate(coeffs))


def reduction_polynomial_text(spec: FieldSpec) -> str:
    if spec.k == 1:
        return ""
    terms = [f"x^{spec.k}"]
    for i in range(spec.k - 1, -1, -1):
        c = spec.reduction[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
    return " + ".join(terms)
