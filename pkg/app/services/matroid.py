# app/services/matroid.py
"""Matroids stored extensionally by their bases.

A basis is a bitmask over positions in ``labels`` (bit i <-> labels[i]).
Ground sets stay small (n <= ~12), so independence, circuits and isomorphism
are all computed by enumeration over those masks.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from networkx.utils import UnionFind

from app.core.errors import MatroidError
from app.services.matrix import LabeledMatrix, rank, rank_of_columns

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matroid:
    labels: tuple[int, ...]
    rank: int
    bases: frozenset[int]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise MatroidError("ground set labels must be distinct")
        if not self.bases:
            raise MatroidError("a matroid needs at least one basis")
        full = (1 << len(self.labels)) - 1
        for b in self.bases:
            if b & ~full or b.bit_count() != self.rank:
                raise MatroidError(f"basis {self.members(b)} does not have size {self.rank}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def mask(self, items: Iterable[int]) -> int:
        pos = {e: i for i, e in enumerate(self.labels)}
        m = 0
        for e in items:
            if e not in pos:
                raise MatroidError(f"{e} is not in the ground set")
            m |= 1 << pos[e]
        return m

    def members(self, mask: int) -> tuple[int, ...]:
        return tuple(e for i, e in enumerate(self.labels) if mask >> i & 1)

    def sorted_bases(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(self.members(b))) for b in self.bases)


def from_bases(labels: Sequence[int], bases: Iterable[Iterable[int]]) -> Matroid:
    labels = tuple(labels)
    pos = {e: i for i, e in enumerate(labels)}
    masks = set()
    sizes = set()
    for b in bases:
        b = list(b)
        m = 0
        for e in b:
            if e not in pos:
                raise MatroidError(f"basis element {e} is not in the ground set")
            m |= 1 << pos[e]
        if m.bit_count() != len(b):
            raise MatroidError(f"basis {b} repeats an element")
        masks.add(m)
        sizes.add(len(b))
    if len(sizes) != 1:
        raise MatroidError(f"bases have differing sizes {sorted(sizes)}")
    return Matroid(labels, sizes.pop(), frozenset(masks))


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidError(f"U({r},{n}) needs 0 <= r <= n")
    return from_bases(range(1, n + 1), combinations(range(1, n + 1), r))


def matroid_of_matrix(m: LabeledMatrix) -> Matroid:
    r = rank(m)
    cols = m.columns()
    bases = set()
    for combo in combinations(range(m.n), r):
        if rank_of_columns(m.spec, [cols[j] for j in combo]) == r:
            bases.add(sum(1 << j for j in combo))
    return Matroid(m.labels, r, frozenset(bases))


# ---- derived structure ----------------------------------------------------

@lru_cache(maxsize=2048)
def _independent_masks(M: Matroid) -> frozenset[int]:
    found = set()
    for b in M.bases:
        sub = b
        while True:
            found.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & b
    return frozenset(found)


def independent(M: Matroid, items: Iterable[int]) -> bool:
    return M.mask(items) in _independent_masks(M)


def _rank_mask(M: Matroid, mask: int) -> int:
    return max((mask & b).bit_count() for b in M.bases)


def rank_of(M: Matroid, items: Iterable[int]) -> int:
    return _rank_mask(M, M.mask(items))


@lru_cache(maxsize=2048)
def _circuit_masks(M: Matroid) -> tuple[int, ...]:
    indep = _independent_masks(M)
    out = []
    for size in range(1, M.rank + 2):
        for combo in combinations(range(M.n), size):
            mask = sum(1 << i for i in combo)
            if mask in indep:
                continue
            if all(mask & ~(1 << i) in indep for i in combo):
                out.append(mask)
    return tuple(out)


def circuits(M: Matroid) -> list[frozenset[int]]:
    """Minimal dependent sets, ordered by size then position."""
    return [frozenset(M.members(c)) for c in _circuit_masks(M)]


def fundamental_circuit(M: Matroid, k: int, B: Iterable[int]) -> frozenset[int]:
    """The unique circuit inside B + k: k together with every b that B - b + k still spans."""
    bmask = M.mask(B)
    if bmask not in M.bases:
        raise MatroidError(f"{sorted(M.members(bmask))} is not a basis")
    kmask = M.mask([k])
    if kmask & bmask:
        raise MatroidError(f"{k} belongs to the basis")
    members = {k}
    for i in range(M.n):
        bit = 1 << i
        if bmask & bit and (bmask & ~bit | kmask) in M.bases:
            members.add(M.labels[i])
    return frozenset(members)


def is_simple(M: Matroid) -> bool:
    return all(c.bit_count() > 2 for c in _circuit_masks(M))


def is_connected(M: Matroid) -> bool:
    if M.n <= 1:
        return True
    uf = UnionFind(range(M.n))
    for c in _circuit_masks(M):
        members = [i for i in range(M.n) if c >> i & 1]
        uf.union(*members)
    return len({uf[i] for i in range(M.n)}) == 1


def flags(M: Matroid) -> tuple[bool, bool]:
    """(simple, connected)."""
    return is_simple(M), is_connected(M)


def relabel(M: Matroid, mapping: dict[int, int]) -> Matroid:
    return Matroid(tuple(mapping[e] for e in M.labels), M.rank, M.bases)


def reorder(M: Matroid, labels: Sequence[int]) -> Matroid:
    """Same matroid with the ground set listed in ``labels`` order."""
    if sorted(labels) != sorted(M.labels):
        raise MatroidError("reorder needs the same ground set")
    src = {e: i for i, e in enumerate(M.labels)}
    moves = [(src[e], j) for j, e in enumerate(labels)]
    bases = frozenset(sum(1 << j for i, j in moves if b >> i & 1) for b in M.bases)
    return Matroid(tuple(labels), M.rank, bases)


def equal_labeled(M1: Matroid, M2: Matroid) -> bool:
    if sorted(M1.labels) != sorted(M2.labels):
        raise MatroidError("labeled equality needs matroids on the same ground set")
    if M1.labels != M2.labels:
        M2 = reorder(M2, M1.labels)
    return M1.rank == M2.rank and M1.bases == M2.bases


def dual(M: Matroid) -> Matroid:
    full = (1 << M.n) - 1
    return Matroid(M.labels, M.n - M.rank, frozenset(full & ~b for b in M.bases))


def delete(M: Matroid, e: int) -> Matroid:
    i = M.labels.index(e) if e in M.labels else None
    if i is None:
        raise MatroidError(f"{e} is not in the ground set")
    keep = [j for j in range(M.n) if j != i]
    avoiding = [b for b in M.bases if not b >> i & 1]
    if not avoiding:
        # coloop: bases of the deletion are B - e
        avoiding = [b & ~(1 << i) for b in M.bases]
    bases = frozenset(sum(1 << t for t, j in enumerate(keep) if b >> j & 1) for b in avoiding)
    rank_ = next(iter(bases)).bit_count()
    return Matroid(tuple(M.labels[j] for j in keep), rank_, bases)


def contract(M: Matroid, e: int) -> Matroid:
    return dual(delete(dual(M), e))


def nontrivial_lines(M: Matroid) -> list[frozenset[int]]:
    """Rank-2 flats with at least three elements (loops excluded)."""
    loops = {i for i in range(M.n) if _rank_mask(M, 1 << i) == 0}
    points = [i for i in range(M.n) if i not in loops]
    lines = set()
    for a, b in combinations(points, 2):
        pair = 1 << a | 1 << b
        if _rank_mask(M, pair) != 2:
            continue
        flat = pair
        for c in points:
            if not flat >> c & 1 and _rank_mask(M, pair | 1 << c) == 2:
                flat |= 1 << c
        if flat.bit_count() >= 3:
            lines.add(flat)
    return [frozenset(M.members(f)) for f in sorted(lines)]


def basis_exchange_holds(M: Matroid) -> bool:
    for b1 in M.bases:
        for b2 in M.bases:
            for i in range(M.n):
                if not b1 >> i & 1 or b2 >> i & 1:
                    continue
                reduced = b1 & ~(1 << i)
                if not any(b2 >> j & 1 and not b1 >> j & 1 and reduced | 1 << j in M.bases for j in range(M.n)):
                    return False
    return True


def lexicographic_basis(M: Matroid) -> tuple[int, ...]:
    return min(tuple(sorted(M.members(b))) for b in M.bases)


# ---- isomorphism ----------------------------------------------------------

def element_degrees(M: Matroid) -> list[int]:
    """Number of bases containing each position."""
    return [sum(1 for b in M.bases if b >> i & 1) for i in range(M.n)]


def _pair_counts(M: Matroid) -> list[list[int]]:
    n = M.n
    table = [[0] * n for _ in range(n)]
    for b in M.bases:
        idx = [i for i in range(n) if b >> i & 1]
        for x in idx:
            for y in idx:
                table[x][y] += 1
    return table


@lru_cache(maxsize=4096)
def isomorphism_signature(M: Matroid) -> tuple:
    """Invariants that agree on isomorphic matroids; used to bucket before backtracking."""
    degrees = element_degrees(M)
    pairs = _pair_counts(M)
    profiles = sorted((degrees[i], tuple(sorted(pairs[i]))) for i in range(M.n))
    spectrum = tuple(sorted(Counter(c.bit_count() for c in _circuit_masks(M)).items()))
    return (M.n, M.rank, len(M.bases), tuple(profiles), spectrum)


def are_isomorphic(M1: Matroid, M2: Matroid) -> dict[int, int] | None:
    """A label bijection M1 -> M2 carrying bases onto bases, or None.

    Backtracking over positions of M1 (most constrained degree class first),
    pruned by basis degree and pairwise basis co-occurrence.
    """
    if (M1.n, M1.rank, len(M1.bases)) != (M2.n, M2.rank, len(M2.bases)):
        return None
    if isomorphism_signature(M1) != isomorphism_signature(M2):
        return None
    n = M1.n
    deg1, deg2 = element_degrees(M1), element_degrees(M2)
    pair1, pair2 = _pair_counts(M1), _pair_counts(M2)
    class_size = Counter(deg1)
    order = sorted(range(n), key=lambda i: (class_size[deg1[i]], deg1[i], i))
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, c: int) -> bool:
        if deg1[i] != deg2[c] or pair1[i][i] != pair2[c][c]:
            return False
        for k in order:
            if image[k] < 0:
                break
            if pair1[i][k] != pair2[c][image[k]]:
                return False
        return True

    def bases_match() -> bool:
        mapped = set()
        for b in M1.bases:
            m = 0
            for i in range(n):
                if b >> i & 1:
                    m |= 1 << image[i]
            mapped.add(m)
        return mapped == M2.bases

    def search(depth: int) -> bool:
        if depth == n:
            return bases_match()
        i = order[depth]
        for c in range(n):
            if used[c] or not consistent(i, c):
                continue
            image[i], used[c] = c, True
            if search(depth + 1):
                return True
            image[i], used[c] = -1, False
        return False

    if not search(0):
        return None
    return {M1.labels[i]: M2.labels[image[i]] for i in range(n)}
