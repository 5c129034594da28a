"""Paths and small constructors shared by the test modules."""
import os
import random

from app.core.errors import MatrixError
from app.services.matrix import LabeledMatrix, TransformWitness, invert, rank

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
EXAMPLES = os.path.join(PROJECT_ROOT, "data", "examples")
FIXTURES = os.path.join(PROJECT_ROOT, "data", "fixtures")

# Q6 over GF(5) in the order (a, b) = (3,1), (4,1), (2,3), (2,4), (4,2), (3,4)
Q6_PAIRS = [(3, 1), (4, 1), (2, 3), (2, 4), (4, 2), (3, 4)]
Q6_VALID = set(Q6_PAIRS)


def example(name: str) -> str:
    return os.path.join(EXAMPLES, name)


def random_invertible(spec, r: int, rng: random.Random):
    while True:
        t = tuple(tuple(rng.randrange(spec.q) for _ in range(r)) for _ in range(r))
        try:
            invert(spec, t)
            return t
        except MatrixError:
            continue


def random_witness(spec, r: int, n: int, rng: random.Random, permute: bool = True) -> TransformWitness:
    perm = list(range(n))
    if permute:
        rng.shuffle(perm)
    scale = tuple(rng.randrange(1, spec.q) for _ in range(n))
    return TransformWitness(random_invertible(spec, r, rng), scale, tuple(perm), 0)


def random_representation(spec, r: int, n: int, rng: random.Random) -> LabeledMatrix:
    """Full row rank, no zero columns."""

    while True:
        cols = []
        while len(cols) < n:
            v = tuple(rng.randrange(spec.q) for _ in range(r))
            if any(v):
                cols.append(v)
        m = LabeledMatrix.from_columns(spec, cols)
        if rank(m) == r:
            return m
