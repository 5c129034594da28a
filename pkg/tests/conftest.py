"""Shared fixtures: the whirl, Q6 and non-Fano matrices over GF(5)."""
import os
import random
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.services.finite_field import make_field  # noqa: E402
from app.services.matrix import append_column  # noqa: E402
from app.services.named_matroids import builtin, q6_family_matrix, whirl_matrix  # noqa: E402
from tests.helpers import Q6_PAIRS  # noqa: E402


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.fixture
def gf5():
    return make_field(5)


@pytest.fixture
def gf7():
    return make_field(7)


@pytest.fixture
def A(gf5):
    return whirl_matrix(1, gf5)


@pytest.fixture
def B(gf5):
    return whirl_matrix(2, gf5)


@pytest.fixture
def C(gf5):
    return whirl_matrix(3, gf5)


@pytest.fixture
def F7(A):
    """Non-Fano: A with the all-ones column, label 7."""
    return append_column(A, (1, 1, 1))


@pytest.fixture
def X7(B):
    return append_column(B, (1, 1, 1))


@pytest.fixture
def q6_reps(gf5):
    """B1 .. B6."""
    return [q6_family_matrix(a, b, gf5) for a, b in Q6_PAIRS]


@pytest.fixture
def Q6():
    return builtin("Q6").matroid


@pytest.fixture
def rng():
    return random.Random(20240611)
