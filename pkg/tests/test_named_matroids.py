"""Built-in named matroids and their matrix families."""
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.core.errors import MatroidError
from app.services.finite_field import make_field
from app.services.matroid import basis_exchange_holds, equal_labeled, matroid_of_matrix, nontrivial_lines, uniform
from app.services.named_matroids import builtin, builtin_matrix, q6_family_matrix, uniform_matrix, whirl_matrix
from tests.helpers import Q6_VALID


def test_builtin_sizes():
    f7 = builtin("F7minus").matroid
    assert (f7.n, f7.rank) == (7, 3)
    assert len(builtin("U(2,4)").matroid.bases) == 6
    assert len(nontrivial_lines(builtin("W3wheel").matroid)) == 4
    assert len(nontrivial_lines(builtin("W3whirl").matroid)) == 3
    assert len(nontrivial_lines(builtin("Q6").matroid)) == 2
    assert nontrivial_lines(builtin("P6").matroid) == [frozenset({1, 2, 4})]


def test_unknown_builtin():
    with pytest.raises(MatroidError):
        builtin("Fano")


@pytest.mark.parametrize("name", ["W3wheel", "W3whirl", "Q6", "P6", "F7minus", "X7", "whirl(2)", "Q6family(2,3)"])
def test_builtins_satisfy_basis_exchange(name):
    assert basis_exchange_holds(builtin(name).matroid)


def test_q6_family_line_counts_over_gf5():
    gf5 = make_field(5)
    for a in range(1, 5):
        for b in range(1, 5):
            lines = len(nontrivial_lines(matroid_of_matrix(q6_family_matrix(a, b, gf5))))
            if (a, b) == (1, 1):
                assert lines == 4
            elif (a, b) in Q6_VALID:
                assert lines == 2
            else:
                assert lines == 3, (a, b)


def test_q6_family_over_gf3_never_gives_q6():
    gf3 = make_field(3)
    Q6 = builtin("Q6").matroid
    for a in (1, 2):
        for b in (1, 2):
            assert not equal_labeled(matroid_of_matrix(q6_family_matrix(a, b, gf3)), Q6)


def test_whirl_family_over_gf7():
    gf7 = make_field(7)
    whirl = builtin("W3whirl").matroid
    valid = [t for t in range(7) if equal_labeled(matroid_of_matrix(whirl_matrix(t, gf7)), whirl)]
    assert valid == [1, 2, 3, 4, 5]


def test_builtin_matrix_over_other_fields():
    gf7 = make_field(7)
    m = builtin_matrix("W3whirl", gf7)
    assert equal_labeled(matroid_of_matrix(m), builtin("W3whirl").matroid)
    # non-Fano needs characteristic != 2
    with pytest.raises(MatroidError):
        builtin_matrix("F7minus", make_field(2))
    assert builtin_matrix("whirl(3)", gf7).rows[2][5] == 3


def test_uniform_matrices():
    gf5 = make_field(5)
    assert equal_labeled(matroid_of_matrix(uniform_matrix(2, 4, gf5)), uniform(2, 4))
    assert equal_labeled(matroid_of_matrix(uniform_matrix(3, 6, gf5)), uniform(3, 6))
    assert equal_labeled(matroid_of_matrix(builtin_matrix("U(2,6)", gf5)), uniform(2, 6))
    with pytest.raises(MatroidError):
        uniform_matrix(2, 7, gf5)
