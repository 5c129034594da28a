"""Matrix and matroid file reading and writing."""
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.api.files import read_any_matroid, read_matrix, read_matroid, write_matrix, write_matroid
from app.core.errors import InputError
from app.services.matroid import equal_labeled, matroid_of_matrix, uniform
from app.services.named_matroids import builtin
from tests.helpers import example


def test_read_whirl(A):
    m = read_matrix(example("A.mat"))
    assert m.spec == A.spec
    assert m.rows == A.rows
    assert m.labels == (1, 2, 3, 4, 5, 6)


def test_read_q6(Q6):
    M = read_matroid(example("q6.mtr"))
    assert len(M.bases) == 18
    assert equal_labeled(M, Q6)


def test_read_any(A):
    assert equal_labeled(read_any_matroid(example("u24.mtr")), uniform(2, 4))
    assert equal_labeled(read_any_matroid(example("A.mat")), matroid_of_matrix(A))
    assert equal_labeled(read_any_matroid("builtin:Q6"), builtin("Q6").matroid)


def test_matrix_round_trip(F7, tmp_path):
    path = str(tmp_path / "f7.mat")
    write_matrix(F7, path)
    back = read_matrix(path)
    assert back.rows == F7.rows
    assert back.labels == F7.labels


def test_matroid_round_trip(Q6, tmp_path):
    path = str(tmp_path / "q6.mtr")
    write_matroid(Q6, path)
    assert equal_labeled(read_matroid(path), Q6)


def test_extension_field_header(tmp_path):
    path = tmp_path / "gf9.mat"
    path.write_text("field 9 poly 1 0\nrows 2 cols 3\n1 0 1\n0 1 8\n")
    m = read_matrix(str(path))
    assert (m.spec.p, m.spec.k) == (3, 2)


@pytest.mark.parametrize("body, line", [
    ("field 5\nrows 2 cols 2\n1 0\n0 7\n", 4),
    ("field 5\nrows 2 cols 2\n1 0 0\n", 3),
    ("field 5\nrows 2 cols 2\n1 0\n0 1\nlabels 1 1\n", 5),
    ("1 0\n", 1),
    ("field 5\nrows x cols 2\n", 2),
    ("field 5\nlabels 1 2 3\nrows 2 cols 2\n1 0\n0 1\n", 2),
])
def test_matrix_errors_name_the_line(tmp_path, body, line):
    path = tmp_path / "bad.mat"
    path.write_text(body)
    with pytest.raises(InputError) as err:
        read_matrix(str(path))
    assert err.value.detail.startswith(f"{path}:{line}:")


def test_missing_file():
    with pytest.raises(InputError):
        read_matrix(example("nope.mat"))


def test_builtin_needs_a_field():
    with pytest.raises(InputError):
        read_matrix("builtin:Q6")


def test_matroid_basis_size_error(tmp_path):
    path = tmp_path / "bad.mtr"
    path.write_text("matroid n=3 r=2\nbasis 1 2 3\n")
    with pytest.raises(InputError) as err:
        read_matroid(str(path))
    assert ":2:" in err.value.detail
