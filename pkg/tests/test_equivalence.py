"""Projective, algebraic and geometric equivalence with witness checks."""
import os
import random
import sys
from collections import Counter
from itertools import product

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.core.errors import MatrixError
from app.services.equivalence import (
    EquivalenceQuery,
    Relation,
    algebraically_equivalent,
    decide,
    geometrically_equivalent,
    partition,
    projective_equivalent,
)
from app.services.finite_field import field_of_order
from app.services.matrix import (
    LabeledMatrix,
    apply_witness,
    frobenius_matrix,
    identity_witness,
    invert,
    mat_vec,
    normalize_vector,
    same_entries,
)
from app.services.matroid import are_isomorphic, matroid_of_matrix
from app.services.named_matroids import whirl_matrix
from tests.helpers import random_representation, random_witness

TESTS = {
    Relation.PROJECTIVE: projective_equivalent,
    Relation.ALGEBRAIC: algebraically_equivalent,
    Relation.GEOMETRIC: geometrically_equivalent,
}


def assert_sound(A1, A2, w):
    assert w is not None
    assert same_entries(apply_witness(A1, w), A2)


def test_projective_identity(A):
    assert projective_equivalent(A, A) == identity_witness(3, 6)


def test_whirls_are_projectively_inequivalent(A, B, C):
    for x, y in [(A, B), (A, C), (B, C)]:
        assert projective_equivalent(x, y) is None
        assert algebraically_equivalent(x, y) is None


def test_geometric_whirl_triad(A, B, C):
    assert_sound(B, C, geometrically_equivalent(B, C))
    assert_sound(C, B, geometrically_equivalent(C, B))
    assert geometrically_equivalent(A, B) is None
    assert geometrically_equivalent(A, C) is None


def test_geometric_identity(A):
    assert geometrically_equivalent(A, A) == identity_witness(3, 6)


def test_q6_pairs(q6_reps):
    b1, b2, b3 = q6_reps[:3]
    assert projective_equivalent(b1, b3) is None
    assert_sound(b1, b2, geometrically_equivalent(b1, b2))
    assert geometrically_equivalent(b1, b3) is None


def test_projective_witness_after_scaling(q6_reps, rng):
    for m in q6_reps:
        w = random_witness(m.spec, 3, 6, rng, permute=False)
        moved = apply_witness(m, w)
        assert_sound(m, moved, projective_equivalent(m, moved))


def test_projective_needs_same_labels(A):
    relabeled = LabeledMatrix.build(A.spec, A.rows, (6, 5, 4, 3, 2, 1))
    assert projective_equivalent(A, relabeled) is None


def test_algebraic_over_gf4(gf4):
    m = LabeledMatrix.build(gf4, [[1, 0, 1, 1], [0, 1, 1, 2]])
    image = frobenius_matrix(m, 1)
    assert projective_equivalent(m, image) is None
    w = algebraically_equivalent(m, image)
    assert w is not None and w.frob_power == 1
    assert_sound(m, image, w)
    assert algebraically_equivalent(m, m).frob_power == 0


def test_algebraic_matches_projective_on_prime_fields(q6_reps):
    for x in q6_reps[:3]:
        for y in q6_reps[:3]:
            assert (algebraically_equivalent(x, y) is None) == (projective_equivalent(x, y) is None)


def test_decide_dispatch(B, C):
    assert decide(EquivalenceQuery(B, C, Relation.GEOMETRIC)) is not None
    assert decide(EquivalenceQuery(B, C, Relation.PROJECTIVE)) is None


def test_shape_and_field_mismatch(A, F7, gf7):
    with pytest.raises(MatrixError):
        geometrically_equivalent(A, F7)
    with pytest.raises(MatrixError):
        projective_equivalent(A, whirl_matrix(1, gf7))
    with pytest.raises(MatrixError):
        geometrically_equivalent(A, LabeledMatrix.build(A.spec, [[1, 0, 0, 1, 0, 1], [0, 1, 0, 1, 1, 0], [1, 1, 0, 2, 1, 1]]))


def test_partition_whirls(A, B, C):
    p = partition([A, B, C], "geometric")
    assert p.classes == [[0], [1, 2]]
    assert p.representatives == [0, 1]
    assert_sound(C, B, p.witnesses[2])


def test_partition_q6(q6_reps):
    assert partition(q6_reps, Relation.PROJECTIVE).classes == [[i] for i in range(6)]
    p = partition(q6_reps, Relation.GEOMETRIC)
    # B1 ~ B2 ~ B4 ~ B6 and B3 ~ B5
    assert p.classes == [[0, 1, 3, 5], [2, 4]]
    for i, w in p.witnesses.items():
        rep = q6_reps[p.classes[p.class_of(i)][0]]
        assert_sound(q6_reps[i], rep, w)


def test_partition_count_invariant_under_shuffle(q6_reps):
    shuffled = list(q6_reps)
    random.Random(7).shuffle(shuffled)
    assert len(partition(shuffled, Relation.GEOMETRIC).classes) == 2


def _instances(rng, count):
    for _ in range(count):
        q = rng.choice([2, 3, 4, 5, 7])
        spec = field_of_order(q)
        r = rng.choice([2, 3])
        n = rng.randint(r + 1, 7)
        yield spec, r, n


def test_relation_properties(rng):
    """Reflexivity, symmetry, transitivity, finer implies coarser, witness soundness."""
    for spec, r, n in _instances(rng, 200):
        A1 = random_representation(spec, r, n, rng)
        A2 = apply_witness(A1, random_witness(spec, r, n, rng, permute=False))
        A3 = apply_witness(A2, random_witness(spec, r, n, rng, permute=False))
        G2 = apply_witness(A1, random_witness(spec, r, n, rng))
        G3 = apply_witness(G2, random_witness(spec, r, n, rng))

        for relation, test in TESTS.items():
            assert_sound(A1, A1, test(A1, A1))
            assert_sound(A1, A2, test(A1, A2))
            assert_sound(A2, A1, test(A2, A1))
            assert_sound(A1, A3, test(A1, A3))

        assert_sound(A1, G2, geometrically_equivalent(A1, G2))
        assert_sound(G2, A1, geometrically_equivalent(G2, A1))
        assert_sound(A1, G3, geometrically_equivalent(A1, G3))
        assert are_isomorphic(matroid_of_matrix(A1), matroid_of_matrix(G3)) is not None

        other = random_representation(spec, r, n, rng)
        if projective_equivalent(A1, other) is not None:
            assert algebraically_equivalent(A1, other) is not None
        if algebraically_equivalent(A1, other) is not None:
            assert geometrically_equivalent(A1, other) is not None
        w = geometrically_equivalent(A1, other)
        if w is not None:
            assert_sound(A1, other, w)


def _points(spec, cols):
    return Counter(normalize_vector(spec, c)[0] for c in cols)


def pgl2_oracle(A1, A2) -> bool:
    """Try every invertible 2x2 matrix."""
    spec = A1.spec
    target = _points(spec, A2.columns())
    for a, b, c, d in product(range(spec.q), repeat=4):
        T = ((a, b), (c, d))
        if spec.sub(spec.mul(a, d), spec.mul(b, c)) == 0:
            continue
        if _points(spec, [mat_vec(spec, T, x) for x in A1.columns()]) == target:
            return True
    return False


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_rank_two_agrees_with_pgl2_oracle(q, rng):
    spec = field_of_order(q)
    for _ in range(12):
        n = rng.randint(3, 6)
        A1 = random_representation(spec, 2, n, rng)
        if rng.random() < 0.5:
            A2 = apply_witness(A1, random_witness(spec, 2, n, rng))
        else:
            A2 = random_representation(spec, 2, n, rng)
        w = geometrically_equivalent(A1, A2)
        assert (w is not None) == pgl2_oracle(A1, A2)
        if w is not None:
            assert_sound(A1, A2, w)
            assert invert(spec, w.row_transform)
