import random
from fractions import Fraction

import pytest

from macforge.toeplitz import (
    QPoly,
    SizeLimitExceeded,
    bareiss_det,
    build_T,
    evaluated_matrix,
    gershgorin_unique_inverse,
    min_element_nonzero_check,
    msum,
    multiset,
    size_matrix_det,
    symbolic_det,
)
from oracles import displayed_det, laplace_det, lp_eval


def random_multisets(rng, m, lo=-4, hi=6, most=3):
    return [[rng.randint(lo, hi) for _ in range(rng.randint(1, most))] for _ in range(m)]


def test_build_T_two_by_two():
    T = build_T([[0], [5]])
    assert T.entries == (((0,), (6,)), ((5,), (0,)))


def test_build_T_one_by_one_and_three_shape():
    assert build_T([[2, 2]]).entries == (((2, 2),),)
    T = build_T([[0], [10], [20]])
    assert T.entries == (
        ((0,), (21,), (11,)),
        ((10,), (0,), (21,)),
        ((20,), (10,), (0,)),
    )


def test_msum_keeps_multiplicity():
    assert msum(multiset([0, 1]), multiset([0, 1])) == (0, 1, 1, 2)
    assert msum() == (0,)


def test_qpoly_arithmetic():
    a = QPoly.monomial([0])
    b = QPoly.monomial([1])
    assert (a - a).is_zero()
    assert (a * b).terms == {(1,): 1}
    assert (a + a).terms == {(0,): 2}
    assert (a - b).render() == "q^{0} - q^{1}"
    assert (a - b).evaluate(2) == Fraction(-1)


def test_m2_determinant_text():
    assert symbolic_det(build_T([[0], [5]])).render() == "q^{0} - q^{11}"


def test_determinants_match_displayed_formulas():
    rng = random.Random(41)
    for m in (2, 3, 4):
        for _ in range(50):
            As = random_multisets(rng, m)
            assert symbolic_det(build_T(As)).laurent() == displayed_det(As), (m, As)


def test_m4_generic_has_ten_terms():
    As = [[0], [100], [10000], [1000000]]
    assert len(symbolic_det(build_T(As)).terms) == 10


def test_evaluation_homomorphism_against_numeric_determinant():
    rng = random.Random(42)
    for m in (1, 2, 3, 4):
        for _ in range(20):
            T = build_T(random_multisets(rng, m))
            t = Fraction(rng.choice([-3, -2, 2, 3, 5]), rng.choice([1, 2, 7]))
            numeric = laplace_det(evaluated_matrix(T, t))
            assert symbolic_det(T).evaluate(t) == numeric
            assert bareiss_det(evaluated_matrix(T, t)) == numeric


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        symbolic_det(build_T([[0]] * 7))


def test_size_matrix_det_examples():
    assert size_matrix_det([1, 1]) == 0
    assert size_matrix_det([2, 1]) == 3
    assert size_matrix_det([3, 1, 1]) == 20
    assert size_matrix_det([1]) == 1


def test_size_matrix_det_matches_cofactor_expansion():
    rng = random.Random(43)
    for _ in range(100):
        sizes = [rng.randint(1, 6) for _ in range(rng.randint(1, 5))]
        m = len(sizes)
        M = [[sizes[(i - j) % m] for j in range(m)] for i in range(m)]
        assert size_matrix_det(sizes) == laplace_det(M)


def test_gershgorin_examples():
    assert gershgorin_unique_inverse([3, 1, 1]) is True
    assert gershgorin_unique_inverse([2, 1, 1]) is False
    assert gershgorin_unique_inverse([1]) is True


def test_min_element_check_examples():
    assert min_element_nonzero_check([[0], [0]])
    # {0} ⊕ {0} is the single point {0}, so the two keys are {0} and {1}
    assert symbolic_det(build_T([[0], [0]])).terms == {(0,): 1, (1,): -1}
    assert symbolic_det(build_T([[7], [7]])).terms == {(14,): 1, (15,): -1}
    with pytest.raises(ValueError):
        min_element_nonzero_check([[0]] * 4)
    with pytest.raises(ValueError):
        min_element_nonzero_check([[0], []])
