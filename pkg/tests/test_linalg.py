import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combpfaff.errors import MatrixTooLarge, NotSquare, Singular
from combpfaff.linalg import (RingMatrix, SkewMatrix, determinant, leibniz_determinant, matching_crossings,
                              matrix_inverse, perfect_matchings, permutation_sign, pfaffian_matchings,
                              pfaffian_recursive)
from combpfaff.ring import Polynomial, RationalFunction, ratfun_eq
from tests.strategies import int_matrices, polynomials

P = Polynomial.parse


def R(num, den="1"):
    return RationalFunction(P(num), P(den))


FIG3 = SkewMatrix.from_upper_list(4, [P(x) for x in "abcdef"])


class TestDeterminant:
    def test_lindstrom_matrix(self):
        m = [[P("a*b"), P("a*e")], [P("b*c + d"), P("c*e + f")]]
        assert str(determinant(m)) == "a*b*f - a*d*e"

    def test_identity_and_empty(self):
        assert determinant(RingMatrix.identity(5)) == 1
        assert determinant([]) == 1

    def test_walk_matrix(self):
        m = [[R("a*b", "1 - d*e*f"), R("a*d*e*g", "1 - d*e*f")],
             [R("b*c*e*f", "1 - d*e*f"), R("c*e*g", "1 - d*e*f")]]
        assert ratfun_eq(determinant(m), R("a*b*c*e*g", "1 - d*e*f"))
        assert str(determinant(m)) == "(a*b*c*e*g)/(1 - d*e*f)"

    def test_not_square(self):
        with pytest.raises(NotSquare):
            determinant([[1, 2, 3], [4, 5, 6]])

    def test_too_large(self):
        with pytest.raises(MatrixTooLarge):
            determinant(RingMatrix.identity(13))

    def test_twelve_is_allowed(self):
        assert determinant(RingMatrix.identity(12)) == 1


@given(st.integers(1, 5).flatmap(lambda n: int_matrices(n)))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz_determinant(m)


@given(st.integers(2, 5).flatmap(lambda n: int_matrices(n)), st.data())
def test_determinant_alternating_and_multilinear(m, data):
    n = len(m)
    i, j = data.draw(st.sampled_from([(i, j) for i in range(n) for j in range(n) if i < j]))
    swapped = [row[:] for row in m]
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert determinant(swapped) == -determinant(m)
    c = data.draw(st.integers(-4, 4))
    scaled = [row[:] for row in m]
    scaled[i] = [c * x for x in scaled[i]]
    assert determinant(scaled) == c * determinant(m)


@given(polynomials(3), polynomials(3), polynomials(3), polynomials(3))
def test_symbolic_2x2(a, b, c, d):
    assert determinant([[a, b], [c, d]]) == a * d - b * c


class TestInverse:
    def test_one_by_one(self):
        inv = matrix_inverse([[P("x")]])
        assert ratfun_eq(inv.entries[0][0], R("1", "x"))

    def test_identity(self):
        assert matrix_inverse(RingMatrix.identity(3)).equals(RingMatrix.identity(3))

    def test_singular(self):
        with pytest.raises(Singular):
            matrix_inverse([[1, 2], [2, 4]])

    def test_random_integer(self):
        rng = random.Random(3)
        done = 0
        while done < 5:
            m = RingMatrix([[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)])
            if not determinant(m):
                continue
            assert (m @ matrix_inverse(m)).equals(RingMatrix.identity(3))
            done += 1

    def test_symbolic(self):
        m = RingMatrix([[P("x"), P("y")], [P("1"), P("z")]])
        assert (matrix_inverse(m) @ m).equals(RingMatrix.identity(2))


class TestPfaffian:
    def test_fig3(self):
        assert str(pfaffian_matchings(FIG3)) == "a*f - b*e + c*d"
        assert str(pfaffian_recursive(FIG3)) == "a*f - b*e + c*d"

    def test_square_is_determinant(self):
        pf = pfaffian_matchings(FIG3)
        assert pf * pf == determinant(FIG3)

    def test_empty_and_odd(self):
        assert pfaffian_matchings(SkewMatrix(0, {})) == 1
        assert pfaffian_recursive(SkewMatrix(0, {})) == 1
        assert pfaffian_matchings(SkewMatrix.all_ones(3)) == 0
        assert pfaffian_recursive(SkewMatrix.all_ones(5)) == 0

    def test_all_ones(self):
        for n in range(0, 13, 2):
            assert pfaffian_recursive(SkewMatrix.all_ones(n)) == 1
        assert pfaffian_matchings(SkewMatrix.all_ones(6)) == 1

    def test_matching_count_and_crossings(self):
        assert sum(1 for _ in perfect_matchings(6)) == 15
        assert matching_crossings([(0, 2), (1, 3)]) == 1
        assert matching_crossings([(0, 3), (1, 2)]) == 0

    def test_skew_entries(self):
        assert FIG3.entry(2, 0) == -P("b")
        assert FIG3.entry(1, 1) == 0
        assert FIG3.to_matrix().transpose().equals(-FIG3.to_matrix())

    def test_from_matrix_rejects_non_skew(self):
        with pytest.raises(ValueError):
            SkewMatrix.from_matrix([[0, 1], [1, 0]])


@st.composite
def skew_int(draw, max_half=3):
    n = 2 * draw(st.integers(0, max_half))
    vals = [draw(st.integers(-9, 9)) for _ in range(n * (n - 1) // 2)]
    return SkewMatrix.from_upper_list(n, vals)


@given(skew_int())
def test_two_pfaffian_algorithms_agree(a):
    assert pfaffian_matchings(a) == pfaffian_recursive(a)


@given(skew_int())
def test_pfaffian_squared_is_det(a):
    pf = pfaffian_recursive(a)
    assert pf * pf == determinant(a)


@given(st.lists(polynomials(2), min_size=6, max_size=6))
def test_symbolic_pfaffian_squared(vals):
    a = SkewMatrix.from_upper_list(4, vals)
    pf = pfaffian_matchings(a)
    assert pf * pf == determinant(a)
    assert pf == pfaffian_recursive(a)


@given(st.permutations(range(6)))
def test_permutation_sign_is_parity_of_transpositions(perm):
    work = list(perm)
    swaps = 0
    for i in range(len(work)):
        while work[i] != i:
            j = work[i]
            work[i], work[j] = work[j], work[i]
            swaps += 1
    assert permutation_sign(perm) == (-1) ** swaps


def test_permutation_sign_examples():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1


def test_submatrix_keeps_labels():
    m = RingMatrix([[1, 2], [3, 4]], ["r", "s"], ["x", "y"])
    sub = m.submatrix(["s"], ["x"])
    assert sub.rows == ["s"] and sub.cols == ["x"]
    assert sub["s", "x"] == 3
