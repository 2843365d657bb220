from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ as SZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from rootforge.exact_linalg import (
    IntMatrix,
    SmithForm,
    determinant,
    determinant_mod_p,
    prime_factors,
    rank_mod_p,
    rank_over,
    rank_rational,
    smith_normal_form,
)


def leibniz_det(rows):
    """Permutation expansion; independent of any elimination."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i, j in enumerate(perm):
            prod *= rows[i][j]
        total += sign * prod
    return total


def matrices(max_rows=5, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
    )


primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_known_values():
    m = IntMatrix.from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert determinant(m) == 4
    assert rank_rational(m) == 3
    assert rank_mod_p(m, 2) == 2
    assert smith_normal_form(m).elementary_divisors == (1, 1, 4)


def test_edge_shapes():
    assert determinant(IntMatrix.zeros(0, 0)) == 1
    assert smith_normal_form(IntMatrix.zeros(2, 3)) == SmithForm((0, 0), 0)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).largest == 1
    with pytest.raises(ValueError):
        determinant(IntMatrix.zeros(2, 3))
    with pytest.raises(ValueError):
        rank_mod_p(IntMatrix.identity(2), 4)


def test_smith_form_validation():
    with pytest.raises(ValueError):
        SmithForm((2, 3), 2)
    with pytest.raises(ValueError):
        SmithForm((1, 0), 2)


def test_matrix_ops():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
    assert a.apply((1, 1)) == (3, 7)
    assert a.bilinear((1, 0), (0, 1)) == 2
    assert a.mod(2).to_rows() == [[1, 0], [1, 0]]


@given(square())
def test_determinant_matches_leibniz(rows):
    assert determinant(IntMatrix.from_rows(rows)) == leibniz_det(rows)


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank_rational(IntMatrix.from_rows(rows)) == Matrix(rows).rank()


@given(matrices(), primes)
def test_rank_mod_p_matches_sympy_gf(rows, p):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF

    dm = DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p))
    assert rank_mod_p(IntMatrix.from_rows(rows), p) == dm.rank()


@given(matrices(), primes)
def test_rank_mod_p_bounded_by_rational_rank(rows, p):
    m = IntMatrix.from_rows(rows)
    assert rank_mod_p(m, p) <= rank_rational(m) == rank_over(m, 0)


@given(square(), primes)
def test_determinant_mod_p(rows, p):
    m = IntMatrix.from_rows(rows)
    assert determinant_mod_p(m, p) == determinant(m) % p


@given(matrices())
def test_smith_matches_sympy(rows):
    m = IntMatrix.from_rows(rows)
    snf = smith_normal_form(m)
    ref = sympy_snf(Matrix(rows), domain=SZZ)
    diag = [abs(ref[i, i]) for i in range(min(ref.shape))]
    assert list(snf.elementary_divisors) == diag
    assert snf.rank == rank_rational(m)


@given(matrices(4, 4), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), max_size=6))
def test_smith_invariant_under_unimodular_row_ops(rows, ops):
    m = IntMatrix.from_rows(rows)
    a = [list(r) for r in rows]
    n = len(a)
    for i, j, k in ops:
        i, j = i % n, j % n
        if i != j:
            a[i] = [x + k * y for x, y in zip(a[i], a[j])]
    assert smith_normal_form(IntMatrix.from_rows(a)) == smith_normal_form(m)


@given(square(4))
def test_smith_product_is_abs_det(rows):
    m = IntMatrix.from_rows(rows)
    prod = 1
    for d in smith_normal_form(m).elementary_divisors:
        prod *= d
    assert prod == abs(determinant(m))


@given(matrices(), primes)
def test_rank_mod_p_from_smith(rows, p):
    m = IntMatrix.from_rows(rows)
    snf = smith_normal_form(m)
    assert rank_mod_p(m, p) == sum(1 for d in snf.elementary_divisors if d % p)


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(-7) == [7]
    assert prime_factors(1) == prime_factors(0) == []
