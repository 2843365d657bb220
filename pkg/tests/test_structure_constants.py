from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootforge.fields import ZZ, BinaryField
from rootforge.root_system import from_cartan_type
from rootforge.structure_constants import (
    EpsilonTable,
    JacobiError,
    act_product,
    build_epsilon_table,
    build_nilpotent_algebra,
    exp_action,
)

A1, A2, A3, A4 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def add(*vs):
    return tuple(map(sum, zip(*vs)))


def test_d4_signs():
    eps = build_epsilon_table(from_cartan_type("D4"))
    assert eps[A4, A1] == 1
    assert eps[A1, A4] == -1
    assert eps[add(A2, A4), A1] == 1
    assert eps[add(A1, A4), A2] == 1
    # f on simple roots: (a_i, a_j) above the diagonal, -1 on it, 0 below
    assert eps.f(A1, A4) == 1 and eps.f(A4, A1) == 0 and eps.f(A1, A1) == -1


@pytest.mark.parametrize("name", ["A2", "A5", "D4", "D6", "E6", "E7"])
def test_antisymmetry_and_jacobi(name):
    rs = from_cartan_type(name)
    eps = build_epsilon_table(rs)
    for (a, b), s in eps.signs.items():
        assert s * eps.signs[b, a] == -1
        assert s == eps.eps(a, b)
    alg = build_nilpotent_algebra(rs, check=False)
    assert alg.jacobi_violations() == []


def test_corrupted_sign_breaks_jacobi():
    rs = from_cartan_type("D4")
    eps = build_epsilon_table(rs)
    signs = dict(eps.signs)
    a, b = A1, A4
    signs[a, b], signs[b, a] = -signs[a, b], -signs[b, a]
    bad = EpsilonTable(eps.order, eps.f_matrix, signs)
    with pytest.raises(JacobiError):
        build_nilpotent_algebra(rs, eps=bad)


def test_truncation_dimensions():
    rs = from_cartan_type("D4")
    assert build_nilpotent_algebra(rs, 3).dim == 10
    assert build_nilpotent_algebra(rs, 2).dim == 7
    assert build_nilpotent_algebra(rs).dim == 12


def test_x_coefficients():
    alg = build_nilpotent_algebra(from_cartan_type("D4"), 3, BinaryField(2))
    assert alg.x(A1, 0b10) == {A1: 2}
    assert alg.x(A1, 0) == {}
    with pytest.raises(ValueError):
        alg.x(A1, 5)
    with pytest.raises(ValueError):
        alg.x((1, 1, 1, 2))  # height 5, outside the truncation


def test_exp_action_rejects_pure_alpha():
    alg = build_nilpotent_algebra(from_cartan_type("A2"))
    with pytest.raises(ValueError):
        exp_action(alg, (1, 0), 1, {(1, 0): 3})
    assert act_product(alg, [((1, 0), 1)], {(1, 0): 3}) == {(1, 0): 3}


def elements(alg):
    return st.dictionaries(st.sampled_from(alg.basis), st.integers(-3, 3)).map(
        lambda d: {k: v for k, v in sorted(d.items()) if v}
    )


ALGS = {f"{name}<={h}": build_nilpotent_algebra(from_cartan_type(name), h) for name, h in
        [("D4", 5), ("D4", 3), ("A4", 4), ("E6", 4)]}


@given(st.sampled_from(sorted(ALGS)), st.data())
def test_exp_is_automorphism(key, data):
    alg = ALGS[key]
    alpha = data.draw(st.sampled_from(alg.basis))
    c = data.draw(st.integers(-3, 3))
    y, z = data.draw(elements(alg)), data.draw(elements(alg))
    g = lambda w: act_product(alg, [(alpha, c)], w)  # noqa: E731
    assert g(alg.bracket(y, z)) == alg.bracket(g(y), g(z))


@given(st.sampled_from(sorted(ALGS)), st.data())
def test_exp_group_law(key, data):
    alg = ALGS[key]
    alpha = data.draw(st.sampled_from(alg.basis))
    a, b = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    y = data.draw(elements(alg))
    assert act_product(alg, [(alpha, a), (alpha, b)], y) == act_product(alg, [(alpha, a + b)], y)
    assert act_product(alg, [(alpha, a), (alpha, -a)], y) == y


@given(st.data())
def test_bracket_bilinear_antisymmetric_over_zz(data):
    alg = build_nilpotent_algebra(from_cartan_type("A3"))
    y, z, w = data.draw(elements(alg)), data.draw(elements(alg)), data.draw(elements(alg))
    assert alg.bracket(y, z) == alg.scale(-1, alg.bracket(z, y))
    assert alg.bracket(alg.add(y, w), z) == alg.add(alg.bracket(y, z), alg.bracket(w, z))
    assert alg.field is ZZ
