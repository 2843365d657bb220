from __future__ import annotations

import pytest

from rootforge.d4_char2 import (
    LABELS,
    ConventionError,
    UnipotentAction,
    act,
    apply,
    build_d4_module,
    commutator_action,
    d4_cubic_configuration,
    d4_lines,
    epsilon_order_independent,
    subspaces,
    u_action,
    uv_action,
    v_action,
    verify_decomposition,
    verify_pi_maps,
)
from rootforge.fields import ZZ, BinaryField, PrimeField
from rootforge.lattice import build_blowup_lattice

F2, F4 = BinaryField(1), BinaryField(2)


@pytest.fixture(scope="module", params=[F2, F4, ZZ], ids=lambda F: F.name)
def module(request):
    return build_d4_module(request.param)


def test_dimension_and_labels(module):
    assert module.dim == 10 == len(LABELS)
    assert module.z1 == module.alg.add(module.x("x1"), module.x("x2"), module.x("x3"))
    assert set(module.z3) == {(1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)}


def test_bracket_conventions(module):
    br, x = module.alg.bracket, module.x
    assert br(x("x4"), x("x1")) == x("x14")
    assert br(x("x24"), x("x1")) == br(x("x14"), x("x2")) == x("x124")
    assert br(x("x1"), x("x2")) == {}


def test_rejects_odd_characteristic():
    with pytest.raises(ValueError):
        build_d4_module(PrimeField(3))


def test_actions_over_zz():
    m = build_d4_module(ZZ)
    alg = m.alg
    for lam in (-2, 1, 3):
        u, v = u_action(m, lam), v_action(m, lam)
        assert act(m, u, m.x("x4")) == alg.add(m.x("x4"), alg.scale(-lam, m.z2), alg.scale(lam * lam, m.z3))
        assert apply(m, u, m.z2) == alg.add(m.z2, alg.scale(-2 * lam, m.z3))
        assert apply(m, v, m.z1) == alg.add(m.z1, alg.scale(lam, m.z2))
        assert act(m, u, m.x("x124")) == m.x("x124")
        assert u.is_unipotent(ZZ) and v.is_unipotent(ZZ)


def test_reduction_mod_2():
    mz, m2 = build_d4_module(ZZ), build_d4_module(F2)
    for lam in (0, 1):
        for g in ("u", "v"):
            mat_z = (u_action if g == "u" else v_action)(mz, lam).matrix
            mat_2 = (u_action if g == "u" else v_action)(m2, lam).matrix
            assert [[x % 2 for x in r] for r in mat_z] == [list(r) for r in mat_2]


def test_u_fixes_z2_in_char2():
    m = build_d4_module(F4)
    for lam in F4.elements():
        assert apply(m, u_action(m, lam), m.z2) == m.z2


def test_convention_error_on_bad_matrix():
    m = build_d4_module(F2)
    ident = tuple(tuple(int(i == j) for j in range(10)) for i in range(10))
    fake = UnipotentAction("v", 1, ident)
    with pytest.raises(ConventionError):
        act(m, fake, m.x("x1"))


def test_commutator_fixes_u_prime():
    m = build_d4_module(F4)
    for mu in F4.elements():
        c = commutator_action(m, mu)
        assert c.is_unipotent(F4)
        for w in subspaces(m)["u'"]:
            assert apply(m, c, w) == w


@pytest.mark.parametrize("F", [F2, F4], ids=lambda F: F.name)
def test_decomposition(F):
    rep = verify_decomposition(build_d4_module(F))
    assert rep.ok, [c for c, ok in rep.checks if not ok]


def test_frobenius_twist_over_f4():
    m = build_d4_module(F4)
    rep = verify_decomposition(m)
    w = F4.generator
    assert rep.frobenius_witness == "w"
    assert rep.twist_matrices["w"] == [["1", "0"], ["w+1", "1"]]  # w^2 = w + 1
    assert F4.mul(w, w) != w
    # the same element acts on u3 by lam itself
    g = uv_action(m, w)
    z1, z2 = subspaces(m)["u3"]
    assert apply(m, g, z1) == m.alg.add(z1, m.alg.scale(w, z2))


def test_f2_has_no_visible_twist():
    rep = verify_decomposition(build_d4_module(F2))
    assert rep.frobenius_witness is None


def test_decomposition_requires_char2():
    with pytest.raises(ValueError):
        verify_decomposition(build_d4_module(ZZ))


def test_pi_maps():
    rep = verify_pi_maps(build_d4_module(F2))
    assert rep.ok, [c for c, ok in rep.checks if not ok]
    assert rep.dim_u_le2 == 7 == rep.fiber_product_dim == rep.image_dim


def test_configuration():
    lat, rs = d4_cubic_configuration()
    assert rs.dynkin_type == "D4"
    pair = lat.pairing
    a = rs.simple_roots
    assert [pair(a[i], a[3]) for i in range(3)] == [1, 1, 1]
    assert all(pair(a[i], a[j]) == 0 for i in range(3) for j in range(3) if i != j)
    assert rs.components[0][0] == (0, 1, 2, 3)
    lines = d4_lines(lat)
    assert len(lines) == 6
    assert all(pair(v, v) == -1 and pair(v, lat.anticanonical) == 1 for v in lines)
    assert lines == d4_lines(build_blowup_lattice(3))


def test_signs_independent_of_leaf_order():
    assert epsilon_order_independent()
