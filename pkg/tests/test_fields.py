from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootforge.fields import ZZ, BinaryField, PrimeField, field_rank, parse_field, solve_in_span

F4 = BinaryField(2)
F8 = BinaryField(3)


@pytest.mark.parametrize("F", [BinaryField(1), F4, F8, BinaryField(4), PrimeField(5)])
def test_field_axioms_exhaustive(F):
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == F.zero()
        assert F.mul(a, F.one()) == a
        if a != F.zero():
            assert F.mul(a, F.inv(a)) == F.one()
        for b in els:
            assert F.mul(a, b) == F.mul(b, a)
            for c in els[:4]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_f4_structure():
    w = F4.generator
    assert F4.mul(w, w) == F4.add(w, 1)  # w^2 = w + 1
    assert F4.pow(w, 3) == 1
    assert [F4.fmt(a) for a in F4.elements()] == ["0", "1", "w", "w+1"]
    # Frobenius fixes exactly F2
    assert [a for a in F4.elements() if F4.mul(a, a) == a] == [0, 1]


def test_coerce_and_parse():
    with pytest.raises(ValueError):
        F4.coerce(4)
    assert parse_field("F4") == F4
    assert parse_field("f2") == PrimeField(2)
    assert parse_field("ZZ") is ZZ
    assert parse_field("F7") == PrimeField(7)
    with pytest.raises(ValueError):
        parse_field("F6")
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ZeroDivisionError):
        F4.inv(0)


@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_solve_in_span_f4(basis, coeffs):
    # take an independent sub-basis, build a combination, and recover it
    indep = []
    for v in basis:
        if field_rank(F4, indep + [v]) > len(indep):
            indep.append(v)
    if not indep:
        return
    c = coeffs[: len(indep)]
    target = [0] * 4
    for ci, v in zip(c, indep):
        target = [F4.add(t, F4.mul(ci, x)) for t, x in zip(target, v)]
    assert solve_in_span(F4, indep, target) == c


def test_solve_outside_span():
    assert solve_in_span(F4, [[1, 0, 0]], [0, 1, 0]) is None
    assert field_rank(PrimeField(3), [[1, 2], [2, 1]]) == 1
