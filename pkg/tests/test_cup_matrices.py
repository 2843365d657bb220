from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootforge.cup_matrices import (
    DEFAULT_PRIMES,
    bad_prime_report,
    build_cup_matrix,
    cup_matrices,
    sweep_primes,
    verify_characteristic,
)
from rootforge.exact_linalg import rank_over
from rootforge.root_system import detect_simple_roots, from_cartan_type, very_good_primes
from rootforge.structure_constants import build_epsilon_table

# exact failing sets, frozen from the Smith forms
BAD = {
    "A1": {2}, "A2": {3}, "A3": {2}, "A4": {5}, "A5": {2, 3}, "D4": {2}, "D5": {2},
    "E6": {2, 3}, "E7": {2, 3}, "E8": {2, 3, 5}, "A2+A1": {2, 3},
}


def setup(name):
    rs = from_cartan_type(name)
    return rs, build_epsilon_table(rs)


@pytest.mark.parametrize("name", sorted(BAD))
def test_bad_prime_sets(name):
    rs, eps = setup(name)
    rep = bad_prime_report(rs, eps)
    assert set(rep.bad_primes) == BAD[name]
    assert set(rep.bad_primes) <= set(very_good_primes(name).bad_primes)
    assert not rep.all_primes_fail


def test_e8_attribution():
    rep = bad_prime_report(*setup("E8"))
    assert rep.sources[5] == ["E8: cup n=6"]
    assert sorted(rep.sources[3]) == ["E8: cup n=10", "E8: cup n=4"]
    assert rep.cartan_det == {"E8": 1}


def test_d4_level3_matrix():
    rs, eps = setup("D4")
    cm = build_cup_matrix(rs, eps, 3)
    assert cm.row_index == ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1))
    assert cm.matrix.to_rows() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    v = verify_characteristic(rs, eps, 2)
    assert v.cup_ranks == {2: (3, 3), 3: (2, 3), 4: (1, 1), 5: (1, 1)}
    assert not v.cartan_invertible and not v.overall
    assert verify_characteristic(rs, eps, 0).overall


def test_errors_and_defaults():
    rs, eps = setup("A2")
    with pytest.raises(ValueError):
        build_cup_matrix(rs, eps, 1)
    with pytest.raises(ValueError):
        build_cup_matrix(rs, eps, 3)
    assert DEFAULT_PRIMES == (2, 3, 5, 7, 11, 13)
    assert sweep_primes(bad_prime_report(*setup("A4"))) == DEFAULT_PRIMES
    assert 17 in sweep_primes(bad_prime_report(*setup("A16")))


@given(st.sampled_from(["A4", "D4", "D5", "E6"]), st.permutations(range(6)), st.data())
def test_rank_profile_independent_of_base_order(name, perm, data):
    """Reordering the base changes the signs but not any rank over any field."""
    rs, eps = setup(name)
    order = [i for i in perm if i < rs.rank]
    other = detect_simple_roots(rs.lattice, [rs.simple_roots[i] for i in order])
    eps2 = build_epsilon_table(other)
    p = data.draw(st.sampled_from((0,) + DEFAULT_PRIMES))
    ranks = [rank_over(cm.matrix, p) for cm in cup_matrices(rs, eps)]
    ranks2 = [rank_over(cm.matrix, p) for cm in cup_matrices(other, eps2)]
    assert ranks == ranks2


@pytest.mark.parametrize("name", ["A3", "D5", "E6"])
def test_entries_are_signs_on_simple_differences(name):
    rs, eps = setup(name)
    for cm in cup_matrices(rs, eps):
        rows = cm.matrix.to_rows()
        for i, g in enumerate(cm.row_index):
            nz = sum(1 for x in rows[i] if x)
            # each root of height n >= 2 has at least one predecessor
            assert nz >= 1
