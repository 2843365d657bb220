from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootforge.d4_char2 import d4_cubic_configuration
from rootforge.lattice import build_blowup_lattice, build_quadric_lattice
from rootforge.root_system import from_cartan_type, reflect
from rootforge.subsystem import (
    Embedding,
    base_sets,
    classify,
    closure,
    count_embeddings_up_to_weyl,
    max_rank,
    psi_root_system,
    psi_type,
    weyl_orbits,
)

CUBIC = build_blowup_lattice(3)
E6_PSI = psi_root_system(CUBIC)


@pytest.mark.parametrize("d,label", [(1, "E8"), (2, "E7"), (3, "E6"), (4, "D5"), (5, "A4"), (6, "A2+A1"),
                                     (7, "A1"), (8, "empty"), (9, "empty")])
def test_psi_types(d, label):
    assert str(psi_type(build_blowup_lattice(d))) == label


def test_quadric_type():
    assert str(psi_type(build_quadric_lattice())) == "A1"


def test_classify_examples():
    _, d4 = d4_cubic_configuration()
    assert classify(Embedding(E6_PSI, d4.simple_roots)) == "D4"
    assert classify(Embedding(E6_PSI, [CUBIC.vector(e1=1, e2=-1)])) == "A1"
    a2 = [CUBIC.vector(e1=1, e2=-1), CUBIC.vector(e2=1, e3=-1)]
    assert classify(Embedding(E6_PSI, a2)) == "A2"


def test_embedding_validation():
    with pytest.raises(ValueError):
        Embedding(E6_PSI, [CUBIC.vector(e1=1)])
    with pytest.raises(ValueError):
        Embedding(E6_PSI, [CUBIC.vector(e1=1, e2=-1), CUBIC.vector(e1=-1, e2=1)])


def brute_force_a1_count(name):
    """Orbits of single roots by direct closure under all reflections."""
    rs = from_cartan_type(name)
    roots = set(rs.all_roots())
    orbits = 0
    while roots:
        start = roots.pop()
        orbit = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for a in rs.all_roots():
                w = reflect(rs, a, v)
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        roots -= orbit
        orbits += 1
    return orbits


@pytest.mark.parametrize("name", ["A2", "A4", "D4", "D5"])
def test_single_roots_form_one_orbit(name):
    assert count_embeddings_up_to_weyl(name, "A1").count == 1 == brute_force_a1_count(name)


def test_no_orthogonal_pair_in_a2():
    rs = from_cartan_type("A2")
    roots = rs.all_roots()
    assert not any(rs.lattice.pairing(a, b) == 0 for a in roots for b in roots)
    res = count_embeddings_up_to_weyl("A2", "A1+A1")
    assert res.count == 0 and res.n_base_sets == 0


def test_d4_in_e6_is_unique():
    res = count_embeddings_up_to_weyl(E6_PSI, "D4")
    assert res.count == 1
    assert res.closure_size == 24


def oracle_orbit_count(ambient, sub):
    """Combinations of roots checked by classify, orbits under every reflection."""
    from itertools import combinations

    from rootforge.root_system import DynkinType

    rs = from_cartan_type(ambient)
    roots = rs.all_roots()
    want = DynkinType.parse(sub)
    sets = set()
    for combo in combinations(roots, want.rank):
        try:
            if classify(Embedding(rs, combo)) == want:
                sets.add(frozenset(combo))
        except ValueError:
            continue
    orbits = 0
    while sets:
        orbit = {sets.pop()}
        frontier = list(orbit)
        while frontier:
            s = frontier.pop()
            for a in roots:
                t = frozenset(reflect(rs, a, v) for v in s)
                if t not in orbit:
                    orbit.add(t)
                    frontier.append(t)
        sets -= orbit
        orbits += 1
    return orbits


@pytest.mark.parametrize("ambient,sub,count", [("D4", "A1+A1", 3), ("D4", "3A1", 1), ("D4", "A2", 1),
                                               ("A4", "A1+A1", 1), ("D5", "A3", 2)])
def test_orbit_counts_against_oracle(ambient, sub, count):
    res = count_embeddings_up_to_weyl(ambient, sub)
    assert res.count == count == oracle_orbit_count(ambient, sub)
    assert res.n_base_sets == sum(res.orbit_sizes)


def test_rank_cap(monkeypatch):
    monkeypatch.setenv("ROOTFORGE_MAX_RANK", "4")
    assert max_rank() == 4
    with pytest.raises(ValueError):
        count_embeddings_up_to_weyl("D5", "A1")
    with pytest.warns(RuntimeWarning):
        assert count_embeddings_up_to_weyl("D5", "A1", allow_large=True).count == 1
    monkeypatch.setenv("ROOTFORGE_MAX_RANK", "six")
    with pytest.raises(ValueError):
        max_rank()


def test_weyl_orbits_vector_interface():
    rs = from_cartan_type("A3")
    orbits = weyl_orbits(rs, base_sets(rs, "A2"))
    assert len(orbits) == 1
    assert all(len(closure(rs.lattice, s)) == 6 for s in orbits[0])


@given(st.lists(st.integers(0, 5), max_size=15))
def test_classify_invariant_under_weyl(word):
    _, d4 = d4_cubic_configuration()
    roots = list(d4.simple_roots)
    for k in word:
        roots = [reflect(E6_PSI, E6_PSI.simple_roots[k], v) for v in roots]
    e = Embedding(E6_PSI, roots)
    assert classify(e) == "D4"
    assert len(closure(CUBIC, roots)) == 24
