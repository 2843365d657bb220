"""Root subsystems of Psi, their Dynkin types, and Weyl-orbit counts of embeddings.

Base-sets are stored as sorted tuples of ambient lattice vectors, so two
ordered bases of the same set compare equal.  Orbit searches act by the
simple reflections of the ambient system only, never materializing the Weyl
group.
"""

from __future__ import annotations

import logging
import os
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact_linalg import IntMatrix, rank_rational
from .lattice import LatticeVector, PicardLattice, neg2_classes
from .root_system import (
    DynkinType,
    RootSystem,
    cartan_matrix_of_type,
    classify_adjacency,
    detect_simple_roots,
    from_cartan_type,
)

log = logging.getLogger(__name__)

BaseSet = tuple[LatticeVector, ...]


def max_rank() -> int:
    """Largest ambient rank searched without ``allow_large`` (``ROOTFORGE_MAX_RANK``)."""
    raw = os.environ.get("ROOTFORGE_MAX_RANK", "6")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ROOTFORGE_MAX_RANK must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Embedding:
    ambient: RootSystem
    sub_simple_roots: tuple[LatticeVector, ...]

    def __post_init__(self) -> None:
        lat = self.ambient.lattice
        roots = tuple(tuple(v) for v in self.sub_simple_roots)
        object.__setattr__(self, "sub_simple_roots", roots)
        for v in roots:
            if lat.pairing(v, v) != -2:
                raise ValueError(f"{v} does not have norm -2")
            if not self.ambient.is_root(v):
                raise ValueError(f"{v} is not a root of the ambient system")
        for i, a in enumerate(roots):
            for b in roots[i + 1:]:
                if lat.pairing(a, b) not in (0, 1):
                    raise ValueError(f"{a}, {b} pair to {lat.pairing(a, b)}")
        if roots and rank_rational(IntMatrix.from_rows(roots)) != len(roots):
            raise ValueError("sub roots are linearly dependent")


def _adjacency(lat: PicardLattice, roots: Sequence[LatticeVector]) -> set[frozenset[int]]:
    n = len(roots)
    return {frozenset((i, j)) for i in range(n) for j in range(i + 1, n) if lat.pairing(roots[i], roots[j]) == 1}


def classify(e: Embedding) -> DynkinType:
    comps = classify_adjacency(len(e.sub_simple_roots), _adjacency(e.ambient.lattice, e.sub_simple_roots))
    return DynkinType(tuple(t for _, t in comps)).canonical()


def closure(lat: PicardLattice, base: Sequence[LatticeVector]) -> set[LatticeVector]:
    """All roots generated from ``base`` by its own reflections."""
    base = [tuple(v) for v in base]
    out = set(base)
    queue = deque(base)
    while queue:
        v = queue.popleft()
        for a in base:
            k = -lat.pairing(a, v)
            w = tuple(x - k * y for x, y in zip(v, a))
            if w not in out:
                out.add(w)
                queue.append(w)
    return out


def psi_root_system(lat: PicardLattice) -> RootSystem:
    """Psi with a base cut out by a generic linear functional.

    Positive roots are those where the functional is positive; the simple
    ones are the positive roots that are not a sum of two positive roots.
    """
    psi = neg2_classes(lat)
    if not psi:
        return detect_simple_roots(lat, [], psi)
    for step in range(1, 50):
        weights = [(step * 7 + 1) ** k + k for k in range(lat.rank)]
        values = [sum(w * x for w, x in zip(weights, v)) for v in psi]
        if all(values):
            break
    else:  # pragma: no cover - the loop always finds a generic functional
        raise AssertionError("no generic functional found")
    pos = [v for v, val in zip(psi, values) if val > 0]
    pset = set(pos)
    decomposable = {tuple(x + y for x, y in zip(a, b)) for a in pos for b in pos}
    simple = sorted(v for v in pos if v not in decomposable)
    if not pset:
        raise AssertionError("empty positive system")
    rs = detect_simple_roots(lat, simple, psi)
    if len(rs.all_roots()) != len(psi):
        raise AssertionError("base does not generate Psi")
    return rs


def psi_type(lat: PicardLattice) -> DynkinType:
    return psi_root_system(lat).dynkin_type.canonical()


def _ambient(ambient: DynkinType | str | RootSystem) -> RootSystem:
    if isinstance(ambient, RootSystem):
        return ambient
    return from_cartan_type(ambient)


@dataclass(frozen=True)
class _RootTable:
    """Roots of an ambient system by index, with pairings and reflections precomputed."""

    roots: tuple[LatticeVector, ...]
    pair: tuple[tuple[int, ...], ...]
    # perm[a][v] = index of s_{roots[a]}(roots[v])
    perm: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, ambient: RootSystem) -> _RootTable:
        roots = tuple(ambient.all_roots())
        where = {v: i for i, v in enumerate(roots)}
        lat = ambient.lattice
        pair = tuple(tuple(lat.pairing(a, b) for b in roots) for a in roots)
        perm = tuple(
            tuple(where[tuple(x + pair[a][v] * y for x, y in zip(roots[v], roots[a]))] for v in range(len(roots)))
            for a in range(len(roots))
        )
        return cls(roots, pair, perm)

    def closure(self, base: Sequence[int]) -> set[int]:
        out = set(base)
        queue = deque(base)
        while queue:
            v = queue.popleft()
            for a in base:
                w = self.perm[a][v]
                if w not in out:
                    out.add(w)
                    queue.append(w)
        return out


def _base_set_indices(table: _RootTable, sub_type: DynkinType) -> list[tuple[int, ...]]:
    c = cartan_matrix_of_type(sub_type)
    n = c.rows
    pair = table.pair
    found: set[tuple[int, ...]] = set()
    chosen: list[int] = []

    def rec(i: int) -> None:
        if i == n:
            found.add(tuple(sorted(chosen)))
            return
        for r in range(len(table.roots)):
            if all(pair[chosen[j]][r] == -c[j, i] for j in range(i)):
                chosen.append(r)
                rec(i + 1)
                chosen.pop()

    if n:
        rec(0)
    # a diagram with a negative definite gram forces independence
    return sorted(found)


def base_sets(ambient: RootSystem, sub_type: DynkinType | str) -> list[BaseSet]:
    """Every set of ambient roots whose pairings realize the diagram of ``sub_type``.

    Backtracks over the sub diagram in node order; the result is sorted and
    duplicate-free.
    """
    if isinstance(sub_type, str):
        sub_type = DynkinType.parse(sub_type)
    table = _RootTable.of(ambient)
    return [tuple(table.roots[i] for i in s) for s in _base_set_indices(table, sub_type)]


def _orbits(table: _RootTable, simple: Sequence[int], sets: Iterable[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    remaining = set(sets)
    orbits = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for a in simple:
                p = table.perm[a]
                t = tuple(sorted(p[v] for v in s))
                if t not in orbit:
                    orbit.add(t)
                    queue.append(t)
        if not orbit <= remaining:
            raise AssertionError("Weyl group moved a base-set outside the enumerated family")
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits


def weyl_orbits(ambient: RootSystem, sets: Iterable[BaseSet]) -> list[list[BaseSet]]:
    """Partition ``sets`` into orbits of the ambient Weyl group (BFS per orbit)."""
    table = _RootTable.of(ambient)
    where = {v: i for i, v in enumerate(table.roots)}
    simple = [where[tuple(a)] for a in ambient.simple_roots]
    idx = [tuple(sorted(where[tuple(v)] for v in s)) for s in sets]
    return [[tuple(table.roots[i] for i in s) for s in o] for o in _orbits(table, simple, idx)]


@dataclass(frozen=True)
class OrbitCount:
    ambient: DynkinType
    sub: DynkinType
    n_base_sets: int
    orbit_sizes: tuple[int, ...]
    closure_size: int | None

    @property
    def count(self) -> int:
        return len(self.orbit_sizes)


def count_embeddings_up_to_weyl(
    ambient_type: DynkinType | str | RootSystem,
    sub_type: DynkinType | str,
    allow_large: bool = False,
    check_closure: bool = True,
) -> OrbitCount:
    """Number of W(ambient)-orbits of base-sets of ``sub_type``."""
    if isinstance(sub_type, str):
        sub_type = DynkinType.parse(sub_type)
    amb = _ambient(ambient_type)
    cap = max_rank()
    if amb.rank > cap:
        if not allow_large:
            raise ValueError(f"ambient rank {amb.rank} exceeds the orbit-search cap {cap} (ROOTFORGE_MAX_RANK)")
        warnings.warn(f"orbit search in rank {amb.rank} may take minutes", RuntimeWarning, stacklevel=2)
    table = _RootTable.of(amb)
    sets = _base_set_indices(table, sub_type)
    expected = 2 * len(from_cartan_type(sub_type).positive_roots) if sub_type.rank else 0
    closure_size = None
    if check_closure and sets:
        for s in sets:
            size = len(table.closure(s))
            if size != expected:
                raise AssertionError(f"base-set {s} closes to {size} roots, expected {expected}")
        closure_size = expected
    where = {v: i for i, v in enumerate(table.roots)}
    orbits = _orbits(table, [where[a] for a in amb.simple_roots], sets)
    log.debug("%s in %s: %d base-sets, %d orbits", sub_type, amb.dynkin_type, len(sets), len(orbits))
    return OrbitCount(amb.dynkin_type.canonical(), sub_type.canonical(), len(sets),
                      tuple(len(o) for o in orbits), closure_size)
