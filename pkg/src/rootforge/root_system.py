"""Simply-laced root systems inside a lattice with a negative definite root span.

Sign convention: roots have self-pairing -2, adjacent simple roots pair to +1,
and the coroot of ``alpha`` is the functional ``x -> (-alpha, x)``.  Positive
roots are stored by their coordinates in the simple roots; ``to_ambient``
maps them back into the lattice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .exact_linalg import IntMatrix, determinant, prime_factors, rank_rational
from .lattice import LatticeVector, PicardLattice

Coeffs = tuple[int, ...]

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


@dataclass(frozen=True)
class DynkinType:
    """A sum of irreducible ADE types, e.g. ``A2+A1``.

    ``components`` keeps the construction order; ``canonical()`` sorts it
    (E before D before A, larger rank first) for comparisons.
    """

    components: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        norm: list[tuple[str, int]] = []
        for fam, r in self.components:
            fam = fam.upper()
            if fam in "BCFG" and len(fam) == 1:
                raise ValueError(f"{fam}{r} is not simply laced")
            if fam not in _FAMILY_ORDER or r < 1:
                raise ValueError(f"unknown type {fam}{r}")
            if fam == "D" and r == 2:
                norm += [("A", 1), ("A", 1)]
            elif fam == "D" and r == 3:
                norm.append(("A", 3))
            elif fam == "D" and r < 2 or fam == "E" and r not in (6, 7, 8):
                raise ValueError(f"unknown type {fam}{r}")
            else:
                norm.append((fam, r))
        object.__setattr__(self, "components", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> DynkinType:
        text = text.replace(" ", "").replace("_", "")
        if text in ("", "0", "empty"):
            return cls(())
        comps: list[tuple[str, int]] = []
        for part in text.split("+"):
            m = re.fullmatch(r"(\d*)([A-Za-z])(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse Dynkin type {text!r}")
            mult = int(m.group(1) or 1)
            comps += [(m.group(2).upper(), int(m.group(3)))] * mult
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def canonical(self) -> DynkinType:
        return DynkinType(tuple(sorted(self.components, key=lambda c: (_FAMILY_ORDER[c[0]], -c[1]))))

    def __str__(self) -> str:
        return "+".join(f"{f}{r}" for f, r in self.canonical().components) or "empty"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, str):
            other = DynkinType.parse(other)
        if not isinstance(other, DynkinType):
            return NotImplemented
        return self.canonical().components == other.canonical().components

    def __hash__(self) -> int:
        return hash(self.canonical().components)


def _edges(fam: str, r: int, d4_central_last: bool) -> list[tuple[int, int]]:
    """Dynkin edges on 0-based nodes in Bourbaki numbering."""
    if fam == "A":
        return [(i, i + 1) for i in range(r - 1)]
    if fam == "D":
        if r == 4 and d4_central_last:
            return [(0, 3), (1, 3), (2, 3)]
        return [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    # E_r: 1-3-4-5-...-r with 2 attached to 4
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, r - 1)]


def cartan_matrix_of_type(t: DynkinType, d4_central_last: bool = True) -> IntMatrix:
    n = t.rank
    c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    off = 0
    for fam, r in t.components:
        for i, j in _edges(fam, r, d4_central_last):
            c[off + i][off + j] = c[off + j][off + i] = -1
        off += r
    return IntMatrix.from_rows(c, n)


def classify_adjacency(n: int, adjacent: set[frozenset[int]]) -> list[tuple[tuple[int, ...], tuple[str, int]]]:
    """Split a simple graph on ``range(n)`` into ADE trees.

    Returns ``[(nodes, (family, rank)), ...]`` with nodes in increasing order,
    components ordered by their smallest node.
    """
    nbrs: dict[int, set[int]] = {i: set() for i in range(n)}
    for e in adjacent:
        i, j = tuple(e)
        nbrs[i].add(j)
        nbrs[j].add(i)
    seen: set[int] = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in nbrs[v] - comp:
                comp.add(w)
                stack.append(w)
        seen |= comp
        nodes = tuple(sorted(comp))
        n_edges = sum(len(nbrs[v]) for v in nodes) // 2
        if n_edges != len(nodes) - 1:
            raise ValueError(f"Dynkin graph on {nodes} has a cycle")
        degs = {v: len(nbrs[v]) for v in nodes}
        if max(degs.values()) > 3:
            raise ValueError(f"vertex of degree >= 4 in {nodes}: not ADE")
        branch = [v for v in nodes if degs[v] == 3]
        if not branch:
            out.append((nodes, ("A", len(nodes))))
            continue
        if len(branch) > 1:
            raise ValueError(f"two branch points in {nodes}: not ADE")
        b = branch[0]
        arms = []
        for w in nbrs[b]:
            length, prev, cur = 1, b, w
            while degs[cur] == 2:
                prev, cur = cur, next(iter(nbrs[cur] - {prev}))
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            out.append((nodes, ("D", len(nodes))))
        elif arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            out.append((nodes, ("E", len(nodes))))
        else:
            raise ValueError(f"arms {arms} do not give an ADE diagram")
    return out


@dataclass(frozen=True)
class RootSystem:
    """Root system with a fixed ordered base.

    ``positive_roots`` holds simple-root coordinates sorted by height and then
    lexicographically; ``components`` lists node indices and type labels.
    """

    lattice: PicardLattice
    simple_roots: tuple[LatticeVector, ...]
    positive_roots: tuple[Coeffs, ...]
    components: tuple[tuple[tuple[int, ...], tuple[str, int]], ...]
    cartan: IntMatrix = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dynkin_type(self) -> DynkinType:
        return DynkinType(tuple(t for _, t in self.components))

    @cached_property
    def _coeff_index(self) -> dict[Coeffs, int]:
        return {c: i for i, c in enumerate(self.positive_roots)}

    @cached_property
    def _ambient_index(self) -> dict[LatticeVector, Coeffs]:
        out = {}
        for c in self.positive_roots:
            out[self.to_ambient(c)] = c
            out[self.to_ambient(tuple(-x for x in c))] = tuple(-x for x in c)
        return out

    def to_ambient(self, coeffs: Sequence[int]) -> LatticeVector:
        n = self.lattice.rank
        return tuple(sum(c * a[k] for c, a in zip(coeffs, self.simple_roots)) for k in range(n))

    def to_coeffs(self, v: Sequence[int]) -> Coeffs:
        """Simple-root coordinates of a root given in the ambient lattice."""
        try:
            return self._ambient_index[tuple(v)]
        except KeyError:
            raise ValueError(f"{tuple(v)} is not a root") from None

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._ambient_index

    def is_positive_coeffs(self, c: Sequence[int]) -> bool:
        return tuple(c) in self._coeff_index

    def index(self, c: Sequence[int]) -> int:
        return self._coeff_index[tuple(c)]

    def pair_coeffs(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Pairing of two simple-coordinate vectors, ``-a^T C b``."""
        return -self.cartan.bilinear(a, b)

    def simple(self, i: int) -> Coeffs:
        return tuple(int(j == i) for j in range(self.rank))

    @staticmethod
    def height(c: Sequence[int]) -> int:
        return sum(c)

    def roots_of_height(self, n: int) -> list[Coeffs]:
        return [c for c in self.positive_roots if sum(c) == n]

    @property
    def max_height(self) -> int:
        return max((sum(c) for c in self.positive_roots), default=0)

    def height_profile(self) -> tuple[int, ...]:
        return tuple(len(self.roots_of_height(n)) for n in range(1, self.max_height + 1))

    def component_of(self, c: Sequence[int]) -> int:
        supp = {i for i, x in enumerate(c) if x}
        hits = [k for k, (nodes, _) in enumerate(self.components) if supp & set(nodes)]
        if len(hits) != 1:
            raise ValueError(f"{tuple(c)} is not supported on a single component")
        return hits[0]

    def all_roots(self) -> list[LatticeVector]:
        out = [self.to_ambient(c) for c in self.positive_roots]
        out += [tuple(-x for x in v) for v in out]
        return sorted(out)


def _saturate(cartan: IntMatrix) -> list[Coeffs]:
    """Positive roots by adding simple roots while the pairing allows it."""
    n = cartan.rows
    layer = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    roots = list(layer)
    seen = set(layer)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # beta + alpha_i is a root iff (beta, alpha_i) = 1, i.e. <alpha_i^v, beta> = -1
                if sum(cartan[i, j] * beta[j] for j in range(n)) == -1:
                    cand = tuple(b + int(j == i) for j, b in enumerate(beta))
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
        roots += nxt
        layer = nxt
    return sorted(roots, key=lambda c: (sum(c), c))


def _build(lattice: PicardLattice, simple: Sequence[LatticeVector]) -> RootSystem:
    simple = tuple(tuple(v) for v in simple)
    n = len(simple)
    for a in simple:
        if lattice.pairing(a, a) != -2:
            raise ValueError(f"simple root {a} does not have self-pairing -2")
        if lattice.anticanonical is not None and lattice.pairing(a, lattice.anticanonical) != 0:
            raise ValueError(f"simple root {a} is not orthogonal to K")
    adjacent = set()
    for i in range(n):
        for j in range(i + 1, n):
            p = lattice.pairing(simple[i], simple[j])
            if p not in (0, 1):
                raise ValueError(f"simple roots {i},{j} pair to {p}; expected 0 or 1")
            if p == 1:
                adjacent.add(frozenset((i, j)))
    if n and rank_rational(IntMatrix.from_rows(simple)) != n:
        raise ValueError("simple roots are linearly dependent")
    cartan = IntMatrix.from_rows(
        [[-lattice.pairing(simple[i], simple[j]) for j in range(n)] for i in range(n)], n
    )
    comps = classify_adjacency(n, adjacent)
    return RootSystem(lattice, simple, tuple(_saturate(cartan)), tuple(comps), cartan)


def from_cartan_type(t: DynkinType | str, d4_central_last: bool = True) -> RootSystem:
    """Root system of type ``t`` on the abstract lattice with gram ``-C``.

    D4 defaults to three leaves followed by the branch node.
    """
    if isinstance(t, str):
        t = DynkinType.parse(t)
    c = cartan_matrix_of_type(t, d4_central_last)
    n = c.rows
    gram = IntMatrix(n, n, tuple(-x for x in c.entries))
    lat = PicardLattice(gram, None, tuple(f"a{i + 1}" for i in range(n)))
    rs = _build(lat, [lat.basis_vector(i) for i in range(n)])
    if rs.dynkin_type != t:
        raise AssertionError(f"constructed {rs.dynkin_type}, expected {t}")
    return rs


def detect_simple_roots(
    lattice: PicardLattice,
    basis: Sequence[LatticeVector],
    psi: Sequence[LatticeVector] | None = None,
) -> RootSystem:
    """Root system whose base is ``basis`` (in the given order) inside ``lattice``.

    When ``psi`` is given, every basis vector and every root of the closure
    must lie in it.
    """
    rs = _build(lattice, basis)
    if psi is not None:
        pset = set(map(tuple, psi))
        missing = [v for v in rs.all_roots() if v not in pset]
        if missing:
            raise ValueError(f"{len(missing)} closure roots are not in Psi, e.g. {missing[0]}")
    return rs


def cartan_matrix(rs: RootSystem) -> IntMatrix:
    return rs.cartan


def coroot(rs: RootSystem, alpha: Sequence[int]) -> tuple[int, ...]:
    """Coroot as a row vector on the ambient lattice: ``x -> (-alpha, x)``."""
    if not rs.is_root(alpha):
        raise ValueError(f"{tuple(alpha)} is not a root")
    g = rs.lattice.gram
    return tuple(-x for x in g.apply(alpha))


def coroot_pairing(rs: RootSystem, alpha: Sequence[int], x: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(coroot(rs, alpha), x))


def reflect(rs: RootSystem, alpha: Sequence[int], v: Sequence[int]) -> LatticeVector:
    """``v - <alpha^v, v> alpha``."""
    k = coroot_pairing(rs, alpha, v)
    return tuple(x - k * a for x, a in zip(v, alpha))


def highest_root_coeffs(rs: RootSystem, component: int) -> Coeffs:
    if not 0 <= component < len(rs.components):
        raise ValueError(f"no component {component}")
    nodes = set(rs.components[component][0])
    cands = [c for c in rs.positive_roots if {i for i, x in enumerate(c) if x} <= nodes]
    top = max(sum(c) for c in cands)
    best = [c for c in cands if sum(c) == top]
    if len(best) != 1:
        raise AssertionError("highest root is not unique")
    return best[0]


def highest_root(rs: RootSystem, component: int) -> LatticeVector:
    return rs.to_ambient(highest_root_coeffs(rs, component))


class PrimeConditions(NamedTuple):
    bad_primes: frozenset[int]
    description: str


def very_good_primes(t: DynkinType | str) -> PrimeConditions:
    """Primes that are not very good for some component of ``t``.

    A prime is bad if it divides a coefficient of the highest root or the
    determinant of the Cartan matrix of an irreducible component.
    """
    if isinstance(t, str):
        t = DynkinType.parse(t)
    bad: set[int] = set()
    for comp in t.components:
        rs = from_cartan_type(DynkinType((comp,)))
        for c in highest_root_coeffs(rs, 0):
            bad.update(prime_factors(c))
        bad.update(prime_factors(determinant(rs.cartan)))
    desc = "all p" if not bad else "all p != " + ",".join(map(str, sorted(bad)))
    return PrimeConditions(frozenset(bad), desc)


def is_very_good(t: DynkinType | str, p: int) -> bool:
    return p == 0 or p not in very_good_primes(t).bad_primes


class GroupDimensions(NamedTuple):
    dim_g: int
    semisimple_rank: int
    torus_quotient_dim: int


def group_dimensions(rs: RootSystem, d: int) -> GroupDimensions:
    """Dimension data of the reductive group with root datum (Lambda, Phi)."""
    n = 10 - d
    if rs.lattice.anticanonical is not None and rs.lattice.rank != n:
        raise ValueError(f"lattice rank {rs.lattice.rank} does not match degree {d}")
    return GroupDimensions(n + 2 * len(rs.positive_roots), rs.rank, n - rs.rank)
