"""Level-to-level cup matrices and their surjectivity per characteristic.

The level-``n`` matrix has rows indexed by positive roots of height ``n`` and
columns by those of height ``n - 1``; the entry at ``(gamma, beta)`` is
``eps(beta, alpha)`` when ``gamma - beta = alpha`` is simple and zero
otherwise.  Characteristic 0 is encoded as ``p == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import primerange

from .exact_linalg import IntMatrix, SmithForm, determinant, prime_factors, rank_over, smith_normal_form
from .root_system import Coeffs, DynkinType, RootSystem
from .structure_constants import EpsilonTable

DEFAULT_PRIMES = tuple(primerange(2, 14))


@dataclass(frozen=True)
class CupMatrix:
    n: int
    row_index: tuple[Coeffs, ...]
    col_index: tuple[Coeffs, ...]
    matrix: IntMatrix

    def __post_init__(self) -> None:
        for i, g in enumerate(self.row_index):
            for j, b in enumerate(self.col_index):
                v = self.matrix[i, j]
                if v == 0:
                    continue
                diff = [x - y for x, y in zip(g, b)]
                if v not in (1, -1) or sorted(diff) != [0] * (len(diff) - 1) + [1]:
                    raise ValueError(f"bad entry {v} at {g}, {b}")


def build_cup_matrix(rs: RootSystem, eps: EpsilonTable, n: int) -> CupMatrix:
    if n < 2:
        raise ValueError("cup matrices start at height 2")
    rows = rs.roots_of_height(n)
    if not rows:
        raise ValueError(f"no positive roots of height {n}")
    cols = rs.roots_of_height(n - 1)
    entries = []
    for g in rows:
        for b in cols:
            diff = tuple(x - y for x, y in zip(g, b))
            if sorted(diff) == [0] * (rs.rank - 1) + [1]:
                entries.append(eps.signs[b, diff])
            else:
                entries.append(0)
    return CupMatrix(n, tuple(rows), tuple(cols), IntMatrix(len(rows), len(cols), tuple(entries)))


def cup_matrices(rs: RootSystem, eps: EpsilonTable) -> list[CupMatrix]:
    return [build_cup_matrix(rs, eps, n) for n in range(2, rs.max_height + 1)]


@dataclass(frozen=True)
class CharacteristicVerdict:
    type: DynkinType
    p: int
    cartan_invertible: bool
    cup_surjective_per_n: dict[int, bool] = field(default_factory=dict)
    cup_ranks: dict[int, tuple[int, int]] = field(default_factory=dict)  # n -> (rank, rows)

    @property
    def overall(self) -> bool:
        return self.cartan_invertible and all(self.cup_surjective_per_n.values())


def verify_characteristic(rs: RootSystem, eps: EpsilonTable, p: int) -> CharacteristicVerdict:
    det = determinant(rs.cartan)
    inv = det != 0 if p == 0 else det % p != 0
    surj, ranks = {}, {}
    for cm in cup_matrices(rs, eps):
        r = rank_over(cm.matrix, p)
        ranks[cm.n] = (r, cm.matrix.rows)
        surj[cm.n] = r == cm.matrix.rows
    return CharacteristicVerdict(rs.dynkin_type, p, inv, surj, ranks)


def _component(rs: RootSystem, k: int) -> tuple[RootSystem, EpsilonTable]:
    """Restrict to one irreducible component, keeping the relative order of its nodes."""
    from .root_system import detect_simple_roots
    from .structure_constants import build_epsilon_table

    nodes = rs.components[k][0]
    sub = detect_simple_roots(rs.lattice, [rs.simple_roots[i] for i in nodes])
    return sub, build_epsilon_table(sub)


@dataclass(frozen=True)
class BadPrimeReport:
    type: DynkinType
    bad_primes: tuple[int, ...]
    # prime -> list of human-readable sources, e.g. "D4: cup n=3", "A2: det(C)=3"
    sources: dict[int, list[str]]
    smith: dict[str, dict[int, SmithForm]]
    cartan_det: dict[str, int]
    all_primes_fail: bool = False


def bad_prime_report(rs: RootSystem, eps: EpsilonTable | None = None) -> BadPrimeReport:
    """Exact set of primes at which some cup matrix or the Cartan matrix degenerates.

    Components are handled separately (the full matrices are block diagonal).
    A cup matrix that already lacks full row rank over QQ fails everywhere,
    which is flagged with ``all_primes_fail``.  ``eps`` is accepted for the
    symmetric call signature; each component rebuilds its own table.
    """
    sources: dict[int, list[str]] = {}
    smith: dict[str, dict[int, SmithForm]] = {}
    dets: dict[str, int] = {}
    everywhere = False
    for k, (_, (fam, r)) in enumerate(rs.components):
        label = f"{fam}{r}" if len(rs.components) == 1 else f"{fam}{r}[{k}]"
        sub, sub_eps = _component(rs, k)
        det = determinant(sub.cartan)
        dets[label] = det
        for q in prime_factors(det):
            sources.setdefault(q, []).append(f"{label}: det(C)={det}")
        smith[label] = {}
        for cm in cup_matrices(sub, sub_eps):
            snf = smith_normal_form(cm.matrix)
            smith[label][cm.n] = snf
            if snf.rank < cm.matrix.rows:
                everywhere = True
                continue
            for q in prime_factors(snf.largest):
                sources.setdefault(q, []).append(f"{label}: cup n={cm.n}")
    return BadPrimeReport(rs.dynkin_type, tuple(sorted(sources)), sources, smith, dets, everywhere)


def sweep_primes(report: BadPrimeReport) -> tuple[int, ...]:
    """Default primes to tabulate: all up to 13 and every prime the report names."""
    return tuple(sorted(set(DEFAULT_PRIMES) | set(report.bad_primes)))
