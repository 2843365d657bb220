"""Chevalley signs from a bilinear form and the nilpotent algebra they define.

For an ordered base ``alpha_1, ..., alpha_r`` put ``f(a_i, a_j) = (a_i, a_j)``
for ``i < j``, ``-1`` on the diagonal and ``0`` for ``i > j``, extend
bilinearly, and set ``eps(a, b) = (-1)^f(a, b)``.  Then
``[x_a, x_b] = eps(a, b) x_{a+b}`` is a Lie algebra on the positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact_linalg import IntMatrix
from .fields import ZZ, Ring
from .root_system import Coeffs, RootSystem

Element = dict[Coeffs, int]


@dataclass(frozen=True)
class EpsilonTable:
    order: tuple[int, ...]
    f_matrix: IntMatrix
    signs: Mapping[tuple[Coeffs, Coeffs], int] = field(repr=False)

    def f(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self.f_matrix.bilinear(a, b)

    def eps(self, a: Sequence[int], b: Sequence[int]) -> int:
        return -1 if self.f(a, b) % 2 else 1

    def __getitem__(self, ab: tuple[Coeffs, Coeffs]) -> int:
        return self.signs[ab]


def build_epsilon_table(rs: RootSystem) -> EpsilonTable:
    n = rs.rank
    f = [[0] * n for _ in range(n)]
    for i in range(n):
        f[i][i] = rs.pair_coeffs(rs.simple(i), rs.simple(i)) // 2
        for j in range(i + 1, n):
            f[i][j] = rs.pair_coeffs(rs.simple(i), rs.simple(j))
    fm = IntMatrix.from_rows(f, n)
    roots = rs.positive_roots
    pos = set(roots)
    signs = {}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos:
                signs[a, b] = -1 if fm.bilinear(a, b) % 2 else 1
    table = EpsilonTable(tuple(range(n)), fm, signs)
    for (a, b), e in signs.items():
        if e * signs[b, a] != -1:
            raise AssertionError(f"eps not antisymmetric on {a}, {b}")
    return table


class JacobiError(AssertionError):
    pass


@dataclass(frozen=True)
class NilpotentAlgebra:
    """Span of ``x_a`` for positive roots of height at most ``max_height``.

    Brackets leaving the truncation are zero, so this is the quotient of the
    positive nilradical by everything above ``max_height``.
    """

    rs: RootSystem
    eps: EpsilonTable
    max_height: int
    field: Ring
    basis: tuple[Coeffs, ...]
    _idx: tuple[tuple[int, ...], ...] = field(repr=False)
    _sgn: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, root: Sequence[int]) -> int:
        return self.basis.index(tuple(root))

    def basis_bracket(self, i: int, j: int) -> tuple[int, int]:
        """``(k, sign)`` with ``[x_i, x_j] = sign * x_k``; ``k == -1`` means zero."""
        return self._idx[i][j], self._sgn[i][j]

    def x(self, root: Sequence[int], coeff: int | None = None) -> Element:
        """``coeff * x_root``; ``coeff`` is a field element (default one)."""
        root = tuple(root)
        if root not in self.basis:
            raise ValueError(f"{root} is not a basis root")
        c = self.field.one() if coeff is None else self.field.coerce(coeff)
        return {root: c} if c != self.field.zero() else {}

    def bracket(self, y: Element, z: Element) -> Element:
        F = self.field
        out: dict[Coeffs, int] = {}
        for a, ca in y.items():
            i = self.index(a)
            for b, cb in z.items():
                k, s = self.basis_bracket(i, self.index(b))
                if k < 0:
                    continue
                g = self.basis[k]
                term = F.mul(F.mul(ca, cb), F.from_int(s))
                out[g] = F.add(out.get(g, F.zero()), term)
        return {g: c for g, c in out.items() if c != F.zero()}

    def add(self, *ys: Element) -> Element:
        F = self.field
        out: dict[Coeffs, int] = {}
        for y in ys:
            for g, c in y.items():
                out[g] = F.add(out.get(g, F.zero()), c)
        return {g: c for g, c in sorted(out.items()) if c != F.zero()}

    def scale(self, c: int, y: Element) -> Element:
        F = self.field
        return {g: F.mul(c, v) for g, v in y.items() if F.mul(c, v) != F.zero()}

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        """Every ordered basis triple with a nonzero Jacobiator."""
        n = self.dim
        idx, sgn = self._idx, self._sgn
        p = self.field.characteristic
        bad = []
        for a in range(n):
            ia, sa = idx[a], sgn[a]
            for b in range(n):
                ib, sb = idx[b], sgn[b]
                m_ab = ia[b]
                for c in range(n):
                    total = 0
                    m = ib[c]  # [a, [b, c]]
                    if m >= 0 and ia[m] >= 0:
                        total += sb[c] * sa[m]
                    m = idx[c][a]  # [b, [c, a]]
                    if m >= 0 and ib[m] >= 0:
                        total += sgn[c][a] * sb[m]
                    if m_ab >= 0 and idx[c][m_ab] >= 0:  # [c, [a, b]]
                        total += sa[b] * sgn[c][m_ab]
                    if (total % p if p else total) != 0:
                        bad.append((a, b, c))
        return bad


def build_nilpotent_algebra(
    rs: RootSystem,
    max_height: int | None = None,
    field: Ring = ZZ,
    eps: EpsilonTable | None = None,
    check: bool = True,
) -> NilpotentAlgebra:
    if eps is None:
        eps = build_epsilon_table(rs)
    if max_height is None:
        max_height = rs.max_height
    basis = tuple(c for c in rs.positive_roots if sum(c) <= max_height)
    where = {c: i for i, c in enumerate(basis)}
    n = len(basis)
    idx = [[-1] * n for _ in range(n)]
    sgn = [[0] * n for _ in range(n)]
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            k = where.get(tuple(x + y for x, y in zip(a, b)), -1)
            if k >= 0:
                idx[i][j] = k
                sgn[i][j] = eps.signs[a, b]
    alg = NilpotentAlgebra(
        rs, eps, max_height, field, basis, tuple(map(tuple, idx)), tuple(map(tuple, sgn))
    )
    if check:
        bad = alg.jacobi_violations()
        if bad:
            a, b, c = (basis[t] for t in bad[0])
            raise JacobiError(f"Jacobi fails on {len(bad)} triples, e.g. {a}, {b}, {c}")
    return alg


def exp_action(alg: NilpotentAlgebra, alpha: Sequence[int], coeff: int, y: Element) -> Element:
    """Adjoint action of ``exp(coeff * x_alpha)`` on ``y``.

    In a simply-laced system ``beta + 2 alpha`` is never a root for ``beta``
    positive, so the action is ``y + [coeff x_alpha, y]`` on every root space.
    The component of ``y`` along ``x_alpha`` itself is fixed; a ``y`` lying
    entirely in that root space is rejected.
    """
    alpha = tuple(alpha)
    if y and set(y) == {alpha}:
        raise ValueError("y is proportional to x_alpha")
    return alg.add(y, alg.bracket(alg.x(alpha, coeff), y))


def act_product(alg: NilpotentAlgebra, factors: Iterable[tuple[Sequence[int], int]], y: Element) -> Element:
    """Action of ``exp(c_1 x_1) exp(c_2 x_2) ... exp(c_k x_k)`` (rightmost acts first)."""
    for alpha, c in reversed(list(factors)):
        alpha = tuple(alpha)
        fixed = {alpha: y[alpha]} if alpha in y else {}
        rest = {g: v for g, v in y.items() if g != alpha}
        y = alg.add(fixed, exp_action(alg, alpha, c, rest) if rest else {})
    return y
