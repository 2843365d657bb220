"""Picard lattices of (weak) del Pezzo surfaces and their special classes.

Coordinates are with respect to ``h, e_1, ..., e_{9-d}`` for blow-ups of the
plane and ``e_1, e_2`` (the two rulings) for the quadric.  The form on the
orthogonal complement of the anticanonical class is negative definite, which
makes both the (-2)- and (-1)-classes finite sets; they are found by exact
Fincke-Pohst enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exact_linalg import IntMatrix

LatticeVector = tuple[int, ...]


@dataclass(frozen=True)
class PicardLattice:
    """Free ZZ-module with a symmetric integer form.

    ``anticanonical`` is ``None`` for the abstract root lattices built from a
    Cartan matrix; then ``degree`` is undefined.
    """

    gram: IntMatrix
    anticanonical: LatticeVector | None = None
    labels: tuple[str, ...] = ()
    case: str = "abstract"

    def __post_init__(self) -> None:
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix must be symmetric")
        if self.anticanonical is not None and len(self.anticanonical) != self.rank:
            raise ValueError("anticanonical class has wrong length")
        if self.labels and len(self.labels) != self.rank:
            raise ValueError("one label per basis vector")

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def degree(self) -> int:
        if self.anticanonical is None:
            raise ValueError("abstract lattice has no anticanonical class")
        return self.pairing(self.anticanonical, self.anticanonical)

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError(f"vectors must have length {self.rank}")
        return self.gram.bilinear(v, w)

    def basis_vector(self, i: int) -> LatticeVector:
        return tuple(int(j == i) for j in range(self.rank))

    def vector(self, **coeffs: int) -> LatticeVector:
        """Build a vector from label keywords, e.g. ``vector(h=1, e1=-1)``."""
        idx = {lab.replace("_", ""): i for i, lab in enumerate(self.labels)}
        out = [0] * self.rank
        for k, c in coeffs.items():
            out[idx[k.replace("_", "")]] += c
        return tuple(out)

    def format(self, v: Sequence[int]) -> str:
        labels = self.labels or tuple(f"b{i}" for i in range(self.rank))
        parts = []
        for c, lab in zip(v, labels):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+") + mag + lab)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


def build_blowup_lattice(d: int) -> PicardLattice:
    """Picard lattice of the plane blown up in ``9 - d`` points."""
    if not 1 <= d <= 9:
        raise ValueError(f"degree must be in 1..9, got {d}")
    n = 9 - d
    gram = IntMatrix.diagonal([1] + [-1] * n)
    anti = (3,) + (-1,) * n
    labels = ("h",) + tuple(f"e{i}" for i in range(1, n + 1))
    return PicardLattice(gram, anti, labels, case="blowup")


def build_quadric_lattice() -> PicardLattice:
    gram = IntMatrix.from_rows([[0, 1], [1, 0]])
    return PicardLattice(gram, (2, 2), ("e1", "e2"), case="quadric")


def pairing(lat: PicardLattice, v: Sequence[int], w: Sequence[int]) -> int:
    return lat.pairing(v, w)


def _linear_form_basis(a: Sequence[int]) -> tuple[int, list[int], list[list[int]]]:
    """Column-reduce the row vector ``a`` by unimodular steps.

    Returns ``(g, u, kernel)`` with ``g = gcd(a) >= 0``, ``a . u == g`` and
    ``kernel`` a ZZ-basis of ``{x : a . x == 0}``.
    """
    n = len(a)
    a = list(a)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]  # columns of U
    # Euclid on the entries, mirroring each step on the columns of U
    while True:
        nz = [j for j in range(n) if a[j] != 0]
        if len(nz) <= 1:
            break
        j0 = min(nz, key=lambda j: abs(a[j]))
        for j in nz:
            if j == j0:
                continue
            q = a[j] // a[j0]
            a[j] -= q * a[j0]
            cols[j] = [x - q * y for x, y in zip(cols[j], cols[j0])]
    nz = [j for j in range(n) if a[j] != 0]
    if not nz:
        return 0, [0] * n, cols
    j0 = nz[0]
    g, u = a[j0], cols[j0]
    if g < 0:
        g, u = -g, [-x for x in u]
    return g, u, [cols[j] for j in range(n) if j != j0]


def _ldl(gram: list[list[Fraction]]) -> list[list[Fraction]]:
    """Upper-triangular ``q`` with ``x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2``."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(center: Fraction, radius_sq: Fraction) -> range:
    """Integers ``x`` with ``(x - center)^2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    r = math.isqrt(radius_sq.numerator // radius_sq.denominator + 1) + 1
    lo = math.floor(center) - r
    hi = math.ceil(center) + r
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(
    gram: Sequence[Sequence[int | Fraction]],
    bound: Fraction | int,
    center: Sequence[Fraction] | None = None,
) -> Iterator[tuple[int, ...]]:
    """All integer ``x`` with ``(x - c)^T G (x - c) <= bound`` for positive definite ``G``."""
    n = len(gram)
    if n == 0:
        if bound >= 0:
            yield ()
        return
    q = _ldl([list(r) for r in gram])
    c = [Fraction(0)] * n if center is None else [Fraction(x) for x in center]
    bound = Fraction(bound)
    x = [0] * n

    def rec(i: int, remaining: Fraction) -> Iterator[tuple[int, ...]]:
        shift = c[i] - sum((q[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        for xi in _int_range(shift, remaining / q[i][i]):
            x[i] = xi
            rest = remaining - q[i][i] * (xi - shift) ** 2
            if i == 0:
                yield tuple(x)
            else:
                yield from rec(i - 1, rest)

    yield from rec(n - 1, bound)


def _classes_with(lat: PicardLattice, norm: int, degree: int) -> list[LatticeVector]:
    """All ``v`` with ``(v, v) == norm`` and ``(v, -K) == degree``."""
    if lat.anticanonical is None:
        raise ValueError("lattice has no anticanonical class")
    form = lat.gram.apply(lat.anticanonical)  # v -> (v, -K) is form . v
    g, u, kernel = _linear_form_basis(form)
    if g == 0 or degree % g:
        return []
    p = [degree // g * x for x in u]
    m = len(kernel)
    # negated form on K-perp in the kernel basis: positive definite
    neg = [[-lat.pairing(kernel[i], kernel[j]) for j in range(m)] for i in range(m)]
    if m == 0:
        return [tuple(p)] if lat.pairing(p, p) == norm else []
    lin = [Fraction(lat.pairing(kernel[i], p)) for i in range(m)]
    # -(p + Bx, p + Bx) = x^T N x - 2 lin.x - (p, p)
    n_inv = _rational_inverse(neg)
    c = [sum(n_inv[i][j] * lin[j] for j in range(m)) for i in range(m)]
    target = Fraction(-norm) + lat.pairing(p, p) + sum(c[i] * lin[i] for i in range(m))
    out = []
    for x in short_vectors(neg, target, c):
        v = tuple(pi + sum(xj * kj[i] for xj, kj in zip(x, kernel)) for i, pi in enumerate(p))
        if lat.pairing(v, v) == norm:
            out.append(v)
    return sorted(out)


def _rational_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def neg2_classes(lat: PicardLattice) -> list[LatticeVector]:
    """The root system: classes with self-intersection -2 orthogonal to K."""
    return _classes_with(lat, -2, 0)


def neg1_classes(lat: PicardLattice) -> list[LatticeVector]:
    """Classes with self-intersection -1 and anticanonical degree 1 (lines)."""
    return _classes_with(lat, -1, 1)
