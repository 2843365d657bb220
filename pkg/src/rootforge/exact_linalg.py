"""Exact integer and finite-field linear algebra.

Everything here works on Python ints; there is no floating point anywhere.
Matrices are small (at most a few dozen rows), so plain cubic elimination is
used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Iterable[int]) -> IntMatrix:
        d = list(diag)
        n = len(d)
        return cls(n, n, tuple(d[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a = self.to_rows()
        bt = other.transpose().to_rows()
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a], other.cols
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(x * y for x, y in zip(self.row(i), v)) for i in range(self.rows))

    def bilinear(self, v: Sequence[int], w: Sequence[int]) -> int:
        """``v^T M w``."""
        return sum(vi * wj for vi, wj in zip(v, self.apply(w)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def mod(self, p: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(x % p for x in self.entries))

    def block(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for j in col_idx] for i in row_idx], len(col_idx))

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:3d}" for x in r) for r in self.to_rows())


@dataclass(frozen=True)
class SmithForm:
    elementary_divisors: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        nz = [d for d in self.elementary_divisors if d != 0]
        if len(nz) != self.rank:
            raise ValueError("rank must equal the number of nonzero divisors")
        if any(d < 0 for d in self.elementary_divisors):
            raise ValueError("elementary divisors are nonnegative")
        if any(b % a for a, b in zip(nz, nz[1:])):
            raise ValueError("divisibility chain violated")

    @property
    def largest(self) -> int:
        """Largest nonzero divisor (1 for the zero matrix)."""
        return self.elementary_divisors[self.rank - 1] if self.rank else 1


def _bareiss(m: IntMatrix) -> tuple[int, int]:
    """Fraction-free elimination; returns (rank, signed last pivot).

    For a nonsingular square matrix the second value is the determinant.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                ai[j] = (pr[c] * ai[j] - f * pr[j]) // prev
            ai[c] = 0
        prev = pr[c]
        r += 1
    return r, sign * prev


def rank_rational(m: IntMatrix) -> int:
    """Rank over the rationals."""
    return _bareiss(m)[0]


def determinant(m: IntMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return 1
    r, d = _bareiss(m)
    return d if r == m.rows else 0


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of ``m`` reduced modulo the prime ``p``."""
    _check_prime(p)
    a = [[x % p for x in r] for r in m.to_rows()]
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = [(x * inv) % p for x in a[r]]
        a[r] = pr
        for i in range(r + 1, m.rows):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
        r += 1
    return r


def rank_over(m: IntMatrix, p: int) -> int:
    """Rank over the prime field of characteristic ``p``; ``p == 0`` means QQ."""
    return rank_rational(m) if p == 0 else rank_mod_p(m, p)


def determinant_mod_p(m: IntMatrix, p: int) -> int:
    """Determinant computed by elimination inside GF(p)."""
    _check_prime(p)
    if m.rows != m.cols:
        raise ValueError("non-square matrix")
    a = [[x % p for x in r] for r in m.to_rows()]
    n = m.rows
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Elementary divisors of ``m`` over the integers.

    Pivot on the entry of smallest absolute value, clear its row and column
    with Euclidean steps, and push any non-divisible remainder back into the
    pivot row before moving on.
    """
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    divisors: list[int] = []
    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a smaller remainder exists; move it to the pivot slot
            cands = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            _, pi, pj = min(cands)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        divisors.append(abs(a[t][t]))
        t += 1
    rank = len(divisors)
    divisors += [0] * (min(nr, nc) - rank)
    return SmithForm(tuple(divisors), rank)


def prime_factors(n: int) -> list[int]:
    from sympy import factorint

    n = abs(n)
    return sorted(factorint(n)) if n > 1 else []
