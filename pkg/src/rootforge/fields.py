"""Scalar rings used for structure-constant and module computations.

Elements are plain ints in every case: integers for ``ZZ``, residues for
``GF(p)``, and bit-packed polynomials for ``GF(2^m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from sympy import isprime

# low-weight irreducible polynomials over GF(2), bit i = coefficient of x^i
_GF2_MODULI = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011}


class Ring:
    name: str
    characteristic: int

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        raise NotImplementedError

    def coerce(self, a: int) -> int:
        """Normalize an element given in this ring's own encoding."""
        return self.from_int(a)

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        raise ZeroDivisionError(f"{self.name}: {a} is not invertible")

    def pow(self, a: int, k: int) -> int:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def elements(self) -> Iterator[int]:
        raise TypeError(f"{self.name} is infinite")

    def fmt(self, a: int) -> str:
        return str(a)

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, repr=False)
class Integers(Ring):
    name: str = "ZZ"
    characteristic: int = 0

    def from_int(self, n: int) -> int:
        return n

    def add(self, a: int, b: int) -> int:
        return a + b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b


@dataclass(frozen=True, repr=False)
class PrimeField(Ring):
    p: int = 2
    name: str = field(init=False)
    characteristic: int = field(init=False)

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "name", f"F{self.p}")
        object.__setattr__(self, "characteristic", self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))


@dataclass(frozen=True, repr=False)
class BinaryField(Ring):
    """GF(2^m); the element ``1 << 1`` is a root of the defining polynomial."""

    m: int = 2
    name: str = field(init=False)
    characteristic: int = field(init=False)

    def __post_init__(self) -> None:
        if self.m not in _GF2_MODULI:
            raise ValueError(f"GF(2^{self.m}) not supported")
        object.__setattr__(self, "name", f"F{2 ** self.m}")
        object.__setattr__(self, "characteristic", 2)

    @property
    def generator(self) -> int:
        return 0b10 if self.m > 1 else 1

    def from_int(self, n: int) -> int:
        return n & 1

    def coerce(self, a: int) -> int:
        if not 0 <= a < 2 ** self.m:
            raise ValueError(f"{a} is not an element of {self.name}")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def neg(self, a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        mod = _GF2_MODULI[self.m]
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> self.m:
                a ^= mod
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 in GF(2^m)")
        return self.pow(a, 2 ** self.m - 2)

    def elements(self) -> Iterator[int]:
        return iter(range(2 ** self.m))

    def fmt(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = [("1" if i == 0 else "w" if i == 1 else f"w^{i}") for i in range(self.m) if a >> i & 1]
        return "+".join(reversed(terms)) or "0"


ZZ = Integers()


def _echelon(F: Ring, rows: list[list[int]]) -> list[list[int]]:
    rows = [list(r) for r in rows]
    out: list[list[int]] = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in rows if r[c] != F.zero()), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = F.inv(piv[c])
        piv = [F.mul(inv, x) for x in piv]
        rows = [[F.sub(x, F.mul(r[c], y)) for x, y in zip(r, piv)] for r in rows]
        out.append(piv)
    return out


def field_rank(F: Ring, rows: list[list[int]]) -> int:
    """Rank of a matrix over a field."""
    return len(_echelon(F, rows))


def solve_in_span(F: Ring, basis: list[list[int]], v: list[int]) -> list[int] | None:
    """Coordinates of ``v`` in the (independent) ``basis``, or ``None`` if outside the span."""
    k = len(basis)
    n = len(v)
    # augmented system: columns are basis vectors, solve sum c_j b_j = v
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    ech = _echelon(F, rows)
    sol = [F.zero()] * k
    for r in ech:
        lead = next(i for i, x in enumerate(r) if x != F.zero())
        if lead == k:
            return None
    for r in reversed(ech):
        lead = next(i for i, x in enumerate(r) if x != F.zero())
        acc = r[k]
        for j in range(lead + 1, k):
            acc = F.sub(acc, F.mul(r[j], sol[j]))
        sol[lead] = acc
    return sol


def parse_field(name: str) -> Ring:
    """``ZZ``, ``F<p>`` for a prime, or ``F<2^m>``."""
    key = name.strip().upper()
    if key in ("ZZ", "Z"):
        return ZZ
    if not key.startswith("F"):
        raise ValueError(f"unknown field {name!r}")
    q = int(key[1:])
    if isprime(q):
        return PrimeField(q)
    m = q.bit_length() - 1
    if q == 1 << m:
        return BinaryField(m)
    raise ValueError(f"unsupported field {name!r}")
