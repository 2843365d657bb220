"""The D4 cubic surface in characteristic 2 and its ten-dimensional module.

The module is the quotient of the positive nilradical of D4 by everything of
height >= 4, with basis ``x_1, x_2, x_3, x_4, x_14, x_24, x_34, x_124, x_134,
x_234`` (``x_14`` stands for ``x_{alpha_1 + alpha_4}`` and so on, ``alpha_4``
the branch node).  Two one-parameter families act on it:

* ``u(lam) = exp(lam x_1) exp(lam x_2) exp(lam x_3)``
* ``v(lam) = exp(lam x_4)``

Matrices use the column convention: column ``j`` holds the image of basis
vector ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .fields import ZZ, BinaryField, Ring, field_rank, solve_in_span
from .lattice import PicardLattice, build_blowup_lattice, neg1_classes, neg2_classes
from .root_system import Coeffs, RootSystem, detect_simple_roots
from .structure_constants import (
    Element,
    NilpotentAlgebra,
    act_product,
    build_epsilon_table,
    build_nilpotent_algebra,
)

# the two normal forms of a cubic surface with a D4 point in characteristic 2
CUBIC_ORDINARY = "x0*(x1+x2+x3)^2 - x1*x2*x3"
CUBIC_SUPERSINGULAR = "x0*(x1+x2+x3)^2 + x1*x2*(x1+x2)"

A1, A2, A3, A4 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def _root(*nodes: int) -> Coeffs:
    return tuple(int(i + 1 in nodes) for i in range(4))


LABELS = ("x1", "x2", "x3", "x4", "x14", "x24", "x34", "x124", "x134", "x234")
ROOTS: tuple[Coeffs, ...] = (
    _root(1), _root(2), _root(3), _root(4),
    _root(1, 4), _root(2, 4), _root(3, 4),
    _root(1, 2, 4), _root(1, 3, 4), _root(2, 3, 4),
)


def d4_cubic_configuration() -> tuple[PicardLattice, RootSystem]:
    """Degree-3 lattice with the (-2)-curves ``e_i - e_{i+3}`` and ``h - e_1 - e_2 - e_3``."""
    lat = build_blowup_lattice(3)
    basis = [lat.vector(e1=1, e4=-1), lat.vector(e2=1, e5=-1), lat.vector(e3=1, e6=-1),
             lat.vector(h=1, e1=-1, e2=-1, e3=-1)]
    return lat, detect_simple_roots(lat, basis, neg2_classes(lat))


def d4_lines(lat: PicardLattice) -> list[tuple[int, ...]]:
    """The six lines: ``e_4, e_5, e_6`` and ``h - e_i - e_{i+3}``."""
    out = [lat.vector(e4=1), lat.vector(e5=1), lat.vector(e6=1)]
    out += [lat.vector(**{"h": 1, f"e{i}": -1, f"e{i + 3}": -1}) for i in (1, 2, 3)]
    lines = set(neg1_classes(lat))
    if not all(v in lines for v in out):
        raise AssertionError("listed line classes are not (-1)-classes")
    return out


@dataclass(frozen=True)
class D4Module:
    field: Ring
    alg: NilpotentAlgebra
    rs: RootSystem
    full: NilpotentAlgebra = field(repr=False)

    dim = 10

    def vec(self, y: Element) -> list[int]:
        F = self.field
        return [y.get(r, F.zero()) for r in ROOTS]

    def elem(self, v: Sequence[int]) -> Element:
        return {r: c for r, c in zip(ROOTS, v) if c != self.field.zero()}

    def x(self, label: str) -> Element:
        return self.alg.x(ROOTS[LABELS.index(label)])

    @property
    def z1(self) -> Element:
        return self.alg.add(self.x("x1"), self.x("x2"), self.x("x3"))

    @property
    def z2(self) -> Element:
        return self.alg.add(self.x("x14"), self.x("x24"), self.x("x34"))

    @property
    def z3(self) -> Element:
        return self.alg.add(self.x("x124"), self.x("x134"), self.x("x234"))

    def fmt(self, y: Element) -> str:
        F = self.field
        parts = []
        for lab, r in zip(LABELS, ROOTS):
            if r in y:
                c = y[r]
                parts.append(lab if c == F.one() else f"({F.fmt(c)})*{lab}")
        return " + ".join(parts) or "0"


def build_d4_module(field: Ring = ZZ) -> D4Module:
    """Module ``u_{<=3}`` over ``field`` (characteristic 2 or ``ZZ``)."""
    if field.characteristic not in (0, 2):
        raise ValueError("the D4 module is studied over ZZ or in characteristic 2")
    _, rs = d4_cubic_configuration()
    alg = build_nilpotent_algebra(rs, 3, field)
    full = build_nilpotent_algebra(rs, None, field)
    if alg.dim != 10 or set(alg.basis) != set(ROOTS):
        raise AssertionError(f"unexpected basis {alg.basis}")
    m = D4Module(field, alg, rs, full)
    br = alg.bracket
    for i in (1, 2, 3):
        if br(m.x("x4"), m.x(f"x{i}")) != m.x(f"x{i}4"):
            raise AssertionError(f"[x4, x{i}] != x{i}4")
    for i, j in ((1, 2), (1, 3), (2, 3)):
        lhs = br(m.x(f"x{j}4"), m.x(f"x{i}"))
        rhs = br(m.x(f"x{i}4"), m.x(f"x{j}"))
        if not (lhs == rhs == m.x(f"x{i}{j}4")):
            raise AssertionError(f"two definitions of x{i}{j}4 disagree")
    return m


@dataclass(frozen=True)
class UnipotentAction:
    generator: str
    lam: int
    matrix: tuple[tuple[int, ...], ...]

    def is_unipotent(self, F: Ring) -> bool:
        """Unit diagonal and nothing mapping to lower height."""
        heights = [sum(r) for r in ROOTS]
        for i in range(10):
            for j in range(10):
                v = self.matrix[i][j]
                if i == j and v != F.one():
                    return False
                if i != j and v != F.zero() and heights[i] <= heights[j]:
                    return False
        return True


def _matmul(F: Ring, a, b) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero()
            for k in range(n):
                acc = F.add(acc, F.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _from_images(m: D4Module, image) -> tuple[tuple[int, ...], ...]:
    cols = [m.vec(image(m.alg.x(r))) for r in ROOTS]
    return tuple(tuple(cols[j][i] for j in range(10)) for i in range(10))


def u_action(m: D4Module, lam: int) -> UnipotentAction:
    mat = _from_images(m, lambda y: act_product(m.alg, [(A1, lam), (A2, lam), (A3, lam)], y))
    return UnipotentAction("u", lam, mat)


def v_action(m: D4Module, lam: int) -> UnipotentAction:
    mat = _from_images(m, lambda y: act_product(m.alg, [(A4, lam)], y))
    return UnipotentAction("v", lam, mat)


def uv_action(m: D4Module, lam: int) -> UnipotentAction:
    F = m.field
    return UnipotentAction("uv", lam, _matmul(F, u_action(m, lam).matrix, v_action(m, lam).matrix))


def commutator_action(m: D4Module, mu: int) -> UnipotentAction:
    """``[v_1, u_mu] = v_1 u_mu v_1^{-1} u_mu^{-1}``."""
    F = m.field
    one = F.one()
    mats = [v_action(m, one), u_action(m, mu), v_action(m, F.neg(one)), u_action(m, F.neg(mu))]
    out = mats[0].matrix
    for g in mats[1:]:
        out = _matmul(F, out, g.matrix)
    return UnipotentAction("comm", mu, out)


def apply(m: D4Module, g: UnipotentAction, y: Element) -> Element:
    F = m.field
    v = m.vec(y)
    w = []
    for i in range(10):
        acc = F.zero()
        for j in range(10):
            acc = F.add(acc, F.mul(g.matrix[i][j], v[j]))
        w.append(acc)
    return m.elem(w)


def bracket_formula_u(m: D4Module, lam: int, y: Element) -> Element:
    """``y + sum_i [lam x_i, y] + sum_{i<j} [lam x_i, [lam x_j, y]]`` for ``i, j <= 3``."""
    alg = m.alg
    xs = [alg.x(a, lam) for a in (A1, A2, A3)]
    terms = [y] + [alg.bracket(x, y) for x in xs]
    for i in range(3):
        for j in range(i + 1, 3):
            terms.append(alg.bracket(xs[i], alg.bracket(xs[j], y)))
    return alg.add(*terms)


def closed_form(m: D4Module, gen: str, lam: int, label: str) -> Element:
    """The displayed formulas for ``u`` and ``v`` on basis vectors."""
    F, alg = m.field, m.alg
    y = m.x(label)
    neg = F.neg(lam)
    if gen == "u":
        if label == "x4":
            return alg.add(y, alg.scale(neg, m.z2), alg.scale(F.mul(lam, lam), m.z3))
        if label in ("x14", "x24", "x34"):
            j = label[1]
            others = [f"x{''.join(sorted(i + j))}4" for i in "123" if i != j]
            return alg.add(y, *(alg.scale(neg, m.x(o)) for o in others))
        return y
    if gen == "v":
        if label in ("x1", "x2", "x3"):
            return alg.add(y, alg.scale(lam, m.x(f"{label}4")))
        return y
    raise ValueError(f"no closed form for {gen}")


class ConventionError(AssertionError):
    pass


def act(m: D4Module, g: UnipotentAction, y: Element) -> Element:
    """Act by ``g``; for ``u``/``v`` on basis vectors every route must agree."""
    out = apply(m, g, y)
    if g.generator in ("u", "v") and len(y) == 1 and next(iter(y.values())) == m.field.one():
        label = LABELS[ROOTS.index(next(iter(y)))]
        expected = closed_form(m, g.generator, g.lam, label)
        if out != expected:
            raise ConventionError(f"{g.generator}({g.lam}) on {label}: {out} != {expected}")
        if g.generator == "u" and bracket_formula_u(m, g.lam, y) != out:
            raise ConventionError(f"u({g.lam}) on {label} disagrees with the bracket formula")
    return out


def _lams(m: D4Module, sample: Sequence[int] = range(-3, 4)) -> list[int]:
    F = m.field
    return list(F.elements()) if F.characteristic else list(sample)


def _stable(m: D4Module, g: UnipotentAction, space: list[Element]) -> bool:
    F = m.field
    vs = [m.vec(w) for w in space]
    return all(solve_in_span(F, vs, m.vec(apply(m, g, w))) is not None for w in space)


def _restricted(m: D4Module, g: UnipotentAction, space: list[Element]) -> list[list[int]]:
    F = m.field
    vs = [m.vec(w) for w in space]
    cols = [solve_in_span(F, vs, m.vec(apply(m, g, w))) for w in space]
    k = len(space)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def subspaces(m: D4Module) -> dict[str, list[Element]]:
    alg, x = m.alg, m.x
    return {
        "u1": [x("x1"), x("x14"), alg.add(x("x124"), x("x134"))],
        "u2": [x("x2"), x("x24"), alg.add(x("x124"), x("x234"))],
        "u'": [x("x4"), m.z1, m.z2, m.z3],
        "u3": [m.z1, m.z2],
        "u4": [alg.add(x("x4"), m.z1), m.z3],
    }


def formula_checks(m: D4Module) -> list[tuple[str, bool]]:
    """Every displayed action formula on every basis vector, for every lam."""
    out = []
    for lam in _lams(m):
        ok = True
        for g in (u_action(m, lam), v_action(m, lam)):
            for label in LABELS:
                try:
                    act(m, g, m.x(label))
                except ConventionError:
                    ok = False
            ok = ok and g.is_unipotent(m.field)
        out.append((f"u/v formulas, lam={m.field.fmt(lam)}", ok))
    F, alg = m.field, m.alg
    two = F.from_int(2)
    for lam in _lams(m):
        u, v, uv = u_action(m, lam), v_action(m, lam), uv_action(m, lam)
        lam2 = F.mul(lam, lam)
        checks = [
            apply(m, v, m.z1) == alg.add(m.z1, alg.scale(lam, m.z2)),
            apply(m, u, m.z2) == alg.add(m.z2, alg.scale(F.neg(F.mul(two, lam)), m.z3)),
            apply(m, uv, m.x("x4")) == alg.add(m.x("x4"), alg.scale(F.neg(lam), m.z2), alg.scale(lam2, m.z3)),
            apply(m, uv, m.z1) == alg.add(m.z1, alg.scale(lam, m.z2), alg.scale(F.neg(F.mul(two, lam2)), m.z3)),
            apply(m, u, m.z1) == m.z1 and apply(m, v, m.z2) == m.z2 and apply(m, v, m.z3) == m.z3,
        ]
        out.append((f"z-vector formulas, lam={F.fmt(lam)}", all(checks)))
    return out


@dataclass
class DecompositionReport:
    field: str
    checks: list[tuple[str, bool]]
    twist_matrices: dict[str, list[list[str]]]
    frobenius_witness: str | None

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)


def verify_decomposition(m: D4Module) -> DecompositionReport:
    """Summands (3, 3, 2, 2) and the Frobenius-twisted action on the last one."""
    F = m.field
    if F.characteristic != 2:
        raise ValueError("decomposition holds in characteristic 2")
    sp = subspaces(m)
    checks: list[tuple[str, bool]] = []
    lams = list(F.elements())
    gens_gl3 = [g for lam in lams for g in (u_action(m, lam), v_action(m, lam))]
    gens_prime = [g for lam in lams for g in (uv_action(m, lam), commutator_action(m, lam))]

    for name in ("u1", "u2", "u'"):
        checks.append((f"{name} stable under u, v", all(_stable(m, g, sp[name]) for g in gens_gl3)))
    vecs = [m.vec(w) for name in ("u1", "u2", "u'") for w in sp[name]]
    checks.append(("u1 + u2 + u' is direct of dimension 10", field_rank(F, vecs) == 10 and len(vecs) == 10))
    for name in ("u3", "u4"):
        checks.append((f"{name} stable under uv, [v1,u]", all(_stable(m, g, sp[name]) for g in gens_prime)))
    vecs4 = [m.vec(w) for w in sp["u3"] + sp["u4"]]
    in_uprime = all(solve_in_span(F, [m.vec(w) for w in sp["u'"]], v) is not None for v in vecs4)
    checks.append(("u' = u3 + u4 is direct", field_rank(F, vecs4) == 4 and in_uprime))
    dims = [len(sp[k]) for k in ("u1", "u2", "u3", "u4")]
    checks.append(("summand dimensions (3, 3, 2, 2)", dims == [3, 3, 2, 2]))

    for name in ("u1", "u2"):
        w = sp[name]
        flag = [w[2:], w[1:], w]
        checks.append((f"{name} composition series stable", all(_stable(m, g, f) for g in gens_gl3 for f in flag)))

    comm_ok = all(apply(m, commutator_action(m, mu), w) == w for mu in lams for w in sp["u'"])
    checks.append(("[v1, u_mu] is the identity on u'", comm_ok))

    twist: dict[str, list[list[str]]] = {}
    ok3 = ok4 = True
    for lam in lams:
        g = uv_action(m, lam)
        m3 = _restricted(m, g, sp["u3"])
        m4 = _restricted(m, g, sp["u4"])
        lam2 = F.mul(lam, lam)
        ok3 &= m3 == [[F.one(), F.zero()], [lam, F.one()]]
        ok4 &= m4 == [[F.one(), F.zero()], [lam2, F.one()]]
        twist[F.fmt(lam)] = [[F.fmt(c) for c in row] for row in m4]
    checks.append(("uv acts on u3 as ((1,0),(lam,1))", ok3))
    checks.append(("uv acts on u4 as ((1,0),(lam^2,1))", ok4))
    witness = next((lam for lam in lams if F.mul(lam, lam) != lam), None)
    if isinstance(F, BinaryField) and F.m > 1:
        checks.append(("some lam has lam^2 != lam (Frobenius twist visible)", witness is not None))
    return DecompositionReport(F.name, checks, twist, None if witness is None else F.fmt(witness))


# --- the three maps to upper triangular 3x3 matrices ------------------------


def _e(i: int, j: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int((r, c) == (i, j)) for c in range(3)) for r in range(3))


def _mat_bracket(a, b):
    ab = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))


_ZERO3 = ((0, 0, 0),) * 3


@dataclass
class PiMapsReport:
    checks: list[tuple[str, bool]]
    dim_u_le2: int
    fiber_product_dim: int
    image_dim: int

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)


def verify_pi_maps(m: D4Module) -> PiMapsReport:
    """Bracket preservation of ``p_i : b -> b_gl3`` and the fiber-product count.

    Computed over ZZ regardless of the module's field.  The torus is the dual
    lattice acting on ``g_alpha`` by ``rho -> <rho, alpha>``.
    """
    rs = m.rs
    alg = build_nilpotent_algebra(rs, None, ZZ)
    lat_rank = rs.lattice.rank
    roots = list(alg.basis)
    # basis of b: ("t", k) for the dual basis, ("x", root) for root vectors
    b_basis = [("t", k) for k in range(lat_rank)] + [("x", r) for r in roots]

    def weight(k: int, root: Coeffs) -> int:
        return rs.to_ambient(root)[k]

    def bracket(a, b) -> dict:
        (ka, va), (kb, vb) = a, b
        if ka == "t" and kb == "t":
            return {}
        if ka == "t":
            w = weight(va, vb)
            return {("x", vb): w} if w else {}
        if kb == "t":
            w = -weight(vb, va)
            return {("x", va): w} if w else {}
        k, s = alg.basis_bracket(alg.index(va), alg.index(vb))
        return {("x", alg.basis[k]): s} if k >= 0 else {}

    leaves = (A1, A2, A3)

    def p_i(i: int, elt) -> tuple[tuple[int, ...], ...]:
        kind, v = elt
        ai = leaves[i]
        if kind == "t":
            d0 = weight(v, tuple(a + b for a, b in zip(ai, A4)))
            d1 = weight(v, ai)
            return ((d0, 0, 0), (0, d1, 0), (0, 0, 0))
        if v == ai:
            return _e(1, 2)
        if v == A4:
            return _e(0, 1)
        if v == tuple(a + b for a, b in zip(ai, A4)):
            return _e(0, 2)
        return _ZERO3

    def p_lin(i: int, combo: dict):
        acc = [[0] * 3 for _ in range(3)]
        for elt, c in combo.items():
            mat = p_i(i, elt)
            for r in range(3):
                for s in range(3):
                    acc[r][s] += c * mat[r][s]
        return tuple(map(tuple, acc))

    checks = []
    for i in range(3):
        ok = all(
            p_lin(i, bracket(a, b)) == _mat_bracket(p_i(i, a), p_i(i, b)) for a in b_basis for b in b_basis
        )
        checks.append((f"p_{i + 1} preserves brackets on all {len(b_basis)}^2 basis pairs", ok))

    def proj_mod_scalar(mat) -> tuple[int, int, int]:
        # upper-left 2x2 block of an upper triangular matrix, modulo scalars
        return (mat[0][0] - mat[1][1], mat[0][1], mat[1][0])

    agree = all(len({proj_mod_scalar(p_i(i, e)) for i in range(3)}) == 1 for e in b_basis)
    checks.append(("p o p_1 = p o p_2 = p o p_3 (in pgl_2)", agree))
    checks.append(("p_1(x_2) = 0", p_i(0, ("x", A2)) == _ZERO3))

    # u_{<=2} -> (u_gl3)^3, coordinates (12, 13, 23) per copy
    def u_coords(mat) -> list[int]:
        return [mat[0][1], mat[0][2], mat[1][2]]

    from .exact_linalg import IntMatrix, rank_rational

    low = [r for r in roots if sum(r) <= 2]
    image_rows = [sum((u_coords(p_i(i, ("x", r))) for i in range(3)), []) for r in low]
    image_dim = rank_rational(IntMatrix.from_rows(image_rows, 9))
    # fiber product: p(u_1) = p(u_2) = p(u_3) means equal (1,2) entries
    constraints = [[1, 0, 0, -1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, -1, 0, 0]]
    fiber_dim = 9 - rank_rational(IntMatrix.from_rows(constraints, 9))
    inside = all(sum(c * x for c, x in zip(con, row)) == 0 for con in constraints for row in image_rows)
    checks.append(("image of u_{<=2} lies in the fiber product", inside))
    checks.append(("3*3 - 2*1 = 7 = dim u_{<=2} = dim of image", fiber_dim == 7 == len(low) == image_dim))
    return PiMapsReport(checks, len(low), fiber_dim, image_dim)


def epsilon_order_independent() -> bool:
    """Signs on the module do not depend on how the three leaves are ordered."""
    from itertools import permutations

    lat, rs = d4_cubic_configuration()
    base = build_epsilon_table(rs)
    leaves = list(rs.simple_roots[:3])
    for perm in permutations(range(3)):
        other = detect_simple_roots(lat, [leaves[i] for i in perm] + [rs.simple_roots[3]])
        eps = build_epsilon_table(other)
        for (a, b), s in base.signs.items():
            a2 = other.to_coeffs(rs.to_ambient(a))
            b2 = other.to_coeffs(rs.to_ambient(b))
            if eps.signs[a2, b2] != s:
                return False
    return True
