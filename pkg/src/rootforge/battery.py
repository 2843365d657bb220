"""The finite computations behind the characteristic-dependent claims, as checkable items.

Each ``check_*`` function recomputes one claim from the library API and
returns a :class:`Claim` whose ``details`` are plain JSON data.  The CLI only
formats these; nothing here depends on wall-clock time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .chains import divisor_sequence, fundamental_cycle, root_sequence, saturation_cycle
from .cup_matrices import DEFAULT_PRIMES, build_cup_matrix, verify_characteristic
from .d4_char2 import (
    build_d4_module,
    d4_cubic_configuration,
    d4_lines,
    formula_checks,
    verify_decomposition,
    verify_pi_maps,
)
from .exact_linalg import prime_factors, rank_over
from .fields import BinaryField
from .lattice import build_blowup_lattice, build_quadric_lattice, neg1_classes, neg2_classes
from .root_system import DynkinType, from_cartan_type, highest_root_coeffs, is_very_good, reflect, very_good_primes
from .structure_constants import build_epsilon_table, build_nilpotent_algebra
from .subsystem import Embedding, classify, count_embeddings_up_to_weyl, psi_root_system

# stated values the computations are compared against
PSI_TABLE = {
    1: (240, "E8"), 2: (126, "E7"), 3: (72, "E6"), 4: (40, "D5"), 5: (20, "A4"),
    6: (8, "A2+A1"), 7: (2, "A1"), 8: (0, "empty"), 9: (0, "empty"),
}
QUADRIC_PSI = (2, "A1")
CUBIC_LINES = 27


def stated_bad_primes(t: DynkinType) -> set[int]:
    """Primes excluded by the closed-form table of very good characteristics."""
    fam, r = t.components[0]
    if fam == "A":
        return set(prime_factors(r + 1))
    if fam == "D":
        return {2}
    return {6: {2, 3}, 7: {2, 3}, 8: {2, 3, 5}}[r]


def irreducible_types(max_rank: int = 8) -> list[DynkinType]:
    out = [DynkinType((("A", r),)) for r in range(1, max_rank + 1)]
    out += [DynkinType((("D", r),)) for r in range(4, max_rank + 1)]
    out += [DynkinType((("E", r),)) for r in (6, 7, 8) if r <= max_rank]
    return out


@dataclass
class Claim:
    id: str
    statement: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"id": self.id, "statement": self.statement, "pass": self.passed, "details": self.details}


def check_psi_counts() -> Claim:
    rows = {}
    ok = True
    for d, (count, label) in PSI_TABLE.items():
        lat = build_blowup_lattice(d)
        psi = neg2_classes(lat)
        t = str(psi_root_system(lat).dynkin_type.canonical())
        rows[str(d)] = {"count": len(psi), "type": t}
        ok &= len(psi) == count and t == label
    lat = build_quadric_lattice()
    psi = neg2_classes(lat)
    t = str(psi_root_system(lat).dynkin_type.canonical())
    rows["quadric"] = {"count": len(psi), "type": t}
    ok &= (len(psi), t) == QUADRIC_PSI
    return Claim("psi-counts", "(-2)-class counts and types for every degree and the quadric", ok, rows)


def check_cubic_lines() -> Claim:
    n = len(neg1_classes(build_blowup_lattice(3)))
    return Claim("cubic-lines", "a smooth cubic surface has 27 lines", n == CUBIC_LINES, {"lines": n})


def check_very_good_primes() -> Claim:
    rows = {}
    ok = True
    for t in irreducible_types():
        got = set(very_good_primes(t).bad_primes)
        want = stated_bad_primes(t)
        rows[str(t)] = sorted(got)
        ok &= got == want
    return Claim("very-good-primes", "bad primes from highest-root coefficients and det(C) match the table", ok, rows)


def check_cup_surjective(primes: tuple[int, ...] = DEFAULT_PRIMES) -> Claim:
    rows = {}
    ok = True
    for t in irreducible_types():
        rs = from_cartan_type(t)
        eps = build_epsilon_table(rs)
        good = [p for p in (0,) + tuple(primes) if is_very_good(t, p)]
        fails = []
        for p in good:
            v = verify_characteristic(rs, eps, p)
            if not v.overall:
                fails.append(p)
        rows[str(t)] = {"very_good_checked": good, "failures": fails}
        ok &= not fails
    return Claim(
        "cup-surjective-very-good",
        "in very good characteristic every cup matrix has full row rank and C is invertible",
        ok,
        rows,
    )


def check_d4_char2_failure() -> Claim:
    rs = from_cartan_type("D4")
    eps = build_epsilon_table(rs)
    ranks = {}
    for n in range(2, rs.max_height + 1):
        cm = build_cup_matrix(rs, eps, n)
        ranks[str(n)] = [rank_over(cm.matrix, 2), cm.matrix.rows]
    ok = ranks["3"] == [2, 3] and all(ranks[str(n)][0] == ranks[str(n)][1] for n in (2, 4, 5))
    return Claim("d4-char2-cup-failure", "D4 over F2: level 3 has rank 2 of 3, levels 2, 4, 5 are surjective", ok,
                 {"rank_rows": ranks})


def check_root_chains(max_rank: int = 6) -> Claim:
    rows = {}
    ok = True
    for t in irreducible_types(max_rank):
        rs = from_cartan_type(t)
        pairs = bad = 0
        for beta in rs.positive_roots:
            for gamma in rs.positive_roots:
                if beta == gamma or any(g < b for b, g in zip(beta, gamma)):
                    continue
                pairs += 1
                if root_sequence(rs, beta, gamma).violations(rs):
                    bad += 1
        rows[str(t)] = {"pairs": pairs, "bad": bad}
        ok &= bad == 0
    return Claim("root-chains", "every comparable pair of positive roots is joined by a chain of roots", ok, rows)


def check_fundamental_cycles() -> Claim:
    rows = {}
    ok = True
    for t in irreducible_types():
        rs = from_cartan_type(t)
        z = highest_root_coeffs(rs, 0)
        agree = z == saturation_cycle(rs, 0) == fundamental_cycle(rs, 0)
        seq = divisor_sequence(rs, 0)
        bad = seq.violations(rs)
        rows[str(t)] = {"Z": list(z), "N": seq.N, "agree": agree, "violations": bad}
        ok &= agree and not bad
    d4 = rows["D4"]["Z"] == [1, 1, 1, 2]
    rows["D4_cycle_is_1112"] = d4
    return Claim("fundamental-cycles", "highest root = saturation cycle; divisor sequences valid", ok and d4, rows)


def check_epsilon_jacobi() -> Claim:
    rows = {}
    ok = True
    for t in irreducible_types():
        rs = from_cartan_type(t)
        alg = build_nilpotent_algebra(rs, check=False)
        bad = len(alg.jacobi_violations())
        rows[str(t)] = {"dim": alg.dim, "jacobi_failures": bad}
        ok &= bad == 0
    return Claim("epsilon-jacobi", "eps is antisymmetric and satisfies Jacobi over ZZ", ok, rows)


def check_d4_module() -> Claim:
    details: dict[str, Any] = {}
    ok = True
    for F in (BinaryField(1), BinaryField(2)):
        m = build_d4_module(F)
        items = formula_checks(m)
        dec = verify_decomposition(m)
        items += dec.checks
        details[F.name] = {
            "dim": m.dim,
            "checks": {name: good for name, good in items},
            "u4_matrices": dec.twist_matrices,
            "frobenius_witness": dec.frobenius_witness,
        }
        ok &= m.dim == 10 and all(good for _, good in items)
    ok &= details["F4"]["frobenius_witness"] is not None
    pi = verify_pi_maps(build_d4_module(BinaryField(1)))
    details["pi_maps"] = {name: good for name, good in pi.checks}
    details["dim_u_le2"] = pi.dim_u_le2
    ok &= pi.ok and pi.dim_u_le2 == 7
    lat, rs = d4_cubic_configuration()
    details["configuration"] = {"type": str(rs.dynkin_type), "lines": len(d4_lines(lat))}
    ok &= str(rs.dynkin_type) == "D4"
    return Claim("d4-module", "the ten-dimensional D4 module: formulas, (3,3,2,2) splitting, lam^2 twist, p_i maps",
                 ok, details)


def check_d4_embedding() -> Claim:
    res = count_embeddings_up_to_weyl("E6", "D4")
    lat, rs = d4_cubic_configuration()
    amb = psi_root_system(lat)
    t = classify(Embedding(amb, rs.simple_roots))
    ok = res.count == 1 and str(t) == "D4"
    return Claim("d4-embedding-unique", "D4 embeds in E6 in exactly one way up to the Weyl group", ok,
                 {"orbits": res.count, "base_sets": res.n_base_sets, "closure": res.closure_size,
                  "cubic_configuration_type": str(t)})


def check_reflection_invariance(seed: int = 0, samples: int = 20) -> Claim:
    """Random reflection words keep the D4 configuration of type D4 (seeded)."""
    rng = random.Random(seed)
    lat, rs = d4_cubic_configuration()
    amb = psi_root_system(lat)
    ok = True
    for _ in range(samples):
        roots = list(rs.simple_roots)
        for _ in range(rng.randint(1, 12)):
            a = rng.choice(amb.simple_roots)
            roots = [reflect(amb, a, v) for v in roots]
        ok &= str(classify(Embedding(amb, roots))) == "D4"
    return Claim("reflection-invariance", "classification is invariant under Weyl moves of the configuration", ok,
                 {"seed": seed, "samples": samples})


BATTERY: tuple[Callable[[], Claim], ...] = (
    check_psi_counts,
    check_cubic_lines,
    check_very_good_primes,
    check_cup_surjective,
    check_d4_char2_failure,
    check_root_chains,
    check_fundamental_cycles,
    check_epsilon_jacobi,
    check_d4_module,
    check_d4_embedding,
)


def run_battery(seed: int = 0) -> list[Claim]:
    return [f() for f in BATTERY] + [check_reflection_invariance(seed)]

