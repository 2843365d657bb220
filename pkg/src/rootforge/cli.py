"""``rootforge`` command line: deterministic reports over the library API.

Exit codes: 0 when every verdict passes, 1 when a verdict fails or the
computation raises, 2 for usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Callable, Sequence

from . import __version__
from .battery import BATTERY, Claim, check_reflection_invariance
from .chains import divisor_sequence, root_sequence
from .cup_matrices import bad_prime_report, sweep_primes, verify_characteristic
from .d4_char2 import (
    CUBIC_ORDINARY,
    CUBIC_SUPERSINGULAR,
    LABELS,
    build_d4_module,
    d4_cubic_configuration,
    d4_lines,
    formula_checks,
    verify_decomposition,
    verify_pi_maps,
)
from .fields import parse_field
from .lattice import build_blowup_lattice, build_quadric_lattice, neg1_classes, neg2_classes
from .root_system import DynkinType, from_cartan_type, highest_root_coeffs, is_very_good, very_good_primes
from .structure_constants import build_epsilon_table
from .subsystem import count_embeddings_up_to_weyl, psi_root_system

log = logging.getLogger("rootforge")

SCHEMA = 1


class Report:
    def __init__(self, command: str, inputs: dict[str, Any]):
        self.command = command
        self.inputs = inputs
        self.results: dict[str, Any] = {}
        self.verdicts: list[tuple[str, bool]] = []
        self.tables: dict[str, list[list[Any]]] = {}

    def verdict(self, claim: str, ok: bool) -> None:
        self.verdicts.append((claim, bool(ok)))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.verdicts)

    def as_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": [{"claim": c, "pass": ok} for c, ok in self.verdicts],
            "tool_version": __version__,
        }


def to_json(data: dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def to_text(report: Report) -> str:
    lines = [f"rootforge {report.command} ({__version__})"]
    for k, v in sorted(report.inputs.items()):
        lines.append(f"  {k}: {v}")
    for k, v in sorted(report.results.items()):
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, ensure_ascii=False)
        lines.append(f"{k}: {v}")
    for claim, ok in report.verdicts:
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {claim}")
    return "\n".join(lines) + "\n"


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.tables:
        for name in sorted(report.tables):
            for row in report.tables[name]:
                w.writerow([name, *row])
    else:
        w.writerow(["claim", "pass"])
        for claim, ok in report.verdicts:
            w.writerow([claim, int(ok)])
    return buf.getvalue()


# --- argument types ---------------------------------------------------------


def _dynkin(text: str) -> DynkinType:
    try:
        t = DynkinType.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not t.components:
        raise argparse.ArgumentTypeError("empty Dynkin type")
    return t


def _primes(text: str) -> str | tuple[int, ...]:
    if text == "auto":
        return "auto"
    from sympy import isprime

    try:
        ps = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    if not ps or any(p != 0 and not isprime(p) for p in ps):
        raise argparse.ArgumentTypeError(f"not a list of primes (0 for QQ): {text!r}")
    return ps


def _coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}") from None


def _field(text: str):
    try:
        F = parse_field(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if F.characteristic not in (0, 2):
        raise argparse.ArgumentTypeError("the D4 module needs ZZ or a field of characteristic 2")
    return F


def _type_arg(args: argparse.Namespace, parser: argparse.ArgumentParser) -> DynkinType:
    t = args.type_pos or args.type
    if t is None:
        parser.error("a Dynkin type is required (positional or --type)")
    return t


# --- commands ---------------------------------------------------------------


def cmd_roots(args: argparse.Namespace) -> Report:
    if args.quadric:
        lat, case = build_quadric_lattice(), "quadric"
    else:
        lat, case = build_blowup_lattice(args.degree), "blowup"
    rep = Report("roots", {"case": case, "degree": lat.degree})
    psi = neg2_classes(lat)
    lines = neg1_classes(lat)
    rs = psi_root_system(lat)
    t = rs.dynkin_type.canonical()
    rep.results.update({
        "psi_count": len(psi),
        "psi_type": str(t),
        "psi": [lat.format(v) for v in psi],
        "lines_count": len(lines),
        "lines": [lat.format(v) for v in lines],
        "simple_roots": [lat.format(v) for v in rs.simple_roots],
    })
    rep.tables["class"] = [["psi", *v] for v in psi] + [["line", *v] for v in lines]
    rep.verdict("psi closed under negation", set(psi) == {tuple(-x for x in v) for v in psi})
    expected = 2 * len(from_cartan_type(t).positive_roots) if t.components else 0
    rep.verdict("psi count matches its Dynkin type", len(psi) == expected)
    rep.verdict("psi orthogonal to K with norm -2",
                all(lat.pairing(v, v) == -2 and lat.pairing(v, lat.anticanonical) == 0 for v in psi))
    return rep


def cmd_cupcheck(args: argparse.Namespace) -> Report:
    t = args.t
    rep = Report("cupcheck", {"type": str(t), "primes": args.primes if args.primes == "auto" else list(args.primes)})
    rs = from_cartan_type(t)
    eps = build_epsilon_table(rs)
    report = bad_prime_report(rs, eps)
    primes = sweep_primes(report) if args.primes == "auto" else args.primes
    table = {}
    for p in primes:
        v = verify_characteristic(rs, eps, p)
        table[str(p)] = {
            "cartan_invertible": v.cartan_invertible,
            "surjective": {str(n): s for n, s in v.cup_surjective_per_n.items()},
            "ranks": {str(n): list(r) for n, r in v.cup_ranks.items()},
            "very_good": is_very_good(t, p),
        }
        for n, (r, rows) in v.cup_ranks.items():
            rep.tables.setdefault("rank", []).append([p, n, r, rows, int(r == rows)])
        if is_very_good(t, p):
            rep.verdict(f"p={p} very good => all cup maps surjective and C invertible", v.overall)
    rep.results.update({
        "table": table,
        "bad_primes": list(report.bad_primes),
        "attribution": {str(p): src for p, src in report.sources.items()},
        "cartan_det": report.cartan_det,
        "elementary_divisors": {
            label: {str(n): list(s.elementary_divisors) for n, s in forms.items()}
            for label, forms in report.smith.items()
        },
        "stated_bad_primes": sorted(very_good_primes(t).bad_primes),
    })
    rep.verdict("exact bad set lies inside the stated bad set",
                set(report.bad_primes) <= set(very_good_primes(t).bad_primes))
    rep.verdict("no cup matrix fails over QQ", not report.all_primes_fail)
    return rep


def cmd_chain(args: argparse.Namespace) -> Report:
    t = args.t
    rs = from_cartan_type(t)
    rep = Report("chain", {"type": str(t), "beta": args.beta and list(args.beta), "gamma": args.gamma and list(args.gamma)})
    if args.beta is not None or args.gamma is not None:
        beta = args.beta or rs.simple(rs.components[0][0][0])
        gamma = args.gamma or highest_root_coeffs(rs, rs.component_of(beta))
        chain = root_sequence(rs, beta, gamma)
        bad = chain.violations(rs)
        rep.results.update({"chain": [list(s) for s in chain.steps], "length": chain.length, "violations": bad})
        rep.tables["step"] = [[k, *s] for k, s in enumerate(chain.steps)]
        rep.verdict("chain steps are positive roots differing by simple roots", not bad)
        return rep
    pairs = bad = 0
    for b in rs.positive_roots:
        for g in rs.positive_roots:
            if b != g and all(y >= x for x, y in zip(b, g)):
                pairs += 1
                bad += bool(root_sequence(rs, b, g).violations(rs))
    rep.results.update({"pairs": pairs, "failures": bad})
    rep.verdict("every comparable pair admits a chain", bad == 0)
    return rep


def cmd_cycle(args: argparse.Namespace) -> Report:
    t = args.t
    rs = from_cartan_type(t)
    rep = Report("cycle", {"type": str(t)})
    comps = []
    for k, (nodes, (fam, r)) in enumerate(rs.components):
        seq = divisor_sequence(rs, k)
        bad = seq.violations(rs)
        comps.append({
            "type": f"{fam}{r}",
            "nodes": [i + 1 for i in nodes],
            "Z": list(seq.fundamental_cycle),
            "N": seq.N,
            "sequence": [list(z) for z in seq.cycles],
            "violations": bad,
        })
        rep.tables.setdefault("cycle", []).extend([[k, j, *z] for j, z in enumerate(seq.cycles)])
        rep.verdict(f"component {k} ({fam}{r}): divisor sequence valid", not bad)
    rep.results["components"] = comps
    return rep


def cmd_d4(args: argparse.Namespace) -> Report:
    F = args.field
    rep = Report("d4", {"field": F.name})
    m = build_d4_module(F)
    lat, rs = d4_cubic_configuration()
    rep.results.update({
        "dim": m.dim,
        "basis": list(LABELS),
        "configuration": {"simple_roots": [lat.format(v) for v in rs.simple_roots], "type": str(rs.dynkin_type),
                          "lines": [lat.format(v) for v in d4_lines(lat)]},
        "cubic_equations": {"ordinary": CUBIC_ORDINARY, "supersingular": CUBIC_SUPERSINGULAR},
    })
    rep.verdict("module is ten-dimensional", m.dim == 10)
    rep.verdict("configuration has type D4", str(rs.dynkin_type) == "D4")
    for name, ok in formula_checks(m):
        rep.verdict(name, ok)
    if F.characteristic == 2:
        dec = verify_decomposition(m)
        rep.results["u4_matrices"] = dec.twist_matrices
        rep.results["frobenius_witness"] = dec.frobenius_witness
        for name, ok in dec.checks:
            rep.verdict(name, ok)
    pi = verify_pi_maps(m)
    rep.results["dim_u_le2"] = pi.dim_u_le2
    for name, ok in pi.checks:
        rep.verdict(name, ok)
    return rep


def cmd_embed(args: argparse.Namespace) -> Report:
    rep = Report("embed", {"ambient": str(args.ambient), "sub": str(args.sub), "allow_large": args.allow_large})
    res = count_embeddings_up_to_weyl(args.ambient, args.sub, allow_large=args.allow_large)
    rep.results.update({
        "orbits": res.count,
        "orbit_sizes": list(res.orbit_sizes),
        "base_sets": res.n_base_sets,
        "closure_size": res.closure_size,
    })
    rep.verdict("every base-set closes to a root system of the sub type", res.n_base_sets == 0 or res.closure_size is not None)
    return rep


# acceptance criterion number for each battery claim
LEDGER_KEYS = {
    "psi-counts": 1, "cubic-lines": 2, "very-good-primes": 3, "cup-surjective-very-good": 4,
    "d4-char2-cup-failure": 5, "root-chains": 6, "fundamental-cycles": 7, "epsilon-jacobi": 8,
    "d4-module": 9, "d4-embedding-unique": 10, "report-deterministic": 11,
}


def cmd_verify_paper(args: argparse.Namespace) -> Report:
    rep = Report("verify-paper", {"seed": args.seed})
    claims: list[Claim] = [f() for f in BATTERY]
    claims.append(check_reflection_invariance(args.seed))
    rep.results["claims"] = {c.id: {"criterion": LEDGER_KEYS.get(c.id), "statement": c.statement, "details": c.details}
                             for c in claims}
    for c in claims:
        rep.verdict(c.id, c.passed)
    # determinism: recomputing a claim and re-serializing must reproduce the bytes
    first = to_json(rep.as_dict())
    again = to_json(json.loads(first))
    redo = {c.id: c.details for c in (BATTERY[0](), BATTERY[4]())}
    same = first == again and all(to_json(redo[k]) == to_json(rep.results["claims"][k]["details"]) for k in redo)
    rep.verdict("report-deterministic", same)
    return rep


def _ledger_text(rep: Report) -> str:
    out = [f"rootforge verify-paper ({__version__}), seed {rep.inputs['seed']}"]
    claims = rep.results["claims"]
    for claim, ok in rep.verdicts:
        key = LEDGER_KEYS.get(claim)
        tag = f"#{key:<2}" if key else "   "
        stmt = claims[claim]["statement"] if claim in claims else "JSON report reproduces byte for byte"
        out.append(f"{tag} [{'PASS' if ok else 'FAIL'}] {claim}: {stmt}")
    out.append(f"{sum(ok for _, ok in rep.verdicts)}/{len(rep.verdicts)} claims pass")
    return "\n".join(out) + "\n"


# --- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property sampling")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="rootforge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rootforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="(-2)-classes and lines of a del Pezzo lattice")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", type=int, choices=range(1, 10), metavar="N")
    g.add_argument("--quadric", action="store_true")
    s.set_defaults(func=cmd_roots)

    for name, func, hlp in (
        ("cupcheck", cmd_cupcheck, "cup-matrix ranks per characteristic and the bad-prime set"),
        ("chain", cmd_chain, "chains of positive roots"),
        ("cycle", cmd_cycle, "fundamental cycle and divisor sequence"),
    ):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("type_pos", nargs="?", type=_dynkin, metavar="TYPE")
        s.add_argument("--type", type=_dynkin)
        s.set_defaults(func=func)
        if name == "cupcheck":
            s.add_argument("--primes", type=_primes, default="auto")
        if name == "chain":
            s.add_argument("--beta", type=_coeffs, help="simple-root coordinates, e.g. 1,0,0,0")
            s.add_argument("--gamma", type=_coeffs)

    s = sub.add_parser("d4", parents=[common], help="the ten-dimensional D4 module in characteristic 2")
    s.add_argument("--field", type=_field, default=_field("F4"))
    s.set_defaults(func=cmd_d4)

    s = sub.add_parser("embed", parents=[common], help="embeddings of a subsystem up to the Weyl group")
    s.add_argument("ambient", type=_dynkin)
    s.add_argument("sub", type=_dynkin)
    s.add_argument("--allow-large", action="store_true", help="search beyond ROOTFORGE_MAX_RANK")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("verify-paper", parents=[common], help="run every acceptance claim and print a ledger")
    s.set_defaults(func=cmd_verify_paper)
    return p


def _write(text: str) -> None:
    sys.stdout.buffer.write(text.encode("utf-8"))
    sys.stdout.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command in ("cupcheck", "chain", "cycle"):
        args.t = _type_arg(args, parser)
    func: Callable[[argparse.Namespace], Report] = args.func
    try:
        rep = func(args)
    except (ValueError, AssertionError, ArithmeticError) as e:
        log.debug("computation failed", exc_info=True)
        err = {"schema": SCHEMA, "command": args.command, "error": {"type": type(e).__name__, "message": str(e)},
               "tool_version": __version__}
        if args.out == "json":
            _write(to_json(err))
        else:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.out == "json":
        _write(to_json(rep.as_dict()))
    elif args.out == "csv":
        _write(to_csv(rep))
    elif args.command == "verify-paper":
        _write(_ledger_text(rep))
    else:
        _write(to_text(rep))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
