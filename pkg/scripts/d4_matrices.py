#!/usr/bin/env python3
"""Print the unipotent matrices on the ten-dimensional D4 module over a field of characteristic 2."""

from __future__ import annotations

import argparse

from rootforge.d4_char2 import LABELS, build_d4_module, commutator_action, u_action, uv_action, v_action
from rootforge.fields import parse_field

GENERATORS = {"u": u_action, "v": v_action, "uv": uv_action, "comm": commutator_action}


def show(m, g) -> None:
    F = m.field
    width = 6
    print(f"{g.generator}({F.fmt(g.lam)})  columns are images of " + " ".join(LABELS))
    for lab, row in zip(LABELS, g.matrix):
        print(f"  {lab:>5} " + "".join(f"{F.fmt(c):>{width}}" for c in row))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="F4")
    ap.add_argument("--gen", choices=sorted(GENERATORS), default="uv")
    args = ap.parse_args()
    m = build_d4_module(parse_field(args.field))
    for lam in m.field.elements():
        show(m, GENERATORS[args.gen](m, lam))
        print()


if __name__ == "__main__":
    main()
