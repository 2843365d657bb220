#!/usr/bin/env python3
"""Root systems of (-2)-classes, line counts and group dimensions for each degree."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rootforge.lattice import build_blowup_lattice, build_quadric_lattice, neg1_classes, neg2_classes
from rootforge.root_system import group_dimensions
from rootforge.subsystem import psi_root_system


@dataclass
class TableConfig:
    degrees: tuple[int, ...] = tuple(range(1, 10))
    quadric: bool = True


def rows(cfg: TableConfig):
    lats = [(str(d), d, build_blowup_lattice(d)) for d in cfg.degrees]
    if cfg.quadric:
        lats.append(("8 (quadric)", 8, build_quadric_lattice()))
    for label, d, lat in lats:
        t0 = time.perf_counter()
        psi = neg2_classes(lat)
        lines = neg1_classes(lat)
        rs = psi_root_system(lat)
        dims = group_dimensions(rs, d)
        yield label, len(psi), str(rs.dynkin_type), len(lines), dims, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-quadric", action="store_true")
    args = ap.parse_args()
    print(f"{'degree':<12}{'|Psi|':>6}  {'type':<8}{'lines':>6}  {'dim G':>6}{'ss rank':>8}{'torus':>6}  secs")
    for label, npsi, t, nl, dims, secs in rows(TableConfig(quadric=not args.no_quadric)):
        print(f"{label:<12}{npsi:>6}  {t:<8}{nl:>6}  {dims.dim_g:>6}{dims.semisimple_rank:>8}"
              f"{dims.torus_quotient_dim:>6}  {secs:.3f}")


if __name__ == "__main__":
    main()
