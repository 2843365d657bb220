#!/usr/bin/env python3
"""Weyl-orbit counts of small subsystems inside the (-2)-root systems of low degree."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rootforge.subsystem import count_embeddings_up_to_weyl


@dataclass
class OrbitConfig:
    ambients: tuple[str, ...] = ("A4", "D5", "E6")
    subs: tuple[str, ...] = ("A1", "2A1", "A2", "3A1", "A3", "D4")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ambient", nargs="*")
    ap.add_argument("--sub", nargs="*")
    args = ap.parse_args()
    cfg = OrbitConfig()
    ambients = tuple(args.ambient or cfg.ambients)
    subs = tuple(args.sub or cfg.subs)
    print(f"{'ambient':<8}{'sub':<6}{'orbits':>7}{'base-sets':>10}  sizes  secs")
    for a in ambients:
        for s in subs:
            t0 = time.perf_counter()
            res = count_embeddings_up_to_weyl(a, s)
            sizes = ",".join(map(str, res.orbit_sizes)) or "-"
            print(f"{a:<8}{s:<6}{res.count:>7}{res.n_base_sets:>10}  {sizes}  {time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
