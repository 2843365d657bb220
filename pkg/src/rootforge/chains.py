"""Root chains, fundamental cycles and the divisor sequences built from them.

All vectors here are simple-root coordinates (``RootSystem.positive_roots``
format).  A fundamental cycle is returned over the nodes of its component
only, in the order the component lists them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .root_system import Coeffs, RootSystem, highest_root_coeffs


@dataclass(frozen=True)
class RootChain:
    steps: tuple[Coeffs, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def violations(self, rs: RootSystem) -> list[str]:
        out = []
        for k, b in enumerate(self.steps):
            if not rs.is_positive_coeffs(b):
                out.append(f"step {k} {b} is not a positive root")
        for k, (b0, b1) in enumerate(zip(self.steps, self.steps[1:])):
            diff = [y - x for x, y in zip(b0, b1)]
            if sorted(diff) != [0] * (len(diff) - 1) + [1]:
                out.append(f"step {k}->{k + 1} difference {diff} is not a simple root")
        return out


def root_sequence(rs: RootSystem, beta: Sequence[int], gamma: Sequence[int]) -> RootChain:
    """Positive roots from ``beta`` to ``gamma`` differing by one simple root per step.

    Walks down from ``gamma``: among the simple summands of ``gamma - beta``
    pick the lowest-index ``alpha_i`` with ``(gamma, alpha_i) == -1`` and
    continue from ``gamma - alpha_i``.
    """
    beta, gamma = tuple(beta), tuple(gamma)
    for name, v in (("beta", beta), ("gamma", gamma)):
        if not rs.is_positive_coeffs(v):
            raise ValueError(f"{name} = {v} is not a positive root")
    if rs.component_of(beta) != rs.component_of(gamma):
        raise ValueError("beta and gamma lie in different components")
    diff = [g - b for b, g in zip(beta, gamma)]
    if any(x < 0 for x in diff):
        raise ValueError("gamma - beta is not a nonnegative sum of simple roots")
    steps = [gamma]
    cur = gamma
    while cur != beta:
        rest = [c - b for b, c in zip(beta, cur)]
        if sum(rest) == 1:
            cur = beta
        else:
            i = next(
                (i for i, x in enumerate(rest) if x > 0 and rs.pair_coeffs(cur, rs.simple(i)) == -1),
                None,
            )
            if i is None:
                raise AssertionError(f"no admissible simple summand below {cur}")
            cur = tuple(c - int(j == i) for j, c in enumerate(cur))
        steps.append(cur)
    return RootChain(tuple(reversed(steps)))


def _embed(rs: RootSystem, nodes: Sequence[int], local: Sequence[int]) -> Coeffs:
    full = [0] * rs.rank
    for i, c in zip(nodes, local):
        full[i] = c
    return tuple(full)


def saturation_cycle(rs: RootSystem, component: int) -> Coeffs:
    """Fundamental cycle by Laufer-style saturation.

    Start from the first curve and add any ``D_i`` with ``(Z, D_i) >= 1``
    until ``(Z, D_i) <= 0`` for every curve.  Independent of the root poset.
    """
    if not 0 <= component < len(rs.components):
        raise ValueError(f"no component {component}")
    nodes = rs.components[component][0]
    z = [0] * rs.rank
    z[nodes[0]] = 1
    while True:
        i = next((i for i in nodes if rs.pair_coeffs(z, rs.simple(i)) >= 1), None)
        if i is None:
            return tuple(z[i] for i in nodes)
        z[i] += 1


def fundamental_cycle(rs: RootSystem, component: int) -> Coeffs:
    """Coefficients ``(n_1, ..., n_r)`` of the fundamental cycle over one component.

    Both the highest root and the saturation cycle are computed; they must agree.
    """
    nodes = rs.components[component][0]
    top = highest_root_coeffs(rs, component)
    z = tuple(top[i] for i in nodes)
    sat = saturation_cycle(rs, component)
    if z != sat:
        raise AssertionError(f"highest root {z} disagrees with saturation cycle {sat}")
    return z


@dataclass(frozen=True)
class DivisorSequence:
    """Cycles ``0 = Z_0 < ... < Z_N = Z`` over one component's curves."""

    nodes: tuple[int, ...]
    cycles: tuple[Coeffs, ...]
    fundamental_cycle: Coeffs

    @property
    def N(self) -> int:
        return sum(self.fundamental_cycle)

    def violations(self, rs: RootSystem) -> list[str]:
        out = []
        r = len(self.nodes)
        zs = self.cycles
        if len(zs) != self.N + 1:
            out.append(f"expected {self.N + 1} cycles, got {len(zs)}")
        if not zs or any(zs[0]):
            out.append("Z_0 is not zero")
        if zs and zs[-1] != self.fundamental_cycle:
            out.append("last cycle is not the fundamental cycle")
        if len(zs) > r and zs[r] != (1,) * r:
            out.append(f"Z_{r} = {zs[r]} is not the reduced cycle")
        for j, (a, b) in enumerate(zip(zs, zs[1:]), start=1):
            diff = [y - x for x, y in zip(a, b)]
            if sorted(diff) != [0] * (r - 1) + [1]:
                out.append(f"Z_{j} - Z_{j - 1} = {diff} is not a single curve")
        for j, zj in enumerate(zs[1:], start=1):
            full = _embed(rs, self.nodes, zj)
            for i in self.nodes:
                if rs.pair_coeffs(full, rs.simple(i)) > 1:
                    out.append(f"(Z_{j}, D_{i + 1}) > 1")
        zred = _embed(rs, self.nodes, (1,) * r)
        if rs.pair_coeffs(zred, zred) != -2:
            out.append("reduced cycle does not have self-intersection -2")
        if not rs.is_positive_coeffs(zred):
            out.append("reduced cycle is not a positive root")
        return out


def divisor_sequence(rs: RootSystem, component: int) -> DivisorSequence:
    """Chain from the first curve up to ``Z_red``, then from ``Z_red`` to ``Z``."""
    if not 0 <= component < len(rs.components):
        raise ValueError(f"no component {component}")
    nodes = rs.components[component][0]
    z = fundamental_cycle(rs, component)
    zred = _embed(rs, nodes, (1,) * len(nodes))
    if rs.pair_coeffs(zred, zred) != -2:
        raise AssertionError("(Z_red, Z_red) != -2")
    first = rs.simple(nodes[0])
    lower = root_sequence(rs, first, zred).steps
    upper = root_sequence(rs, zred, _embed(rs, nodes, z)).steps
    full = ((0,) * rs.rank,) + lower + upper[1:]
    cycles = tuple(tuple(c[i] for i in nodes) for c in full)
    seq = DivisorSequence(tuple(nodes), cycles, z)
    bad = seq.violations(rs)
    if bad:
        raise AssertionError("; ".join(bad))
    return seq
