"""Mechanical checking of the suspension conditions on a dissected poset.

Given bounded posets P and Q, a green/red dissection of P, and maps
f: P -> Q and i, j: Q -> P, five conditions together guarantee that the
proper part of P is homotopy equivalent to the suspension of the proper
part of Q.  This module checks the conditions exhaustively, builds the
comparison maps used in the argument, and verifies that every sampled
chain has a coned carrier.  Homotopy equivalence itself is NOT certified:
these are hypothesis and proof-skeleton checks; the homological
consequence is certified separately by the homology module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ConditionViolationError, ParameterError
from .posets import (
    FiniteBoundedPoset,
    MonotoneMap,
    check_monotone,
    count_chains,
    count_maximal_chains,
    iter_chains,
    iter_maximal_chains,
    product_with_two_chain,
    proper_part,
)

__all__ = [
    "DissectionInstance",
    "Check",
    "ConditionReport",
    "CarrierReport",
    "check_conditions",
    "build_proof_maps",
    "carrier_cone_check",
    "CONDITION_NAMES",
    "HOMOTOPY_DISCLAIMER",
    "SAMPLING_NOTE",
    "TRUNCATION_NOTE",
    "DEFAULT_MAX_CHAINS",
]

DEFAULT_MAX_CHAINS = 50_000

HOMOTOPY_DISCLAIMER = (
    "Checks certify the five conditions and the proof skeleton mechanically; "
    "homotopy equivalence itself is not certified."
)
SAMPLING_NOTE = (
    "Cone checks ran on a deterministic chain sample (all singletons, all "
    "maximal chains, seeded extras); sampled evidence is not a proof."
)
TRUNCATION_NOTE = (
    "Even the maximal chains exceed the chain budget; a deterministic "
    "prefix of them was checked."
)

CONDITION_NAMES = (
    "green_is_down_set",
    "compositions_identity",
    "images_two_colored",
    "sandwich",
    "extreme_fibers",
)


@dataclass(frozen=True)
class DissectionInstance:
    """Posets P and Q, a green element set of P, and maps f, i, j."""

    p: FiniteBoundedPoset
    q: FiniteBoundedPoset
    green: frozenset[int]
    f: MonotoneMap
    i: MonotoneMap
    j: MonotoneMap

    def __post_init__(self) -> None:
        if self.f.source != self.p or self.f.target != self.q:
            raise ParameterError("f must map P to Q")
        if self.i.source != self.q or self.i.target != self.p:
            raise ParameterError("i must map Q to P")
        if self.j.source != self.q or self.j.target != self.p:
            raise ParameterError("j must map Q to P")
        for g in self.green:
            if not 0 <= g < len(self.p.labels):
                raise ParameterError(f"green index {g} out of range")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class ConditionReport:
    preconditions: tuple[Check, ...]
    conditions: tuple[Check, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.preconditions + self.conditions)

    def failures(self) -> list[Check]:
        return [c for c in self.preconditions + self.conditions if not c.passed]


def check_conditions(inst: DissectionInstance) -> ConditionReport:
    """Exhaustively verify the five conditions plus structural preconditions."""
    p, q = inst.p, inst.q
    green = inst.green
    lbl = p.labels
    qlbl = q.labels

    pre = [
        Check("p_bounded", True),
        Check("q_bounded", True),
        Check(
            "q_nondegenerate",
            q.bottom != q.top,
            None if q.bottom != q.top else f"bottom and top of Q coincide at {qlbl[q.bottom]}",
        ),
    ]
    for name, m in (("f_monotone", inst.f), ("i_monotone", inst.i), ("j_monotone", inst.j)):
        ok, violations = check_monotone(m)
        src = m.source.labels
        witness = None
        if not ok:
            x, y = violations[0]
            witness = f"{src[x]} <= {src[y]} but images are incomparable or reversed"
        pre.append(Check(name, ok, witness))

    conditions = []

    # green elements form a down-set
    witness = None
    down = p.down_sets()
    for y in sorted(green):
        m = down[y]
        while m:
            low = m & -m
            x = low.bit_length() - 1
            if x not in green:
                witness = f"{lbl[x]} <= {lbl[y]} with {lbl[y]} green but {lbl[x]} red"
                break
            m ^= low
        if witness:
            break
    conditions.append(Check("green_is_down_set", witness is None, witness))

    # f composed with i and with j is the identity on Q
    witness = None
    for a in range(len(qlbl)):
        if inst.f.images[inst.i.images[a]] != a:
            witness = f"f(i({qlbl[a]})) != {qlbl[a]}"
            break
        if inst.f.images[inst.j.images[a]] != a:
            witness = f"f(j({qlbl[a]})) != {qlbl[a]}"
            break
    conditions.append(Check("compositions_identity", witness is None, witness))

    # image of i is green, image of j is red
    witness = None
    for a in range(len(qlbl)):
        if inst.i.images[a] not in green:
            witness = f"i({qlbl[a]}) = {lbl[inst.i.images[a]]} is red"
            break
        if inst.j.images[a] in green:
            witness = f"j({qlbl[a]}) = {lbl[inst.j.images[a]]} is green"
            break
    conditions.append(Check("images_two_colored", witness is None, witness))

    # i(f(x)) <= x <= j(f(x)) for every x
    witness = None
    for x in range(len(lbl)):
        a = inst.f.images[x]
        if not p.le(inst.i.images[a], x):
            witness = f"i(f({lbl[x]})) is not below {lbl[x]}"
            break
        if not p.le(x, inst.j.images[a]):
            witness = f"j(f({lbl[x]})) is not above {lbl[x]}"
            break
    conditions.append(Check("sandwich", witness is None, witness))

    # fiber over bottom of Q is red off the bottom of P; dually at the top
    witness = None
    for x in range(len(lbl)):
        if inst.f.images[x] == q.bottom and x != p.bottom and x in green:
            witness = f"{lbl[x]} is green in the fiber over the bottom of Q"
            break
        if inst.f.images[x] == q.top and x != p.top and x not in green:
            witness = f"{lbl[x]} is red in the fiber over the top of Q"
            break
    conditions.append(Check("extreme_fibers", witness is None, witness))

    return ConditionReport(tuple(pre), tuple(conditions))


def build_proof_maps(inst: DissectionInstance) -> tuple[MonotoneMap, MonotoneMap]:
    """Construct and verify the comparison maps between the proper parts.

    g sends a green x to (f(x), 0) and a red x to (f(x), 1) in the proper
    part of Q x {0,1}; h sends (a, 0) to i(a) and (a, 1) to j(a) back in
    the proper part of P.  Raises ConditionViolationError if either map
    leaves the proper parts, fails monotonicity, or g o h is not the
    identity.  Assumes check_conditions passes; on broken instances the
    first violated obligation is reported.
    """
    p, q = inst.p, inst.q
    nq = len(q.labels)
    doubled = product_with_two_chain(q)
    pp = proper_part(p)
    pz = proper_part(doubled)
    pp_pos = {parent: pos for pos, parent in enumerate(pp.parent_index)}
    pz_pos = {parent: pos for pos, parent in enumerate(pz.parent_index)}

    g_images = []
    for parent in pp.parent_index:
        side = 0 if parent in inst.green else 1
        z = inst.f.images[parent] + side * nq
        if z not in pz_pos:
            raise ConditionViolationError(
                f"g is not well-defined: {p.labels[parent]} maps to the bound "
                f"{doubled.labels[z]}"
            )
        g_images.append(pz_pos[z])
    g = MonotoneMap(pp, pz, tuple(g_images))

    h_images = []
    for parent in pz.parent_index:
        a, side = parent % nq, parent // nq
        x = (inst.i if side == 0 else inst.j).images[a]
        if x not in pp_pos:
            raise ConditionViolationError(
                f"h is not well-defined: {doubled.labels[parent]} maps to the bound "
                f"{p.labels[x]}"
            )
        h_images.append(pp_pos[x])
    h = MonotoneMap(pz, pp, tuple(h_images))

    for name, m in (("g", g), ("h", h)):
        ok, violations = check_monotone(m)
        if not ok:
            x, y = violations[0]
            raise ConditionViolationError(
                f"{name} is not order-preserving on {m.source.labels[x]} <= "
                f"{m.source.labels[y]}"
            )
    for z in range(len(pz.labels)):
        if g.images[h.images[z]] != z:
            raise ConditionViolationError(
                f"g(h({pz.labels[z]})) != {pz.labels[z]}"
            )
    return g, h


@dataclass(frozen=True)
class CarrierReport:
    total_chains: int
    chains_checked: int
    sampled: bool
    failures: tuple[str, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def all_cones(self) -> bool:
        return not self.failures


def _sample_chains(pp, max_chains: int, seed: int) -> tuple[list[tuple[int, ...]], bool]:
    """All singletons, then maximal chains, then seeded random padding.

    Singletons are always included.  All maximal chains are included when
    their count fits max_chains; beyond that a deterministic prefix of
    max_chains of them (search order) is taken and the truncation is
    flagged.  Random padding only ever fills leftover room.
    """
    chains: list[tuple[int, ...]] = [(v,) for v in range(len(pp.labels))]
    seen = set(chains)
    truncated = count_maximal_chains(pp) > max_chains
    added = 0
    for chain in iter_maximal_chains(pp):
        if added >= max_chains:
            break
        if chain not in seen:
            seen.add(chain)
            chains.append(chain)
            added += 1
    rng = random.Random(seed)
    strict_up = [pp.leq[v] & ~(1 << v) for v in range(len(pp.labels))]
    attempts = 0
    while len(chains) < max_chains and attempts < 4 * max_chains:
        attempts += 1
        v = rng.randrange(len(pp.labels))
        chain = [v]
        while True:
            options = []
            m = strict_up[chain[-1]]
            while m:
                low = m & -m
                options.append(low.bit_length() - 1)
                m ^= low
            if not options or rng.random() < 0.34:
                break
            chain.append(rng.choice(options))
        t = tuple(chain)
        if t not in seen:
            seen.add(t)
            chains.append(t)
    return chains, truncated


def carrier_cone_check(
    inst: DissectionInstance, max_chains: int = DEFAULT_MAX_CHAINS, seed: int = 0
) -> CarrierReport:
    """Verify that every examined chain has a coned carrier.

    For a chain s of the proper part of P, the carrier is the closed
    interval from i(f(min s)) to j(f(max s)), intersected with the proper
    part.  At least one endpoint must itself be proper, and that endpoint
    must be comparable to everything in the carrier (making the carrier a
    cone).  All chains are checked when their number fits max_chains;
    otherwise a deterministic sample of all singletons and all maximal
    chains is used, padded with seeded random chains up to the budget.
    If even the maximal chains outnumber the budget, a deterministic
    prefix of them is taken and the report says so.
    """
    p = inst.p
    pp = proper_part(p)
    down = p.down_sets()
    up = p.leq
    proper_mask = 0
    for parent in pp.parent_index:
        proper_mask |= 1 << parent

    total = count_chains(pp)
    sampled = total > max_chains
    truncated = False
    if sampled:
        chains, truncated = _sample_chains(pp, max_chains, seed)
    else:
        chains = list(iter_chains(pp))

    failures = []
    for chain in chains:
        lo_parent = pp.parent_index[chain[0]]
        hi_parent = pp.parent_index[chain[-1]]
        lo = inst.i.images[inst.f.images[lo_parent]]
        hi = inst.j.images[inst.f.images[hi_parent]]
        label = "<".join(pp.labels[v] for v in chain)
        apex = None
        if lo not in (p.bottom, p.top):
            apex = lo
        elif hi not in (p.bottom, p.top):
            apex = hi
        if apex is None:
            failures.append(f"chain {label}: neither carrier endpoint is proper")
            continue
        carrier = up[lo] & down[hi] & proper_mask
        if not carrier >> apex & 1:
            failures.append(f"chain {label}: apex {p.labels[apex]} outside its carrier")
            continue
        comparable = up[apex] | down[apex]
        stray = carrier & ~comparable
        if stray:
            other = stray.bit_length() - 1
            failures.append(
                f"chain {label}: carrier element {p.labels[other]} is incomparable "
                f"to apex {p.labels[apex]}"
            )
    notes = [HOMOTOPY_DISCLAIMER]
    if sampled:
        notes.append(SAMPLING_NOTE)
    if truncated:
        notes.append(TRUNCATION_NOTE)
    return CarrierReport(
        total_chains=total,
        chains_checked=len(chains),
        sampled=sampled,
        failures=tuple(failures),
        notes=tuple(notes),
    )
