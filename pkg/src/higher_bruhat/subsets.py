"""Ground-level combinatorics: r-subsets of [n], packets, and consistency.

Ground-set elements are 1-based throughout.  The canonical index of a
subset is its colexicographic rank, which does not depend on the size of
the ground set: a subset of [n-1] keeps its rank when the ground set grows
to [n].  All member families are stored as bitsets indexed by that rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InconsistentSetError, InvariantError, ParameterError

__all__ = [
    "GroundParams",
    "KSubset",
    "Packet",
    "ConsistentSet",
    "colex_rank",
    "subset_of_rank",
    "enumerate_subsets",
    "packet_of",
    "is_consistent",
    "violating_packets",
    "internal_gaps",
    "interval_descent",
    "find_interval",
    "complement",
]


def colex_rank(elements: tuple[int, ...]) -> int:
    """Colexicographic rank of a strictly increasing 1-based tuple."""
    return sum(comb(e - 1, i + 1) for i, e in enumerate(elements))


def subset_of_rank(rank: int, size: int) -> tuple[int, ...]:
    """Inverse of colex_rank for subsets of the given size."""
    if rank < 0 or size < 0:
        raise ParameterError(f"rank and size must be non-negative, got {rank}, {size}")
    out = []
    rem = rank
    for i in range(size, 0, -1):
        v = i
        while comb(v, i) <= rem:
            v += 1
        out.append(v)
        rem -= comb(v - 1, i)
    if rem:
        raise ParameterError(f"rank {rank} is not reachable at size {size}")
    return tuple(reversed(out))


@dataclass(frozen=True)
class KSubset:
    """A sorted r-element subset of [n], 1-based."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        e = self.elements
        if not isinstance(e, tuple):
            raise ParameterError(f"elements must be a tuple, got {type(e).__name__}")
        if e and e[0] < 1:
            raise ParameterError(f"elements must be >= 1, got {e!r}")
        if any(a >= b for a, b in zip(e, e[1:])):
            raise ParameterError(f"elements must be strictly increasing, got {e!r}")

    @classmethod
    def of(cls, elements) -> "KSubset":
        return cls(tuple(sorted(set(elements))))

    @property
    def rank(self) -> int:
        return colex_rank(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True)
class GroundParams:
    """Ground-set size n and level k; members of interest are (k+1)-subsets."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        if not 0 <= self.k <= self.n - 1:
            raise ParameterError(f"k must satisfy 0 <= k <= n-1, got k={self.k}, n={self.n}")

    @property
    def member_size(self) -> int:
        return self.k + 1

    @property
    def num_members(self) -> int:
        """Number of (k+1)-subsets of [n]; the width of all bitsets."""
        return comb(self.n, self.k + 1)

    @property
    def full_bits(self) -> int:
        return (1 << self.num_members) - 1


@dataclass(frozen=True)
class Packet:
    """All (k+1)-subsets of a fixed (k+2)-subset, in lexicographic order."""

    base: KSubset
    members: tuple[KSubset, ...]


def enumerate_subsets(n: int, r: int) -> list[KSubset]:
    """All r-subsets of [n] in colexicographic order (index = colex rank)."""
    if n < 0 or r < 0 or r > n:
        raise ParameterError(f"need 0 <= r <= n, got n={n}, r={r}")
    combos = sorted(itertools.combinations(range(1, n + 1), r), key=lambda t: t[::-1])
    return [KSubset(t) for t in combos]


def packet_of(base: KSubset, params: GroundParams | None = None) -> Packet:
    """The packet of a (k+2)-subset: its (k+1)-subsets in lex order.

    Deleting a larger element of the base yields a lexicographically
    smaller member, so members[0] = base minus its maximum and
    members[-1] = base minus its minimum.
    """
    if len(base) < 2:
        raise ParameterError(f"packet base needs at least 2 elements, got {base}")
    if params is not None and len(base) != params.k + 2:
        raise ParameterError(
            f"packet base must have k+2={params.k + 2} elements, got {len(base)}"
        )
    members = sorted(itertools.combinations(base.elements, len(base) - 1))
    return Packet(base, tuple(KSubset(m) for m in members))


@dataclass(frozen=True)
class _PacketCheck:
    """One packet compiled to bit level: mask plus every legal intersection."""

    base: tuple[int, ...]
    mask: int
    segments: frozenset[int]


@lru_cache(maxsize=None)
def _packet_checks(n: int, k: int) -> tuple[_PacketCheck, ...]:
    checks = []
    for base in itertools.combinations(range(1, n + 1), k + 2):
        bits = [1 << colex_rank(m) for m in sorted(itertools.combinations(base, k + 1))]
        mask = 0
        for b in bits:
            mask |= b
        segments = {0, mask}
        acc = 0
        for b in bits[:-1]:
            acc |= b
            segments.add(acc)
        acc = 0
        for b in reversed(bits[1:]):
            acc |= b
            segments.add(acc)
        checks.append(_PacketCheck(base, mask, frozenset(segments)))
    return tuple(checks)


@lru_cache(maxsize=None)
def _checks_by_member(n: int, k: int) -> tuple[tuple[_PacketCheck, ...], ...]:
    """For each member rank, the packets containing that member."""
    per = [[] for _ in range(comb(n, k + 1))]
    for check in _packet_checks(n, k):
        m = check.mask
        while m:
            low = m & -m
            per[low.bit_length() - 1].append(check)
            m ^= low
    return tuple(tuple(cs) for cs in per)


def _bits_of(members, params: GroundParams) -> int:
    """Bitset of a member family; validates sizes and ground-set bounds."""
    if isinstance(members, ConsistentSet):
        if members.params != params:
            raise ParameterError(
                f"parameter mismatch: {members.params} vs {params}"
            )
        return members.bits
    bits = 0
    for m in members:
        elems = m.elements if isinstance(m, KSubset) else tuple(sorted(m))
        if len(elems) != params.member_size:
            raise ParameterError(
                f"member {elems} has size {len(elems)}, expected {params.member_size}"
            )
        if elems and (elems[0] < 1 or elems[-1] > params.n):
            raise ParameterError(f"member {elems} is not a subset of [{params.n}]")
        bits |= 1 << colex_rank(elems)
    return bits


def is_consistent(members, params: GroundParams) -> bool:
    """True iff every packet meets the family in a lex prefix, suffix, all, or nothing."""
    bits = _bits_of(members, params)
    return all((bits & c.mask) in c.segments for c in _packet_checks(params.n, params.k))


def violating_packets(members, params: GroundParams) -> list[Packet]:
    """The packets whose segment condition fails; empty iff is_consistent."""
    bits = _bits_of(members, params)
    return [
        packet_of(KSubset(c.base))
        for c in _packet_checks(params.n, params.k)
        if (bits & c.mask) not in c.segments
    ]


@dataclass(frozen=True)
class ConsistentSet:
    """An element of a higher Bruhat order.

    A family of (k+1)-subsets of [n] meeting every packet in a segment,
    stored as a bitset over colex ranks.  Consistency is verified at
    construction, so a ConsistentSet in hand is always certified.
    """

    params: GroundParams
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits <= self.params.full_bits:
            raise ParameterError(f"bitset out of range for {self.params}")
        for c in _packet_checks(self.params.n, self.params.k):
            if (self.bits & c.mask) not in c.segments:
                raise InconsistentSetError(
                    f"family is inconsistent on packet with base {c.base}"
                )

    @classmethod
    def from_members(cls, params: GroundParams, members) -> "ConsistentSet":
        return cls(params, _bits_of(members, params))

    def members(self) -> tuple[KSubset, ...]:
        """Members in colex rank order."""
        out = []
        m = self.bits
        while m:
            low = m & -m
            out.append(KSubset(subset_of_rank(low.bit_length() - 1, self.params.member_size)))
            m ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, member) -> bool:
        elems = member.elements if isinstance(member, KSubset) else tuple(sorted(member))
        if len(elems) != self.params.member_size or elems[-1] > self.params.n:
            return False
        return bool(self.bits >> colex_rank(elems) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(m) for m in self.members()) + "}"


def internal_gaps(subset: KSubset, n: int) -> list[int]:
    """Elements of [n] strictly between min and max of the subset but not in it."""
    if len(subset) == 0:
        raise ParameterError("internal gaps are undefined for the empty subset")
    elems = subset.elements
    if elems[-1] > n:
        raise ParameterError(f"{subset} is not a subset of [{n}]")
    present = set(elems)
    return [j for j in range(elems[0] + 1, elems[-1]) if j not in present]


def interval_descent(family: ConsistentSet) -> list[KSubset]:
    """Gap-filling descent from the least member to a gap-free member.

    Start at the member with the smallest colex rank.  While the tracked
    member I has internal gaps, fill the smallest gap j, form the packet
    base I + {j}, and move to base minus min(I) or base minus max(I) --
    consistency guarantees one of them is present, and either one has
    strictly fewer internal gaps.  base minus min(I) is preferred when
    both are present.  Returns the whole descent chain; the last entry is
    an interval.
    """
    if family.bits == 0:
        raise ParameterError("the empty family contains no interval")
    n = family.params.n
    low = family.bits & -family.bits
    current = KSubset(subset_of_rank(low.bit_length() - 1, family.params.member_size))
    trace = [current]
    gaps = internal_gaps(current, n)
    while gaps:
        j = gaps[0]
        base = tuple(sorted(current.elements + (j,)))
        drop_min = KSubset(base[1:])
        drop_max = KSubset(base[:-1])
        if drop_min in family:
            nxt = drop_min
        elif drop_max in family:
            nxt = drop_max
        else:
            raise InvariantError(
                f"descent stuck at {current}: neither {drop_min} nor {drop_max} present; "
                "input family is corrupted"
            )
        next_gaps = internal_gaps(nxt, n)
        if len(next_gaps) >= len(gaps):
            raise InvariantError(
                f"descent failed to reduce gap count at {current} -> {nxt}"
            )
        current, gaps = nxt, next_gaps
        trace.append(current)
    return trace


def find_interval(family: ConsistentSet) -> KSubset:
    """Some member with no internal gaps; every non-empty consistent family has one."""
    return interval_descent(family)[-1]


def complement(family: ConsistentSet) -> ConsistentSet:
    """The complementary family; consistent because prefixes and suffixes swap."""
    try:
        return ConsistentSet(family.params, family.bits ^ family.params.full_bits)
    except InconsistentSetError as exc:  # pragma: no cover - mathematically impossible
        raise InvariantError(f"complement of a consistent family came out inconsistent: {exc}")
