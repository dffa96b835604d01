"""Higher Bruhat orders B(n,k) and the structure maps between levels.

An order is enumerated either by brute force over all member bitsets or by
breadth-first growth from the empty family; the two form an oracle pair
and are compared in the test suite rather than trusted.  Both relations
(single-step inclusion and ordinary inclusion) live on the same element
set; single-step comparability is reachability in the digraph of
single-member additions.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import posets
from .errors import (
    InconsistentSetError,
    InvariantError,
    ParameterError,
    ResourceLimitError,
)
from .subsets import (
    ConsistentSet,
    GroundParams,
    KSubset,
    _checks_by_member,
    _packet_checks,
    colex_rank,
    complement,
    enumerate_subsets,
)

__all__ = [
    "OrderKind",
    "BruhatOrder",
    "AdmissiblePermutation",
    "BuildupSequence",
    "enumerate_bruhat",
    "leq_inclusion",
    "leq_single_step",
    "map_f",
    "map_i",
    "map_j",
    "is_green",
    "admissible_permutation",
    "buildup_sequence",
    "dual_buildup_sequence",
    "to_poset",
    "dissection_instance",
    "DEFAULT_BFS_LIMIT",
    "DEFAULT_BRUTEFORCE_LIMIT",
]

DEFAULT_BFS_LIMIT = 64
DEFAULT_BRUTEFORCE_LIMIT = 24


class OrderKind(enum.Enum):
    SINGLE_STEP = "single_step"
    INCLUSION = "inclusion"


class BruhatOrder:
    """All consistent families of (k+1)-subsets of [n], with cover digraph.

    Elements are sorted by (cardinality, bitset value), which is a linear
    extension of both order relations.  Instances are immutable after
    construction; the reachability closure is computed on first use.
    """

    def __init__(
        self,
        params: GroundParams,
        kind: OrderKind,
        elements: tuple[ConsistentSet, ...],
        covers: tuple[tuple[int, int], ...],
    ):
        self.params = params
        self.kind = kind
        self.elements = elements
        self.covers = covers
        self._index = {u.bits: i for i, u in enumerate(elements)}
        self._reach: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> ConsistentSet:
        return self.elements[0]

    @property
    def top(self) -> ConsistentSet:
        return self.elements[-1]

    def index_of(self, u: ConsistentSet) -> int:
        if u.params != self.params:
            raise ParameterError(f"element has params {u.params}, order has {self.params}")
        try:
            return self._index[u.bits]
        except KeyError:
            raise ParameterError(f"{u} is not an element of this order")

    def reach(self) -> tuple[int, ...]:
        """Row bitsets of single-step reachability along the cover digraph."""
        if self._reach is None:
            n = len(self.elements)
            succ: list[list[int]] = [[] for _ in range(n)]
            for a, b in self.covers:
                succ[a].append(b)
            rows = [0] * n
            # covers increase cardinality, so element order is topological
            for i in range(n - 1, -1, -1):
                acc = 1 << i
                for j in succ[i]:
                    acc |= rows[j]
                rows[i] = acc
            self._reach = tuple(rows)
        return self._reach


def _bruteforce_scan(n: int, k: int, start: int, stop: int) -> list[int]:
    checks = _packet_checks(n, k)
    out = []
    for bits in range(start, stop):
        for c in checks:
            if (bits & c.mask) not in c.segments:
                break
        else:
            out.append(bits)
    return out


def _bruteforce_bits(params: GroundParams, jobs: int) -> list[int]:
    total = 1 << params.num_members
    if jobs <= 1:
        return _bruteforce_scan(params.n, params.k, 0, total)
    chunk = -(-total // (jobs * 8))
    ranges = [(params.n, params.k, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_bruteforce_scan, *zip(*ranges))
    out: list[int] = []
    for part in parts:
        out.extend(part)
    return out


def _bfs_bits(params: GroundParams) -> list[int]:
    by_member = _checks_by_member(params.n, params.k)
    width = params.num_members
    seen = {0}
    frontier = [0]
    while frontier:
        next_frontier = []
        for bits in frontier:
            for e in range(width):
                flag = 1 << e
                if bits & flag:
                    continue
                grown = bits | flag
                if grown in seen:
                    continue
                # only packets through the new member can break
                if all((grown & c.mask) in c.segments for c in by_member[e]):
                    seen.add(grown)
                    next_frontier.append(grown)
        frontier = next_frontier
    return sorted(seen)


def enumerate_bruhat(
    params: GroundParams,
    kind: OrderKind = OrderKind.SINGLE_STEP,
    method: str = "bfs",
    max_subsets: int | None = None,
    jobs: int = 1,
) -> BruhatOrder:
    """Enumerate B(n,k); method is "bfs" or "bruteforce" (an oracle pair)."""
    if method not in ("bfs", "bruteforce"):
        raise ParameterError(f"unknown enumeration method {method!r}")
    limit = max_subsets
    if limit is None:
        limit = DEFAULT_BFS_LIMIT if method == "bfs" else DEFAULT_BRUTEFORCE_LIMIT
    width = params.num_members
    if width > limit:
        raise ResourceLimitError(
            f"C({params.n},{params.k + 1}) = {width} members exceeds the {method} "
            f"limit of {limit}"
        )
    if method == "bfs":
        found = _bfs_bits(params)
    else:
        found = _bruteforce_bits(params, jobs)
    found.sort(key=lambda b: (b.bit_count(), b))
    elements = tuple(ConsistentSet(params, b) for b in found)
    index = {b: i for i, b in enumerate(found)}
    covers = []
    for i, bits in enumerate(found):
        for e in range(width):
            flag = 1 << e
            if bits & flag:
                continue
            j = index.get(bits | flag)
            if j is not None:
                covers.append((i, j))
    return BruhatOrder(params, kind, elements, tuple(covers))


def leq_inclusion(u: ConsistentSet, v: ConsistentSet) -> bool:
    """Ordinary containment of member families."""
    if u.params != v.params:
        raise ParameterError(f"parameter mismatch: {u.params} vs {v.params}")
    return u.bits & ~v.bits == 0


def leq_single_step(u: ConsistentSet, v: ConsistentSet, order: BruhatOrder) -> bool:
    """True iff v is reachable from u by single consistent additions."""
    i = order.index_of(u)
    j = order.index_of(v)
    return bool(order.reach()[i] >> j & 1)


def _require_level_above_base(params: GroundParams) -> None:
    if params.n < params.k + 2:
        raise ParameterError(
            f"maps between levels need n >= k+2, got n={params.n}, k={params.k}"
        )


def map_f(u: ConsistentSet) -> ConsistentSet:
    """Forget the members containing n; lands one ground-set size down.

    Colex ranks are stable under shrinking the ground set, so this is a
    plain mask on the bitset.
    """
    _require_level_above_base(u.params)
    small = GroundParams(u.params.n - 1, u.params.k)
    try:
        return ConsistentSet(small, u.bits & small.full_bits)
    except InconsistentSetError as exc:  # pragma: no cover - impossible
        raise InvariantError(f"restriction of a consistent family inconsistent: {exc}")


def map_i(v: ConsistentSet) -> ConsistentSet:
    """Reinterpret a family over [n-1] as one over [n] (same members)."""
    big = GroundParams(v.params.n + 1, v.params.k)
    try:
        return ConsistentSet(big, v.bits)
    except InconsistentSetError as exc:  # pragma: no cover - impossible
        raise InvariantError(f"ground-set extension became inconsistent: {exc}")


def map_j(v: ConsistentSet) -> ConsistentSet:
    """Extend a family over [n-1] by every (k+1)-subset containing n."""
    big = GroundParams(v.params.n + 1, v.params.k)
    added = big.full_bits ^ v.params.full_bits
    try:
        return ConsistentSet(big, v.bits | added)
    except InconsistentSetError as exc:  # pragma: no cover - impossible
        raise InvariantError(f"saturated extension became inconsistent: {exc}")


def is_green(u: ConsistentSet) -> bool:
    """True iff the interval {n-k, ..., n} is absent from the family.

    That interval is the colex-largest member, so this is the top bit.
    """
    return not u.bits >> (u.params.num_members - 1) & 1


@dataclass(frozen=True)
class AdmissiblePermutation:
    """A linear order on all k-subsets of [m] that restricts to lex or
    reverse-lex order on every packet, according to membership of the
    packet base in the defining family."""

    m: int
    order: tuple[KSubset, ...]


def admissible_permutation(v: ConsistentSet) -> AdmissiblePermutation:
    """Topologically sort the k-subsets of [m] under the packet constraints.

    For each (k+1)-subset Q of [m], the k-subsets of Q are chained in lex
    order when Q belongs to the family and in reverse-lex order otherwise.
    Ties are broken by smallest colex rank.
    """
    m = v.params.n
    k = v.params.k
    nodes = enumerate_subsets(m, k)
    n_nodes = len(nodes)
    succ: list[list[int]] = [[] for _ in range(n_nodes)]
    indegree = [0] * n_nodes
    for q in itertools.combinations(range(1, m + 1), k + 1):
        members = sorted(itertools.combinations(q, k))
        if KSubset(q) not in v:
            members.reverse()
        ranks = [colex_rank(t) for t in members]
        for a, b in zip(ranks, ranks[1:]):
            succ[a].append(b)
            indegree[b] += 1
    ready = [i for i in range(n_nodes) if indegree[i] == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        i = heapq.heappop(ready)
        out.append(nodes[i])
        for j in succ[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(ready, j)
    if len(out) != n_nodes:
        raise InvariantError(
            "packet precedence constraints are cyclic; the family is corrupted"
        )
    return AdmissiblePermutation(m, tuple(out))


@dataclass(frozen=True)
class BuildupSequence:
    """A chain of consistent families each adding one member containing n."""

    steps: tuple[ConsistentSet, ...]


def buildup_sequence(u: ConsistentSet) -> BuildupSequence:
    """Grow u from its restriction by adding members containing n one at a time.

    The additions are ordered by where their truncations appear in an
    admissible permutation for the restriction; every intermediate family
    is consistency-checked, and a failure raises InvariantError because
    the construction is guaranteed to stay consistent.
    """
    _require_level_above_base(u.params)
    restricted = map_f(u)
    alpha = admissible_permutation(restricted)
    position = {sub.elements: pos for pos, sub in enumerate(alpha.order)}
    additions = [
        member
        for member in u.members()
        if member.elements[-1] == u.params.n
    ]
    additions.sort(key=lambda member: position[member.elements[:-1]])
    steps = [map_i(restricted)]
    bits = steps[0].bits
    for member in additions:
        bits |= 1 << member.rank
        try:
            steps.append(ConsistentSet(u.params, bits))
        except InconsistentSetError as exc:
            raise InvariantError(
                f"build-up for {u} hit an inconsistent intermediate adding {member}: {exc}"
            )
    if steps[-1].bits != u.bits:  # pragma: no cover - impossible
        raise InvariantError("build-up did not terminate at the input family")
    return BuildupSequence(tuple(steps))


def dual_buildup_sequence(u: ConsistentSet) -> BuildupSequence:
    """A single-addition chain from u up to its saturated extension target.

    Obtained by complementing, building up, and complementing back; the
    result witnesses comparability of u with map_j(map_f(u)).
    """
    forward = buildup_sequence(complement(u))
    steps = tuple(complement(s) for s in reversed(forward.steps))
    return BuildupSequence(steps)


def to_poset(order: BruhatOrder) -> posets.FiniteBoundedPoset:
    """The order as a generic bounded poset; relation follows order.kind."""
    labels = tuple(str(u) for u in order.elements)
    n = len(order.elements)
    if order.kind is OrderKind.SINGLE_STEP:
        rows = order.reach()
    else:
        rows = []
        for i in range(n):
            bits_i = order.elements[i].bits
            row = 0
            for j in range(n):
                if bits_i & ~order.elements[j].bits == 0:
                    row |= 1 << j
            rows.append(row)
        rows = tuple(rows)
    return posets.from_relation(labels, rows, bottom=0, top=n - 1)


def dissection_instance(order: BruhatOrder, suborder: BruhatOrder | None = None):
    """The structure maps of the level descent, packaged for condition checking.

    Builds P from the order, Q from the same-kind order one ground-set
    size down, colors elements green/red, and tabulates the three maps.
    """
    from .suspension_check import DissectionInstance

    params = order.params
    _require_level_above_base(params)
    if suborder is None:
        suborder = enumerate_bruhat(
            GroundParams(params.n - 1, params.k), kind=order.kind
        )
    if suborder.params != GroundParams(params.n - 1, params.k):
        raise ParameterError("suborder must live one ground-set size down")
    if suborder.kind != order.kind:
        raise ParameterError("order kinds differ")
    p = to_poset(order)
    q = to_poset(suborder)
    f_images = tuple(suborder.index_of(map_f(u)) for u in order.elements)
    i_images = tuple(order.index_of(map_i(v)) for v in suborder.elements)
    j_images = tuple(order.index_of(map_j(v)) for v in suborder.elements)
    green = frozenset(i for i, u in enumerate(order.elements) if is_green(u))
    return DissectionInstance(
        p=p,
        q=q,
        green=green,
        f=posets.MonotoneMap(p, q, f_images),
        i=posets.MonotoneMap(q, p, i_images),
        j=posets.MonotoneMap(q, p, j_images),
    )
