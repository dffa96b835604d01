"""Finite bounded posets: construction, proper parts, products, order complexes.

The order relation is stored as a tuple of row bitsets: bit j of leq[i] is
set iff element i <= element j.  Partial-order axioms and boundedness are
verified whenever a poset is built, so a FiniteBoundedPoset in hand is
always certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .complexes import SimplicialComplex, make_complex
from .errors import NotAPosetError, NotBoundedError, ParameterError

__all__ = [
    "FiniteBoundedPoset",
    "ProperPart",
    "MonotoneMap",
    "PosetLike",
    "from_covers",
    "from_relation",
    "proper_part",
    "product_with_two_chain",
    "order_complex",
    "check_monotone",
    "count_chains",
    "iter_chains",
    "iter_maximal_chains",
]


@dataclass(frozen=True)
class FiniteBoundedPoset:
    labels: tuple[str, ...]
    leq: tuple[int, ...]
    bottom: int
    top: int

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.leq) != n:
            raise ParameterError("labels and relation rows differ in length")
        if len(set(self.labels)) != n:
            raise ParameterError("labels must be unique")
        full = (1 << n) - 1
        for i, row in enumerate(self.leq):
            if row & ~full:
                raise ParameterError(f"row {i} references elements out of range")
            if not row >> i & 1:
                raise NotAPosetError(f"relation is not reflexive at {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i] >> j & 1 and self.leq[j] >> i & 1:
                    raise NotAPosetError(
                        f"relation is not antisymmetric on "
                        f"{self.labels[i]}, {self.labels[j]}"
                    )
        for i in range(n):
            row = self.leq[i]
            m = row
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if self.leq[j] & ~row:
                    raise NotAPosetError(
                        f"relation is not transitive through {self.labels[j]}"
                    )
                m ^= low
        if not 0 <= self.bottom < n or not 0 <= self.top < n:
            raise NotBoundedError("bottom/top index out of range")
        if self.leq[self.bottom] != full:
            raise NotBoundedError(f"{self.labels[self.bottom]} is not below every element")
        for i in range(n):
            if not self.leq[i] >> self.top & 1:
                raise NotBoundedError(f"{self.labels[self.top]} is not above every element")

    def __len__(self) -> int:
        return len(self.labels)

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    def down_sets(self) -> tuple[int, ...]:
        """Column bitsets: bit i of entry j is set iff i <= j."""
        n = len(self.labels)
        cols = [0] * n
        for i, row in enumerate(self.leq):
            m = row
            while m:
                low = m & -m
                cols[low.bit_length() - 1] |= 1 << i
                m ^= low
        return tuple(cols)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction as (lower, upper) index pairs, ascending."""
        down = self.down_sets()
        out = []
        for i in range(len(self.labels)):
            strict_up = self.leq[i] & ~(1 << i)
            m = strict_up
            while m:
                low = m & -m
                j = low.bit_length() - 1
                between = strict_up & down[j] & ~low
                if not between:
                    out.append((i, j))
                m ^= low
        return tuple(out)


@dataclass(frozen=True)
class ProperPart:
    """A bounded poset minus its bottom and top, with the induced relation."""

    parent: FiniteBoundedPoset
    parent_index: tuple[int, ...]
    labels: tuple[str, ...]
    leq: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)


PosetLike = Union[FiniteBoundedPoset, ProperPart]


@dataclass(frozen=True)
class MonotoneMap:
    """A map between posets given by per-element target indices."""

    source: PosetLike
    target: PosetLike
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.source.labels):
            raise ParameterError("image table does not cover the source")
        n_target = len(self.target.labels)
        for i, img in enumerate(self.images):
            if not 0 <= img < n_target:
                raise ParameterError(f"image of {self.source.labels[i]} is out of range")

    def __call__(self, i: int) -> int:
        return self.images[i]


def from_relation(
    labels: Sequence[str],
    leq: Sequence[int],
    bottom: int | None = None,
    top: int | None = None,
) -> FiniteBoundedPoset:
    """Build and verify a bounded poset from relation rows.

    bottom and top are located automatically when not supplied.
    """
    labels = tuple(labels)
    leq = tuple(leq)
    n = len(labels)
    full = (1 << n) - 1
    if bottom is None:
        bottoms = [i for i in range(n) if leq[i] == full]
        if not bottoms:
            raise NotBoundedError("no minimum element")
        bottom = bottoms[0]
    if top is None:
        tops = [j for j in range(n) if all(row >> j & 1 for row in leq)]
        if not tops:
            raise NotBoundedError("no maximum element")
        top = tops[0]
    return FiniteBoundedPoset(labels, leq, bottom, top)


def from_covers(
    labels: Sequence[str],
    cover_pairs: Iterable[tuple[int, int]],
    bottom: int,
    top: int,
) -> FiniteBoundedPoset:
    """Build a bounded poset as the reflexive-transitive closure of covers."""
    labels = tuple(labels)
    n = len(labels)
    adj = [0] * n
    for a, b in cover_pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ParameterError(f"cover pair ({a}, {b}) out of range")
        if a == b:
            raise NotAPosetError(f"self-loop at {labels[a]}")
        adj[a] |= 1 << b
    rows = [1 << i | adj[i] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            m = adj[i]
            while m:
                low = m & -m
                acc |= rows[low.bit_length() - 1]
                m ^= low
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    for i in range(n):
        for j in range(n):
            if i != j and rows[i] >> j & 1 and rows[j] >> i & 1:
                raise NotAPosetError(
                    f"cover digraph has a cycle through {labels[i]} and {labels[j]}"
                )
    return FiniteBoundedPoset(labels, tuple(rows), bottom, top)


def proper_part(p: FiniteBoundedPoset) -> ProperPart:
    """Drop bottom and top; a one-element poset has an empty proper part."""
    keep = [i for i in range(len(p.labels)) if i not in (p.bottom, p.top)]
    rows = []
    for i in keep:
        row = 0
        for pos, j in enumerate(keep):
            if p.leq[i] >> j & 1:
                row |= 1 << pos
        rows.append(row)
    return ProperPart(
        parent=p,
        parent_index=tuple(keep),
        labels=tuple(p.labels[i] for i in keep),
        leq=tuple(rows),
    )


def product_with_two_chain(q: FiniteBoundedPoset) -> FiniteBoundedPoset:
    """The poset q x {0,1} with componentwise order.

    Element (a, s) has index a + s * len(q); (a, s) <= (b, t) iff a <= b
    in q and s <= t.
    """
    n = len(q.labels)
    labels = [f"({lbl},0)" for lbl in q.labels] + [f"({lbl},1)" for lbl in q.labels]
    rows = []
    for a in range(n):
        rows.append(q.leq[a] | q.leq[a] << n)
    for a in range(n):
        rows.append(q.leq[a] << n)
    return FiniteBoundedPoset(tuple(labels), tuple(rows), q.bottom, q.top + n)


def check_monotone(m: MonotoneMap) -> tuple[bool, list[tuple[int, int]]]:
    """Exhaustively verify order preservation; returns (ok, violating pairs)."""
    violations = []
    n = len(m.source.labels)
    for i in range(n):
        row = m.source.leq[i]
        mm = row
        while mm:
            low = mm & -mm
            j = low.bit_length() - 1
            if not m.target.leq[m.images[i]] >> m.images[j] & 1:
                violations.append((i, j))
            mm ^= low
    return not violations, violations


def _linear_extension(p: PosetLike) -> list[int]:
    """Element indices sorted so that smaller elements come first."""
    down = [0] * len(p.labels)
    for i, row in enumerate(p.leq):
        m = row
        while m:
            low = m & -m
            down[low.bit_length() - 1] += 1
            m ^= low
    return sorted(range(len(p.labels)), key=lambda i: (down[i], i))


def iter_chains(p: PosetLike) -> Iterator[tuple[int, ...]]:
    """All non-empty chains, each listed in increasing poset order."""
    n = len(p.labels)
    strict_up = [p.leq[i] & ~(1 << i) for i in range(n)]

    def extend(chain: tuple[int, ...]):
        yield chain
        m = strict_up[chain[-1]]
        while m:
            low = m & -m
            yield from extend(chain + (low.bit_length() - 1,))
            m ^= low

    for start in range(n):
        yield from extend((start,))


def count_chains(p: PosetLike) -> int:
    """Number of non-empty chains, without enumerating them."""
    n = len(p.labels)
    order = _linear_extension(p)
    ending = [0] * n
    for i in order:
        # chains ending at i extend chains ending strictly below i
        total = 1
        for j in range(n):
            if j != i and p.leq[j] >> i & 1:
                total += ending[j]
        ending[i] = total
    return sum(ending)


def count_maximal_chains(p: PosetLike) -> int:
    """Number of maximal chains, without enumerating them."""
    n = len(p.labels)
    order = _linear_extension(p)
    down = [0] * n
    for i, row in enumerate(p.leq):
        m = row
        while m:
            low = m & -m
            down[low.bit_length() - 1] |= 1 << i
            m ^= low
    starting = [0] * n  # maximal chains whose least element is i
    total = 0
    for i in reversed(order):
        strict_up = p.leq[i] & ~(1 << i)
        count = 0
        m = strict_up
        while m:
            low = m & -m
            j = low.bit_length() - 1
            if not strict_up & down[j] & ~low:  # j covers i
                count += starting[j]
            m ^= low
        starting[i] = count if strict_up else 1
        if down[i] == 1 << i:
            total += starting[i]
    return total


def iter_maximal_chains(p: PosetLike) -> Iterator[tuple[int, ...]]:
    """Chains that cannot be extended: minimal start, cover steps, maximal end."""
    n = len(p.labels)
    if n == 0:
        return
    down = [0] * n
    for i, row in enumerate(p.leq):
        m = row
        while m:
            low = m & -m
            down[low.bit_length() - 1] |= 1 << i
            m ^= low
    succ: list[list[int]] = [[] for _ in range(n)]
    minimal = []
    for i in range(n):
        if down[i] == 1 << i:
            minimal.append(i)
        strict_up = p.leq[i] & ~(1 << i)
        m = strict_up
        while m:
            low = m & -m
            j = low.bit_length() - 1
            if not strict_up & down[j] & ~low:
                succ[i].append(j)
            m ^= low

    def extend(chain: tuple[int, ...]):
        nxt = succ[chain[-1]]
        if not nxt:
            yield chain
            return
        for j in nxt:
            yield from extend(chain + (j,))

    for start in minimal:
        yield from extend((start,))


def order_complex(p: PosetLike) -> SimplicialComplex:
    """The simplicial complex whose simplices are the chains of p."""
    faces_by_dim: list[list[tuple[int, ...]]] = []
    for chain in iter_chains(p):
        d = len(chain) - 1
        while len(faces_by_dim) <= d:
            faces_by_dim.append([])
        faces_by_dim[d].append(tuple(sorted(chain)))
    return make_complex(len(p.labels), faces_by_dim)
