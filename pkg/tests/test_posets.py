import itertools
import random

import pytest

from helpers import random_bounded_poset
from higher_bruhat.bruhat import dissection_instance, enumerate_bruhat, to_poset
from higher_bruhat.errors import NotAPosetError, NotBoundedError, ParameterError
from higher_bruhat.posets import (
    FiniteBoundedPoset,
    MonotoneMap,
    check_monotone,
    count_chains,
    count_maximal_chains,
    from_covers,
    from_relation,
    iter_chains,
    iter_maximal_chains,
    order_complex,
    product_with_two_chain,
    proper_part,
)
from higher_bruhat.subsets import GroundParams


def chain_poset(n):
    labels = [f"c{i}" for i in range(n)]
    return from_covers(labels, [(i, i + 1) for i in range(n - 1)], 0, n - 1)


def diamond_poset(middle):
    labels = ["bot"] + [f"m{i}" for i in range(middle)] + ["top"]
    covers = [(0, i) for i in range(1, middle + 1)]
    covers += [(i, middle + 1) for i in range(1, middle + 1)]
    if middle == 0:
        covers = [(0, 1)]
    return from_covers(labels, covers, 0, len(labels) - 1)


class TestFromCovers:
    def test_two_chain(self):
        p = chain_poset(2)
        assert p.le(0, 1) and not p.le(1, 0)
        assert len(proper_part(p)) == 0

    def test_cycle_rejected(self):
        with pytest.raises(NotAPosetError):
            from_covers(["a", "b", "c"], [(0, 1), (1, 2), (2, 0)], 0, 2)

    def test_self_loop_rejected(self):
        with pytest.raises(NotAPosetError):
            from_covers(["a", "b"], [(0, 0), (0, 1)], 0, 1)

    def test_unbounded_rejected(self):
        # two maximal elements
        with pytest.raises(NotBoundedError):
            from_covers(["a", "b", "c"], [(0, 1), (0, 2)], 0, 2)

    def test_out_of_range_cover(self):
        with pytest.raises(ParameterError):
            from_covers(["a", "b"], [(0, 5)], 0, 1)

    def test_matches_bruhat_poset(self):
        target = to_poset(enumerate_bruhat(GroundParams(3, 1)))
        rebuilt = from_covers(target.labels, target.covers(), target.bottom, target.top)
        assert rebuilt == target

    def test_closure_of_transitive_reduction_is_identity(self):
        rng = random.Random(7)
        for _ in range(25):
            p = random_bounded_poset(rng)
            rebuilt = from_covers(p.labels, p.covers(), p.bottom, p.top)
            assert rebuilt.leq == p.leq


class TestFromRelation:
    def test_detects_bounds(self):
        rows = (0b111, 0b110, 0b100)
        p = from_relation(("a", "b", "c"), rows)
        assert p.bottom == 0 and p.top == 2

    def test_missing_reflexivity(self):
        with pytest.raises(NotAPosetError):
            from_relation(("a", "b"), (0b11, 0b00), bottom=0, top=1)

    def test_antisymmetry_violation(self):
        with pytest.raises(NotAPosetError):
            from_relation(("a", "b"), (0b11, 0b11), bottom=0, top=1)

    def test_transitivity_violation(self):
        rows = (0b011, 0b110, 0b100)  # a<=b, b<=c, but not a<=c
        with pytest.raises(NotAPosetError):
            from_relation(("a", "b", "c"), rows, bottom=0, top=2)

    def test_no_bottom(self):
        rows = (0b101, 0b110, 0b100)  # two minimal elements a, b
        with pytest.raises(NotBoundedError):
            from_relation(("a", "b", "c"), rows)

    def test_duplicate_labels(self):
        with pytest.raises(ParameterError):
            from_relation(("a", "a"), (0b11, 0b10))


class TestProperPart:
    def test_chains(self):
        assert len(proper_part(chain_poset(2))) == 0
        assert len(proper_part(chain_poset(3))) == 1

    def test_one_element_poset(self):
        p = FiniteBoundedPoset(("x",), (0b1,), 0, 0)
        assert len(proper_part(p)) == 0

    def test_bruhat_three_one(self):
        pp = proper_part(to_poset(enumerate_bruhat(GroundParams(3, 1))))
        assert len(pp) == 4
        strict = [
            (i, j)
            for i in range(4)
            for j in range(4)
            if i != j and pp.le(i, j)
        ]
        assert len(strict) == 2  # two disjoint two-chains


class TestProductWithTwoChain:
    def test_square(self):
        p = product_with_two_chain(chain_poset(2))
        assert len(p) == 4
        assert sorted(p.labels) == ["(c0,0)", "(c0,1)", "(c1,0)", "(c1,1)"]
        # Boolean lattice: the two middle elements are incomparable
        pp = proper_part(p)
        assert len(pp) == 2
        assert not pp.le(0, 1) and not pp.le(1, 0)

    def test_doubles_size(self):
        rng = random.Random(3)
        for _ in range(10):
            q = random_bounded_poset(rng)
            assert len(product_with_two_chain(q)) == 2 * len(q)

    def test_componentwise_order(self):
        q = diamond_poset(2)
        p = product_with_two_chain(q)
        n = len(q)
        for a in range(n):
            for s in (0, 1):
                for b in range(n):
                    for t in (0, 1):
                        expected = q.le(a, b) and s <= t
                        assert p.le(a + s * n, b + t * n) == expected


class TestOrderComplex:
    def test_empty_proper_part(self):
        cx = order_complex(proper_part(chain_poset(2)))
        assert cx.dim == -1
        assert cx.f_vector() == ()

    def test_antichain(self):
        cx = order_complex(proper_part(diamond_poset(4)))
        assert cx.f_vector() == (4,)

    def test_two_disjoint_edges(self):
        pp = proper_part(to_poset(enumerate_bruhat(GroundParams(3, 1))))
        cx = order_complex(pp)
        assert cx.f_vector() == (4, 2)

    def test_full_chain_gives_simplex(self):
        cx = order_complex(chain_poset(4))
        assert cx.f_vector() == (4, 6, 4, 1)

    def test_f_vector_counts_chains(self):
        rng = random.Random(11)
        for _ in range(10):
            p = random_bounded_poset(rng)
            cx = order_complex(p)
            by_len = {}
            for chain in iter_chains(p):
                by_len[len(chain)] = by_len.get(len(chain), 0) + 1
            assert cx.f_vector() == tuple(
                by_len.get(d + 1, 0) for d in range(cx.dim + 1)
            )
            assert count_chains(p) == sum(cx.f_vector())

    def test_monotone_image_of_chain_is_chain(self):
        inst = dissection_instance(enumerate_bruhat(GroundParams(3, 1)))
        cx = order_complex(inst.p)
        for fs in cx.faces:
            for face in fs:
                image = sorted(set(inst.f.images[v] for v in face))
                for a, b in itertools.combinations(image, 2):
                    assert inst.q.le(a, b) or inst.q.le(b, a)


class TestMaximalChains:
    def test_hexagon(self):
        p = to_poset(enumerate_bruhat(GroundParams(3, 1)))
        maximal = list(iter_maximal_chains(p))
        assert len(maximal) == 2
        assert all(len(c) == 4 for c in maximal)

    def test_proper_hexagon(self):
        pp = proper_part(to_poset(enumerate_bruhat(GroundParams(3, 1))))
        maximal = sorted(iter_maximal_chains(pp))
        assert len(maximal) == 2
        assert all(len(c) == 2 for c in maximal)

    def test_count_matches_enumeration(self):
        rng = random.Random(5)
        for _ in range(10):
            p = random_bounded_poset(rng)
            assert count_chains(p) == len(list(iter_chains(p)))
            assert count_maximal_chains(p) == len(list(iter_maximal_chains(p)))


class TestCheckMonotone:
    def test_identity_and_constant(self):
        p = chain_poset(3)
        ok, bad = check_monotone(MonotoneMap(p, p, (0, 1, 2)))
        assert ok and bad == []
        ok, bad = check_monotone(MonotoneMap(p, p, (2, 2, 2)))
        assert ok and bad == []

    def test_order_reversal_detected(self):
        p = chain_poset(2)
        ok, bad = check_monotone(MonotoneMap(p, p, (1, 0)))
        assert not ok
        assert bad == [(0, 1)]

    def test_map_validation(self):
        p = chain_poset(2)
        with pytest.raises(ParameterError):
            MonotoneMap(p, p, (0,))
        with pytest.raises(ParameterError):
            MonotoneMap(p, p, (0, 5))
