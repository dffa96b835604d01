"""Independent oracles and generators shared by the test modules.

Everything here is deliberately written from the definitions, without
using the library's bitset machinery, so the tests cross-check two
independent routes to the same answers.
"""

import itertools
from math import gcd

from higher_bruhat.complexes import SimplicialComplex, from_facets
from higher_bruhat.posets import FiniteBoundedPoset, from_covers


def naive_colex_subsets(n, r):
    """All r-subsets of [n] in colex order, by direct recursion on the maximum."""
    if r == 0:
        return [()]
    if r > n:
        return []
    # subsets with max < n first, then subsets with max = n
    return naive_colex_subsets(n - 1, r) + [
        s + (n,) for s in naive_colex_subsets(n - 1, r - 1)
    ]


def naive_is_consistent(members, n, k):
    """Segment condition straight from the definition, with list slicing."""
    family = {tuple(sorted(m)) for m in members}
    for base in itertools.combinations(range(1, n + 1), k + 2):
        packet = sorted(itertools.combinations(base, k + 1))
        flags = [m in family for m in packet]
        count = sum(flags)
        if count in (0, len(packet)):
            continue
        if not (all(flags[:count]) or all(flags[-count:])):
            return False
    return True


def inversion_family(perm):
    """The inversion set of a permutation of [n], as sorted pairs."""
    pos = {v: i for i, v in enumerate(perm)}
    n = len(perm)
    return frozenset(
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if pos[i] > pos[j]
    )


def det_int(matrix):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def snf_by_minor_gcds(dense):
    """Invariant factors and rank via determinantal divisors.

    d_k = gcd of all k x k minors; the k-th invariant factor is
    d_k / d_{k-1}.  Only viable for small matrices.
    """
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    divisors = []
    for size in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), size):
            for cs in itertools.combinations(range(cols), size):
                sub = [[dense[r][c] for c in cs] for r in rs]
                g = gcd(g, abs(det_int(sub)))
        if g == 0:
            break
        divisors.append(g)
    factors = []
    prev = 1
    for d in divisors:
        factors.append(d // prev)
        prev = d
    return tuple(factors), len(divisors)


def random_bounded_poset(rng, max_elements=10) -> FiniteBoundedPoset:
    """A random bounded poset with at most max_elements elements."""
    middle = rng.randrange(0, max_elements - 1)
    labels = ["bot"] + [f"m{i}" for i in range(middle)] + ["top"]
    n = len(labels)
    covers = set()
    for a in range(1, middle + 1):
        for b in range(a + 1, middle + 1):
            if rng.random() < 0.3:
                covers.add((a, b))
    has_in = {b for _, b in covers}
    has_out = {a for a, _ in covers}
    for m in range(1, middle + 1):
        if m not in has_in:
            covers.add((0, m))
        if m not in has_out:
            covers.add((m, n - 1))
    if middle == 0:
        covers.add((0, n - 1))
    return from_covers(labels, sorted(covers), 0, n - 1)


def random_complex(rng, max_vertices=12) -> SimplicialComplex:
    """A random small complex generated from random facets."""
    nv = rng.randrange(0, max_vertices + 1)
    facets = []
    if nv:
        for _ in range(rng.randrange(0, 8)):
            size = rng.randrange(1, min(4, nv) + 1)
            facets.append(rng.sample(range(nv), size))
    return from_facets(nv, facets)


def dense_matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for t in range(inner):
            v = a[i][t]
            if v:
                for j in range(cols):
                    out[i][j] += v * b[t][j]
    return out


def homology_dict(report):
    """Degree -> (betti, torsion) over the support, for cross-report equality."""
    return {
        d: (report.betti_at(d), report.torsion_at(d))
        for d in report.degrees()
        if report.betti_at(d) or report.torsion_at(d)
    }
