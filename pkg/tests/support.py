"""Generators and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

from hypothesis import strategies as st

from fibrous import CatalogRef, Decomp, Finite, Multiple, Sum
from fibrous.homology import close_and_validate
from fibrous.terms import subterms

# small in-domain parameter tuples for every builtin entry
SMALL_REFS = (
    [CatalogRef("S", (n,)) for n in range(4)]
    + [CatalogRef("RP", (n,)) for n in range(4)]
    + [CatalogRef("D", (n,)) for n in range(4)]
    + [CatalogRef("M", (g,)) for g in range(3)]
    + [CatalogRef("N", (h,)) for h in range(1, 4)]
    + [CatalogRef("T", (n,)) for n in (1, 2, 3)]
    + [CatalogRef("rosette", (k,)) for k in range(4)]
    + [CatalogRef("chain", (k,)) for k in range(4)]
    + [CatalogRef("cw", (1,)), CatalogRef("cw", (4, 6, 4)), CatalogRef("cw", (2, 0, 3, 1))]
)


def random_term(rng: random.Random, depth: int = 3):
    """Random term without one-part sums or length-0 decompositions.

    Those two wrappers have no notation of their own and render as their content.
    """
    choice = rng.randrange(5) if depth > 0 else rng.randrange(2)
    if choice == 0:
        return Finite(rng.randrange(6))
    if choice == 1:
        return rng.choice(SMALL_REFS)
    if choice == 2:
        return Sum(tuple(random_term(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if choice == 3:
        return Multiple(rng.randint(1, 4), random_term(rng, depth - 1))
    n = rng.randint(1, 3)
    return Decomp(
        tuple(random_term(rng, depth - 1) for _ in range(n + 1)),
        tuple(random_term(rng, depth - 1) for _ in range(n)),
    )


def _decomps(children):
    return st.integers(1, 3).flatmap(
        lambda n: st.builds(
            Decomp,
            st.lists(children, min_size=n + 1, max_size=n + 1).map(tuple),
            st.lists(children, min_size=n, max_size=n).map(tuple),
        )
    )


terms = st.recursive(
    st.one_of(st.builds(Finite, st.integers(0, 6)), st.sampled_from(SMALL_REFS)),
    lambda children: st.one_of(
        st.builds(Sum, st.lists(children, min_size=2, max_size=3).map(tuple)),
        st.builds(Multiple, st.integers(1, 4), children),
        _decomps(children),
    ),
    max_leaves=12,
)


def random_complex(rng: random.Random, max_vertices: int = 8, max_simplices: int = 6, max_size: int = 4):
    """Downward closure of a few random simplices on at most ``max_vertices`` vertices."""
    nv = rng.randint(1, max_vertices)
    maximal = []
    for _ in range(rng.randint(1, max_simplices)):
        size = rng.randint(1, min(max_size, nv))
        maximal.append(rng.sample(range(nv), size))
    return close_and_validate(maximal)


complexes = st.lists(
    st.lists(st.integers(0, 7), min_size=1, max_size=4, unique=True), min_size=1, max_size=6
).map(close_and_validate)


# -- exact linear algebra oracles ----------------------------------------------


def det(rows) -> int:
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    assert result.denominator == 1
    return int(result)


def minors_gcd(rows, i: int) -> int:
    m, n = len(rows), len(rows[0]) if rows else 0
    g = 0
    for rs in combinations(range(m), i):
        for cs in combinations(range(n), i):
            g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
    return g


def fraction_free_rank(rows) -> int:
    """Rank by Bareiss fraction-free elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    rank, prev = 0, 1
    for c in range(n):
        piv = next((r for r in range(rank, m) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, m):
            for k in range(c + 1, n):
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) // prev
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
    return rank


def components(c) -> int:
    """Connected components of the 1-skeleton by union-find."""
    parent = {v: v for v in c.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in c.faces[1] if c.dimension >= 1 else ():
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[a] = b
    return len({find(v) for v in parent})


def decomposition_height(term) -> int:
    """Longest chain of nested decompositions of length >= 1 in a catalog-free term."""
    if isinstance(term, Finite):
        return 0
    if isinstance(term, Sum):
        return max(decomposition_height(p) for p in term.parts)
    if isinstance(term, Multiple):
        return decomposition_height(term.base)
    assert isinstance(term, Decomp), term
    inner = max(decomposition_height(f) for f in term.transitional + term.running)
    return inner + (1 if term.length else 0)


def catalog_refs_in(term) -> bool:
    return any(isinstance(t, CatalogRef) for t in subterms(term))



# criterion number -> (status, description); filled by test_acceptance, printed by conftest
ACCEPTANCE_LOG: dict[int, tuple[str, str]] = {}
