import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetres import (
    adjacent_faces,
    build_complex,
    components,
    diameter,
    dimension,
    distance,
    find_leafless_subcomplex,
    free_vertices,
    has_intersection_property,
    irredundant_proper_chains,
    is_chain,
    is_connected,
    is_connected_codim1,
    is_forest,
    is_irredundant_chain,
    is_leaf,
    is_pure,
    is_quasi_forest,
    is_tree,
    leaf_order,
    leaves,
    link,
    star,
    universal_set,
)
from facetres.complex import MAX_VERTICES, from_masks, is_proper_step
from facetres.errors import (
    CapacityExceeded,
    EmptyInput,
    NotAFace,
    NotAFacet,
    NotAntichain,
    PreconditionViolated,
    TooLarge,
)
from facetres.generate import random_codim1_tree, random_forest

from _util import C, M

NEQ = "abc bcd cef cfg"
QUASI = "abc bcd cde bdf"


def test_build_examples():
    d = C("abc cde efg")
    assert len(d) == 3 and dimension(d) == 2
    a = C("a")
    assert len(a) == 1 and dimension(a) == 0
    assert C("ab a", normalize=True).facets == C("ab").facets


def test_build_errors():
    with pytest.raises(EmptyInput):
        build_complex([])
    with pytest.raises(NotAntichain):
        C("ab a")
    with pytest.raises(CapacityExceeded):
        build_complex([[f"v{i}" for i in range(MAX_VERTICES + 1)]])
    # 64 vertices is still fine
    assert build_complex([[f"v{i}" for i in range(MAX_VERTICES)]]).n == MAX_VERTICES


def test_canonical_order_and_dedup():
    d = build_complex([["b", "c"], ["a", "b"], ["b", "c"]])
    assert d.facets == tuple(sorted(set(d.facets)))
    assert len(d) == 2


def test_dimension_and_purity():
    assert dimension(C(NEQ)) == 2 and is_pure(C(NEQ))
    assert dimension(C("ab bcd")) == 2 and not is_pure(C("ab bcd"))
    assert is_pure(C("a"))


def test_free_vertex_that_is_not_a_leaf():
    d = C("abc cde efg")
    f = M(d, "cde")
    assert not is_leaf(d, f)
    assert free_vertices(d, f) == M(d, "d")


def test_leaf_basics():
    d = C("ab bc")
    f = M(d, "ab")
    assert is_leaf(d, f)
    assert universal_set(d, f) == [M(d, "bc")]
    assert free_vertices(d, f) == M(d, "a")
    single = C("abc")
    assert is_leaf(single, single.facets[0])
    with pytest.raises(NotAFacet):
        is_leaf(d, M(d, "ac"))


def test_star_and_link():
    d = C("abc bcd")
    assert link(d, M(d, "bc")).facets == (M(d, "a"), M(d, "d"))
    n = C(NEQ)
    lk = link(n, M(n, "c"))
    assert set(lk.facets) == {M(n, w) for w in ("ab", "bd", "ef", "fg")}
    assert not is_connected(lk)
    assert star(n, 0) == n and link(n, 0) == n
    with pytest.raises(NotAFace):
        star(d, M(d, "ad"))


def test_connectivity():
    n = C(NEQ)
    assert is_connected(n) and not is_connected_codim1(n)
    assert not is_connected(C("ab cd"))
    d = C("abc bcd")
    assert is_connected(d) and is_connected_codim1(d)


def test_irredundant_proper_chains():
    d = C("abc acd cde")
    f, g = M(d, "abc"), M(d, "cde")
    assert irredundant_proper_chains(d, f, g) == [(f, M(d, "acd"), g)]
    assert irredundant_proper_chains(d, f, f) == [(f,)]
    # proper and irredundant among proper chains, yet abc, cde is a shorter chain
    chain = (f, M(d, "acd"), g)
    assert is_irredundant_chain(chain, proper=True)
    assert not is_irredundant_chain(chain)
    assert is_chain((f, g)) and not is_chain((f, g), proper=True)


def test_no_proper_chain_gives_empty_list():
    d = C("ab cd")
    assert irredundant_proper_chains(d, d.facets[0], d.facets[1]) == []


def test_distance_and_diameter():
    d = C("ab bc cd")
    assert distance(d, M(d, "ab"), M(d, "cd")) == 2
    assert distance(d, M(d, "ab"), M(d, "ab")) == 0
    assert diameter(d) == 2
    two = C("ab bc de")
    assert distance(two, M(two, "ab"), M(two, "de")) == math.inf
    with pytest.raises(PreconditionViolated):
        diameter(C(NEQ))


def test_leaf_orders():
    q = C(QUASI)
    assert leaf_order(q) is not None and is_quasi_forest(q)
    assert leaf_order(C("abc")) == [C("abc").facets[0]]
    assert leaf_order(C("ab bc ca")) is None


def test_forest_and_witness():
    q = C(QUASI)
    assert not is_forest(q)
    assert set(find_leafless_subcomplex(q)) == {M(q, w) for w in ("abc", "cde", "bdf")}
    assert is_tree(C("ab bc cd ce"))
    sq = C("ab bc cd da")
    assert set(find_leafless_subcomplex(sq)) == set(sq.facets)


def test_forest_bound():
    d = from_masks([str(i) for i in range(21)], [1 << i for i in range(21)])
    with pytest.raises(TooLarge):
        is_forest(d)
    assert is_forest(d, max_facets=21)


def test_intersection_property_examples():
    assert has_intersection_property(C("ab bc cd"))
    assert has_intersection_property(C("abc"))
    assert not has_intersection_property(C("ab bc cd de"))
    with pytest.raises(PreconditionViolated):
        has_intersection_property(C("ab bcd"))
    with pytest.raises(PreconditionViolated):
        has_intersection_property(C(NEQ))


def test_adjacent_faces():
    d = C("abc bcd")
    deg = dict(adjacent_faces(d))
    assert deg[M(d, "bc")] == 2
    assert all(deg[M(d, w)] == 1 for w in ("ab", "ac", "bd", "cd"))
    s = C("xa xb xc")
    assert dict(adjacent_faces(s))[M(s, "x")] == 3
    with pytest.raises(PreconditionViolated):
        adjacent_faces(C("ab bcd"))


def test_isolated_vertices_are_tracked_for_subcomplexes():
    d = C("ab bc")
    sub = d.subcomplex([M(d, "ab")])
    assert sub.isolated_vertices() == M(d, "c")


# -- properties on random complexes -------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6))
def test_forest_implies_quasi_forest(seed, m):
    d = random_forest(seed, m, max_dim=2, max_vertices=10)
    assert is_forest(d) and is_quasi_forest(d)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 6), st.integers(1, 3))
def test_codim1_tree_chain_properties(seed, m, dim):
    d = random_codim1_tree(seed, m, dim)
    for f, g in combinations(d.facets, 2):
        chains = irredundant_proper_chains(d, f, g)
        assert len(chains) == 1
        chain = chains[0]
        assert len(set(chain)) == len(chain)
        for i in range(1, len(chain) - 1):
            step = chain[i] & chain[i + 1]
            assert all(step & ~(chain[l] & chain[i]) for l in range(i))
        span = d.subcomplex(chain)
        assert all(not is_leaf(span, x) for x in chain[1:-1])
    assert len(leaves(d)) >= 2


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 6), st.integers(1, 3))
def test_leaf_removal_keeps_codim1_iff_leaf(seed, m, dim):
    d = random_codim1_tree(seed, m, dim)
    for f in d.facets:
        assert is_connected_codim1(d.without(f)) == is_leaf(d, f)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 6), st.integers(1, 3))
def test_facet_meets_rest_in_codim1_faces(seed, m, dim):
    d = random_codim1_tree(seed, m, dim)
    for f in d.facets:
        meets = {f & g for g in d.facets if g != f and f & g}
        tops = [x for x in meets if not any(x != y and x & y == x for y in meets)]
        assert all(bin(x).count("1") == dim for x in tops)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 6), st.integers(2, 3))
def test_link_criterion_for_codim1(seed, m, dim):
    d = random_forest(seed, m, max_dim=dim, max_vertices=10, connected=True)
    if not is_pure(d):
        return
    faces = {0}
    for f in d.facets:
        sub = f
        while sub:
            faces.add(sub)
            sub = (sub - 1) & f
    low = [g for g in faces if bin(g).count("1") - 1 <= dimension(d) - 2]
    assert is_connected_codim1(d) == all(is_connected(link(d, g)) for g in low)


def test_irredundant_plain_chain_shape():
    d = C("abc cde efg ghi")
    chain = tuple(M(d, w) for w in ("abc", "cde", "efg", "ghi"))
    assert is_irredundant_chain(chain)
    for p, q in combinations(range(len(chain)), 2):
        if q - p >= 2:
            assert chain[p] & chain[q] == 0


def test_proper_step_requires_nonincreasing_dimension():
    d = C("ab bcd")
    assert not is_proper_step(M(d, "ab"), M(d, "bcd"))
    assert is_proper_step(M(d, "bcd"), M(d, "ab"))


def test_diameter_endpoints_are_leaves():
    d = C("abc bcd cde def")
    far = max(combinations(d.facets, 2), key=lambda p: distance(d, *p))
    assert all(is_leaf(d, f) for f in far)


def test_components():
    d = C("ab bc de")
    assert sorted(len(c) for c in components(d)) == [1, 2]
