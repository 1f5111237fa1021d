import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetres import (
    classify_linear_tree,
    dimension,
    is_connected_codim1,
    is_forest,
    is_pure,
    is_tree,
)
from facetres.errors import GenerationExhausted, PreconditionViolated
from facetres.generate import (
    canonical_form,
    enumerate_small_trees,
    generate,
    random_codim1_tree,
    random_forest,
    random_graph_forest,
)
from facetres.fileformat import serialize_complex

from _util import C


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 3))
def test_kinds_meet_their_contract(seed, m, dim):
    f = generate("forest", m, dim, seed)
    assert is_forest(f) and dimension(f) <= dim
    t = generate("codim1-tree", m, dim, seed)
    assert is_tree(t) and is_connected_codim1(t) and is_pure(t) and len(t) == m
    lt = generate("linear-tree", m, dim, seed)
    assert classify_linear_tree(lt) and len(lt) == m
    g = generate("graph-forest", m, dim, seed)
    assert is_forest(g) and all(bin(e).count("1") == 2 for e in g.facets)


def test_single_facet_forest():
    d = generate("forest", 1, 2, seed=5)
    assert len(d) == 1


def test_seed_reproducible():
    for kind in ("forest", "codim1-tree", "linear-tree", "graph-forest"):
        a = serialize_complex(generate(kind, 6, 2, seed=42))
        b = serialize_complex(generate(kind, 6, 2, seed=42))
        assert a == b


def test_bad_parameters():
    with pytest.raises(PreconditionViolated):
        generate("forest", 13)
    with pytest.raises(PreconditionViolated):
        generate("spiral", 3)
    with pytest.raises(PreconditionViolated):
        random_graph_forest(0, 5, max_vertices=5)


def test_budget_exhaustion():
    # two vertices carry a single edge, so a second facet never fits
    with pytest.raises(GenerationExhausted):
        random_codim1_tree(0, 3, dim=1, max_vertices=2, budget=5)


def test_vertex_bound_respected():
    for seed in range(30):
        assert random_forest(seed, 7, max_dim=3, max_vertices=10).n <= 10
        assert random_graph_forest(seed, 8, max_vertices=12).n <= 12


def test_canonical_form_is_isomorphism_invariant():
    assert canonical_form(C("ab bc cd").facets) == canonical_form(C("xy zw yz").facets)
    assert canonical_form(C("ab bc cd").facets) != canonical_form(C("xa xb xc").facets)


def test_small_tree_enumeration():
    trees = enumerate_small_trees(3, 5)
    assert all(is_tree(t) for t in trees)
    keys = {canonical_form(t.facets) for t in trees}
    assert len(keys) == len(trees)
    # graph trees with 3 edges: path and star
    graphs = [t for t in trees if len(t) == 3 and all(bin(f).count("1") == 2 for f in t.facets)]
    assert len(graphs) == 2
