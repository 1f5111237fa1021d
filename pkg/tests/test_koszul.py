import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetres import (
    GF,
    QQ,
    betti_number,
    betti_table,
    class_product_nonzero,
    facet_ideal,
    ideal,
    is_cycle,
    is_linear_resolution,
    koszul_differential,
    lcm_lattice,
    make_chain,
    monomial_cycle,
    monomial_cycle_basis,
    monomial_cycle_report,
    reg_pd,
    verify_linear_generation,
    wedge,
)
from facetres.errors import NotACycle, PreconditionViolated
from facetres.koszul import koszul_component_basis
from facetres.generate import random_forest, random_graph_forest

from _util import C, M, hochster_betti

V6 = tuple("abcdef")


def _m(word):
    return sum(1 << V6.index(ch) for ch in word)


def graded(I, field=QQ):
    return betti_table(I, field).graded()


def test_component_basis_examples():
    I = ideal(V6, [_m("ab")])
    assert sorted(koszul_component_basis(I, 1, _m("ab"))) == sorted([(_m("a"), _m("b")), (_m("b"), _m("a"))])
    assert koszul_component_basis(I, 0, _m("ab")) == []
    J = ideal(V6, [_m("ab"), _m("bc")])
    assert koszul_component_basis(J, 1, _m("abc")) == [(_m("ac"), _m("b"))]


def test_small_tables():
    assert graded(facet_ideal(C("ab bc"))) == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    star = graded(facet_ideal(C("xa xb xc")))
    assert [star[i, i + 1] for i in (1, 2, 3)] == [math.comb(3, i) for i in (1, 2, 3)]
    assert graded(facet_ideal(C("abcd"))) == {(0, 0): 1, (1, 4): 1}


def test_reg_pd_examples():
    assert reg_pd(betti_table(facet_ideal(C("ab bc")))) == (1, 2)
    assert reg_pd(betti_table(facet_ideal(C("ab bc cd de ea"))))[0] == 2
    assert reg_pd(betti_table(facet_ideal(C("abcd")))) == (3, 1)


def test_linear_resolution_examples():
    I = facet_ideal(C("ab bc"))
    assert is_linear_resolution(I, betti_table(I))
    P = facet_ideal(C("ab bc cd de"))
    t = betti_table(P)
    assert t.beta(2, 4) != 0 and not is_linear_resolution(P, t)
    S = facet_ideal(C("abc"))
    assert is_linear_resolution(S, betti_table(S))


def test_unit_ideal_rejected():
    with pytest.raises(PreconditionViolated):
        betti_table(ideal(V6, [0]))


def test_differential_examples():
    I = ideal(V6, [_m("ab")])
    e_a = make_chain(I, _m("a"), {_m("a"): 1})
    assert koszul_differential(e_a).terms == {0: 1}
    e_b = make_chain(ideal(V6, [_m("b")]), _m("b"), {_m("b"): 1})
    assert koszul_differential(e_b).is_zero()
    star = C("xa xb xc")
    z = monomial_cycle(facet_ideal(star), M(star, "x"), M(star, "abc"))
    assert is_cycle(z) and koszul_differential(z).is_zero()


@st.composite
def random_chain(draw):
    gens = draw(st.lists(st.integers(1, 63), min_size=1, max_size=5))
    I = ideal(V6, gens)
    a = draw(st.integers(0, 63))
    size = bin(a).count("1")
    i = draw(st.integers(0, size))
    basis = koszul_component_basis(I, i, a)
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(basis), max_size=len(basis)))
    return make_chain(I, a, {L: c for (_, L), c in zip(basis, coeffs)}, degree=i)


@settings(max_examples=300, deadline=None)
@given(random_chain())
def test_d_squared_is_zero(z):
    assert koszul_differential(koszul_differential(z)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 63), min_size=1, max_size=5))
def test_oracle_matches_hochster(gens):
    I = ideal(V6, gens)
    if I.is_unit:
        return
    table = betti_table(I)
    for a in range(64):
        for i in range(0, bin(a).count("1") + 1):
            assert table[i, a] == hochster_betti(I.generators, a, i)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 63), min_size=1, max_size=5))
def test_support_in_lcm_lattice(gens):
    I = ideal(V6, gens)
    lattice = set(lcm_lattice(I))
    for a in range(64):
        if a not in lattice:
            assert all(betti_number(I, i, a) == 0 for i in range(7))
    t = betti_table(I)
    g = I.min_degree
    assert all(j - i >= g - 1 for (i, j) in t.graded() if i >= 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_forest_tables_field_independent(seed, m):
    I = facet_ideal(random_forest(seed, m, max_dim=3, max_vertices=10))
    assert betti_table(I, QQ).entries == betti_table(I, GF(2)).entries


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 31), min_size=1, max_size=4), st.integers(1, 31), st.integers(0, 4))
def test_short_exact_sequence_counts(gens, f, t):
    # f gets the variable t that no generator of J uses; shift everything off t
    J_gens = [(g & ~(1 << t)) for g in gens]
    J = ideal(V6, [g for g in J_gens if g] or [1 << 5])
    if any(g >> t & 1 for g in J):
        return
    f = f | (1 << t)
    if J.contains(f):
        return
    I = ideal(V6, list(J) + [f])
    bI, bJ = betti_table(I), betti_table(J)
    colon = ideal(V6, [g & ~f for g in J])
    bC = betti_table(colon)
    for a in range(64):
        for i in range(1, 7):
            shifted = bC[i - 1, a & ~f] if a & f == f else 0
            assert bI[i, a] == bJ[i, a] + shifted
    # every shifted Betti degree of the colon contains the variable t
    for (i, a) in bC.entries:
        assert a & f == 0 and (a | f) >> t & 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 15), min_size=1, max_size=4), st.lists(st.integers(1, 63), max_size=2))
def test_injective_monotonicity(base, extra):
    # each added generator owns a fresh variable (4 or 5)
    small = ideal(V6, base)
    gens = list(small)
    for k, e in enumerate(extra):
        gens.append((e & 15) | (1 << (4 + k)))
    big = ideal(V6, gens)
    if len(big) != len(small) + len(extra):
        return
    tb, ts = betti_table(big), betti_table(small)
    assert all(tb[i, a] >= v for (i, a), v in ts.entries.items() if i > 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 15), min_size=1, max_size=4), st.integers(1, 2))
def test_regular_variables_shift(base, s):
    L = ideal(V6, base)
    gens = list(L) + [1 << (4 + k) for k in range(s)]
    tL = betti_table(L).graded()
    tI = betti_table(ideal(V6, gens)).graded()
    expected = dict(tL)
    for _ in range(s):
        nxt = dict(expected)
        for (i, j), v in expected.items():
            nxt[i + 1, j + 1] = nxt.get((i + 1, j + 1), 0) + v
        expected = nxt
    assert tI == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 63), min_size=1, max_size=6))
def test_linear_strand_of_variables(gens):
    I = ideal(V6, gens)
    if I.is_unit:
        return
    s = sum(1 for g in I if bin(g).count("1") == 1)
    t = betti_table(I)
    assert all(t.beta(i, i) == math.comb(s, i) for i in range(1, 7))


def test_monomial_cycles_on_four_cycle():
    sq = C("ab bc cd da")
    I = facet_ideal(sq)
    rep = monomial_cycle_report(I, 3, sq.vertex_mask)
    assert rep.betti == 1 and rep.rank == 0 and not rep.spans
    # the non-monomial cycle x1 e234 + x3 e124 from the classical example
    z = make_chain(I, sq.vertex_mask, {M(sq, "bcd"): 1, M(sq, "abd"): 1})
    assert is_cycle(z)
    assert class_product_nonzero(I, [z])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_monomial_cycles_span_on_forests(seed, m):
    I = facet_ideal(random_forest(seed, m, max_dim=2, max_vertices=9))
    top = max(i for i, _ in betti_table(I).entries)
    for r in range(1, top + 1):
        assert all(rep.spans for rep in monomial_cycle_basis(I, r).values())


def test_degree_zero_monomial_cycles():
    I = facet_ideal(C("ab bc"))
    reps = monomial_cycle_basis(I, 0)
    assert reps[0].betti == 1 and reps[0].spans


def test_products():
    d = C("ab cd")
    I = facet_ideal(d)
    z1 = monomial_cycle(I, M(d, "b"), M(d, "a"))
    z2 = monomial_cycle(I, M(d, "d"), M(d, "c"))
    assert class_product_nonzero(I, [z1, z2])
    p = C("ab bc cd")
    J = facet_ideal(p)
    y1 = monomial_cycle(J, M(p, "b"), M(p, "a"))
    y2 = monomial_cycle(J, M(p, "d"), M(p, "c"))
    assert not class_product_nonzero(J, [y1, y2])
    assert not class_product_nonzero(I, [z1, z1])
    assert wedge(z1, z1) is None


def test_product_rejects_non_cycles():
    d = C("ab cd")
    I = facet_ideal(d)
    not_cycle = make_chain(I, M(d, "a"), {M(d, "a"): 1})
    with pytest.raises(NotACycle):
        class_product_nonzero(I, [not_cycle])


def test_linear_generation_examples():
    assert verify_linear_generation(facet_ideal(C("xa xb xc")))
    assert verify_linear_generation(facet_ideal(C("ab")))
    with pytest.raises(PreconditionViolated):
        verify_linear_generation(facet_ideal(C("ab bc ca")))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_linear_generation_on_graph_forests(seed, m):
    d = random_graph_forest(seed, m, max_vertices=9)
    assert verify_linear_generation(facet_ideal(d))


def test_table_render_blanks_zeros():
    out = betti_table(facet_ideal(C("ab bc"))).render().splitlines()
    assert out[0].split() == ["i\\j", "0", "1", "2", "3"]
    assert out[2].split() == ["1", "2"]
