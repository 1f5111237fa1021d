"""Betti numbers of facet ideals of forests without computing homology.

The multigraded table comes from splitting off a leaf F with a free
vertex: for J generated by the other facets,

    b_{i,a}(R/I) = b_{i,a}(R/J) + b_{i-1,a-f}(R/(J : f)),

and J : f is again the facet ideal of a forest.  Degree-one generators of
a colon are regular variables on the rest and are split off as a Koszul
tensor factor, b_{i,a} += b_{i-1,a-x}.

The remaining functions are closed forms: the linear strand of a pure
tree connected in codimension 1, the Betti numbers of linear trees,
regularity (largest induced matching) and projective dimension (bouquet
families) of edge ideals of forests, and alternating strand sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .complex import (
    SimplicialComplex,
    _pair_distances,
    adjacent_faces,
    components,
    dimension,
    from_masks,
    has_intersection_property,
    is_connected_codim1,
    is_forest,
    is_pure,
    is_tree,
    iter_bits,
    popcount,
)
from .errors import (
    NotAdjacentFace,
    NotAForest,
    NotATree,
    NotLinearTree,
    PreconditionViolated,
    VertexClash,
)
from .ideal import SqfIdeal, minimal_generators
from .koszul import BettiTable, KoszulChain, monomial_cycle
from .linalg import QQ, FieldSpec

MAX_BRUTE_FORCE_EDGES = 24


# -- leaf recursion -----------------------------------------------------------

def _tensor_variable(table: dict, x: int) -> dict:
    out = dict(table)
    for (i, a), v in table.items():
        key = (i + 1, a | x)
        out[key] = out.get(key, 0) + v
    return out


def _pick_leaf(gens: tuple) -> int:
    for f in gens:
        others = [g for g in gens if g != f]
        shared = 0
        for g in others:
            shared |= f & g
        if any(f & g == shared for g in others):
            return f
    raise NotAForest("subcomplex without a leaf reached in the recursion")


@lru_cache(maxsize=65536)
def _recursive(gens: tuple) -> dict:
    if not gens:
        return {(0, 0): 1}
    variables = [g for g in gens if popcount(g) == 1]
    if variables:
        table = _recursive(tuple(g for g in gens if popcount(g) > 1))
        for x in variables:
            table = _tensor_variable(table, x)
        return table
    if len(gens) == 1:
        return {(0, 0): 1, (1, gens[0]): 1}
    f = _pick_leaf(gens)
    rest = tuple(g for g in gens if g != f)
    out = dict(_recursive(rest))
    for (i, a), v in _recursive(minimal_generators(g & ~f for g in rest)).items():
        key = (i + 1, a | f)
        out[key] = out.get(key, 0) + v
    return out


def recursive_betti(delta: SimplicialComplex) -> BettiTable:
    """Multigraded Betti table of R/I(delta) by leaf recursion; delta must be a forest."""
    if not is_forest(delta):
        raise NotAForest(f"{delta} is not a forest")
    return BettiTable(delta.universe, dict(_recursive(delta.facets)))


# -- pure trees connected in codimension 1 ------------------------------------

def _require_pure_codim1_tree(delta: SimplicialComplex):
    if not is_pure(delta):
        raise PreconditionViolated(f"{delta} is not pure")
    if not is_tree(delta):
        raise PreconditionViolated(f"{delta} is not a tree")
    if not is_connected_codim1(delta):
        raise PreconditionViolated(f"{delta} is not connected in codimension 1")


def _binomial_sums(delta: SimplicialComplex) -> dict:
    degrees = [deg for _, deg in adjacent_faces(delta)]
    out = {1: len(delta)}
    for i in range(2, max(degrees, default=0) + 1):
        out[i] = sum(math.comb(deg, i) for deg in degrees)
    return out


def linear_strand_betti(delta: SimplicialComplex) -> dict:
    """``{i: b_{i,i+d}}``: m for i = 1, else the sum of C(m(G), i) over adjacent faces G."""
    _require_pure_codim1_tree(delta)
    return _binomial_sums(delta)


def second_betti_formula(delta: SimplicialComplex) -> int:
    """b_{2,3} of a graph tree as the sum over vertices of C(deg v, 2)."""
    if dimension(delta) != 1 or not is_pure(delta) or not is_tree(delta):
        raise PreconditionViolated("needs a 1-dimensional tree")
    deg: dict = {}
    for e in delta.facets:
        for v in iter_bits(e):
            deg[v] = deg.get(v, 0) + 1
    return sum(math.comb(k, 2) for k in deg.values())


def classify_linear_tree(delta: SimplicialComplex) -> bool:
    """A tree is linear exactly when it has the intersection property."""
    if not is_tree(delta):
        raise NotATree(f"{delta} is not a tree")
    if not is_pure(delta) or not is_connected_codim1(delta):
        return False
    return has_intersection_property(delta)


def linear_tree_total_betti(delta: SimplicialComplex) -> dict:
    """``{i: b_i(R/I)}`` for i >= 1 of a linear tree."""
    if not classify_linear_tree(delta):
        raise NotLinearTree(f"{delta} is not a linear tree")
    return _binomial_sums(delta)


@dataclass(frozen=True)
class StructuralCounts:
    facets: int
    faces: int
    total_degree: int

    @property
    def identity_holds(self) -> bool:
        return self.facets - 1 == self.total_degree - self.faces


def structural_counts(delta: SimplicialComplex) -> StructuralCounts:
    """Facet count m, number |V| of (d-1)-faces and O, the sum of their degrees."""
    _require_pure_codim1_tree(delta)
    faces = adjacent_faces(delta)
    return StructuralCounts(len(delta), len(faces), sum(d for _, d in faces))


@dataclass(frozen=True)
class DistanceReport:
    """Per unordered facet pair: (F, G, k, dist) with dim(F & G) = d - k."""

    pairs: tuple

    @property
    def lower_bound_holds(self) -> bool:
        return all(dist >= k for _, _, k, dist in self.pairs)

    @property
    def all_equal(self) -> bool:
        return all(dist == k for _, _, k, dist in self.pairs)


def distance_property_check(delta: SimplicialComplex) -> DistanceReport:
    _require_pure_codim1_tree(delta)
    size = dimension(delta) + 1
    dist = _pair_distances(delta)
    pairs = tuple((f, g, size - popcount(f & g), dist[f, g])
                  for f, g in combinations(delta.facets, 2))
    return DistanceReport(pairs)


def attach_facet_linear(delta: SimplicialComplex, face: int, fresh: Sequence) -> SimplicialComplex:
    """Add the facet ``face + {v}`` for one new vertex v at an adjacent face."""
    fresh = list(fresh)
    if len(fresh) != 1:
        raise PreconditionViolated("exactly one fresh vertex is attached")
    if fresh[0] in delta.universe:
        raise VertexClash(f"vertex {fresh[0]!r} already exists")
    if not classify_linear_tree(delta):
        raise NotLinearTree(f"{delta} is not a linear tree")
    degree = dict(adjacent_faces(delta))
    if degree.get(face, 0) < 2:
        raise NotAdjacentFace(f"{delta.label(face)} is not an adjacent face")
    universe = delta.universe + (fresh[0],)
    return from_masks(universe, delta.facets + (face | (1 << (len(universe) - 1)),))


# -- edge ideals of forests ---------------------------------------------------

def _require_graph_forest(delta: SimplicialComplex):
    if any(popcount(f) != 2 for f in delta.facets):
        raise NotAForest(f"{delta} is not a 1-dimensional forest: some facet is not an edge")
    if not is_forest(delta):
        raise NotAForest(f"{delta} is not a forest")


def _adjacency(delta: SimplicialComplex) -> dict:
    nb: dict = {}
    for e in delta.facets:
        u, v = iter_bits(e)
        nb[u] = nb.get(u, 0) | (1 << v)
        nb[v] = nb.get(v, 0) | (1 << u)
    return nb


def edges_disconnected(delta: SimplicialComplex, e: int, f: int) -> bool:
    """Disjoint edges with no edge of delta between them."""
    if e & f:
        return False
    span = e | f
    return all(g in (e, f) or g & span != g for g in delta.facets)


def max_disconnected_edges_brute(delta: SimplicialComplex) -> tuple:
    """Largest set of pairwise disconnected edges by branch and bound."""
    edges = list(delta.facets)
    m = len(edges)
    ok = [[edges_disconnected(delta, edges[i], edges[j]) for j in range(m)] for i in range(m)]
    best: list = []

    def grow(chosen, start):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for j in range(start, m):
            if len(chosen) + (m - j) <= len(best):
                return
            if all(ok[i][j] for i in chosen):
                chosen.append(j)
                grow(chosen, j + 1)
                chosen.pop()

    grow([], 0)
    return tuple(edges[i] for i in best)


def max_disconnected_edges_dp(delta: SimplicialComplex) -> int:
    """Largest induced matching of a forest by dynamic programming over rooted trees.

    unmatched[v]: best in the subtree with v in no chosen edge.
    down[v]: best with v matched to one of its children.
    """
    nb = _adjacency(delta)
    seen = set()
    total = 0
    for root in sorted(nb):
        if root in seen:
            continue
        order, parent = [], {root: None}
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            order.append(v)
            for w in iter_bits(nb[v]):
                if w not in seen:
                    seen.add(w)
                    parent[w] = v
                    stack.append(w)
        unmatched, down, below = {}, {}, {}
        for v in reversed(order):
            kids = [w for w in iter_bits(nb[v]) if parent.get(w) == v]
            below[v] = sum(unmatched[c] for c in kids)
            unmatched[v] = sum(max(unmatched[c], down[c]) for c in kids)
            down[v] = max((1 + below[c] + below[v] - unmatched[c] for c in kids),
                          default=-math.inf)
        total += max(unmatched[root], down[root])
    return total


def reg_1dim(delta: SimplicialComplex) -> int:
    """Regularity of R/I for a graph forest: the most pairwise disconnected edges."""
    _require_graph_forest(delta)
    if len(delta) <= MAX_BRUTE_FORCE_EDGES:
        return len(max_disconnected_edges_brute(delta))
    return max_disconnected_edges_dp(delta)


@dataclass(frozen=True)
class Bouquet:
    """Star subgraph with a root vertex and a nonempty set of flowers (bitmasks over the universe)."""

    root: int
    flowers: int

    @property
    def vertices(self) -> int:
        return self.flowers | (1 << self.root)

    @property
    def size(self) -> int:
        return popcount(self.flowers)

    def stems(self) -> list:
        return [(1 << self.root) | (1 << y) for y in iter_bits(self.flowers)]


def enumerate_bouquets(delta: SimplicialComplex) -> list:
    """Every bouquet (x; S) with S a nonempty set of neighbours of x."""
    if dimension(delta) != 1:
        raise PreconditionViolated("bouquets live in 1-dimensional complexes")
    nb = _adjacency(delta)
    out = []
    for x in sorted(nb):
        avail = nb[x]
        sub = avail
        while sub:
            out.append(Bouquet(x, sub))
            sub = (sub - 1) & avail
    return out


def _pair_ok(nb: dict, b: Bouquet, c: Bouquet) -> bool:
    return not (b.vertices & c.vertices) and not (nb.get(b.root, 0) >> c.root & 1)


def _flower_free(nb: dict, b: Bouquet, roots: int) -> bool:
    return any(not (nb.get(y, 0) & roots) for y in iter_bits(b.flowers))


def valid_bouquet_family(delta: SimplicialComplex, family: Sequence[Bouquet]) -> bool:
    """Distinct vertices, no edge between two roots, and every bouquet keeps a
    flower adjacent to no other root."""
    nb = _adjacency(delta)
    if any(b.flowers == 0 or b.flowers & ~nb.get(b.root, 0) for b in family):
        return False
    for b, c in combinations(family, 2):
        if not _pair_ok(nb, b, c):
            return False
    for i, b in enumerate(family):
        roots = 0
        for j, c in enumerate(family):
            if j != i:
                roots |= 1 << c.root
        if not _flower_free(nb, b, roots):
            return False
    return True


def max_bouquet_family(delta: SimplicialComplex) -> tuple:
    """(total flower count, family) maximal over valid bouquet families.

    Validity is inherited by subfamilies, so the search only extends valid
    families; bouquets are tried by decreasing flower count and a branch is
    cut when the unused vertices cannot beat the best total.
    """
    nb = _adjacency(delta)
    bouquets = sorted(enumerate_bouquets(delta), key=lambda b: (-b.size, b.root, b.flowers))
    all_vertices = delta.vertex_mask
    best = (0, ())

    def extend(family, used, roots, score, start):
        nonlocal best
        if score > best[0]:
            best = (score, tuple(family))
        if score + max(0, popcount(all_vertices & ~used) - 1) <= best[0]:
            return
        for k in range(start, len(bouquets)):
            b = bouquets[k]
            if b.vertices & used or nb.get(b.root, 0) & roots:
                continue
            new_roots = roots | (1 << b.root)
            if not _flower_free(nb, b, roots):
                continue
            if not all(_flower_free(nb, c, new_roots & ~(1 << c.root)) for c in family):
                continue
            family.append(b)
            extend(family, used | b.vertices, new_roots, score + b.size, k + 1)
            family.pop()

    extend([], 0, 0, 0, 0)
    return best


def pd_1dim(delta: SimplicialComplex) -> int:
    """Projective dimension of R/I for a graph forest: the best valid bouquet family."""
    _require_graph_forest(delta)
    return max_bouquet_family(delta)[0]


def valid_with_stems(delta: SimplicialComplex, family: Sequence[Bouquet]) -> bool:
    """Conditions (a), (b), (c) together with a pairwise disconnected stem choice.

    Conditions (a)-(c) alone do not force the product of the bouquet
    classes to be nonzero: in the path a-b-c-d-e the family (a; b), (d; c)
    satisfies them, yet its stems ab and cd are joined by bc and the
    product is a boundary.  Adding the stem condition gives the
    characterization that matches Koszul homology.
    """
    return valid_bouquet_family(delta, family) and pick_stems(delta, family) is not None


def bouquet_cycle(I: SqfIdeal, b: Bouquet, field: FieldSpec = QQ) -> KoszulChain:
    """The linear cycle x_root e_flowers of a bouquet."""
    return monomial_cycle(I, 1 << b.root, b.flowers, field)


def pick_stems(delta: SimplicialComplex, family: Sequence[Bouquet]):
    """One stem per bouquet with the chosen stems pairwise disconnected, or None."""
    for choice in product(*(b.stems() for b in family)):
        if all(edges_disconnected(delta, e, f) for e, f in combinations(choice, 2)):
            return list(choice)
    return None


# -- alternating sums ---------------------------------------------------------

def strand_sums(table: BettiTable, start: int = 1) -> dict:
    """``{j: sum over i >= start of (-1)^i b_{i,i+j}}`` for every strand j >= 0."""
    out: dict = {}
    for (i, j), v in table.graded().items():
        if i >= start:
            out[j - i] = out.get(j - i, 0) + (-1) ** i * v
    top = max(out, default=-1)
    return {j: out.get(j, 0) for j in range(top + 1)}


def has_alternating_sum_property(table: BettiTable, g: int) -> bool:
    """S_{g-1} = -1 and S_j = 0 above it, with g the least generator degree."""
    sums = strand_sums(table)
    return sums.get(g - 1, 0) == -1 and all(v == 0 for j, v in sums.items() if j > g - 1)


def find_main_order(delta: SimplicialComplex):
    """Facet order where each later facet brings a new vertex and has an earlier
    facet F_j with |F_j - F_i| = 1; None if there is none."""
    fs = delta.facets
    m = len(fs)
    full = (1 << m) - 1
    failed = set()

    def search(state, covered):
        if state == full:
            return []
        if state in failed:
            return None
        placed = [fs[k] for k in iter_bits(state)]
        for i in range(m):
            if state >> i & 1:
                continue
            f = fs[i]
            if state and (not f & ~covered or not any(popcount(p & ~f) == 1 for p in placed)):
                continue
            rest = search(state | (1 << i), covered | f)
            if rest is not None:
                return [f] + rest
        failed.add(state)
        return None

    return search(0, 0)
