"""Simplicial complexes given by their facets.

A vertex set is stored as an ``int`` bitmask over the complex's universe of
named vertices, so intersections, unions and containment are single integer
operations.  Every function in this module takes faces and facets as such
masks; :meth:`SimplicialComplex.mask` and :meth:`SimplicialComplex.names`
translate to and from vertex names.

Subcomplexes (stars, links, facet subsets) keep the universe of the complex
they came from, so masks stay comparable between a complex and its pieces.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    CapacityExceeded,
    EmptyInput,
    NotAFace,
    NotAFacet,
    NotAntichain,
    PreconditionViolated,
    TooLarge,
)

MAX_VERTICES = 64
MAX_FOREST_FACETS = 20


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _union(masks: Iterable[int]) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


@dataclass(frozen=True)
class SimplicialComplex:
    """An antichain of facets over a named vertex universe.

    ``facets`` is sorted by bit pattern.  The universe may contain vertices
    that lie in no facet; these are the isolated vertices of subcomplexes
    and quotient complexes (see :meth:`isolated_vertices`).
    """

    universe: tuple
    facets: tuple

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, facet):
        return facet in self.facets

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def dim(self) -> int:
        return dimension(self)

    @property
    def vertex_mask(self) -> int:
        return _union(self.facets)

    def isolated_vertices(self) -> int:
        """Universe vertices that lie in no facet."""
        return ((1 << self.n) - 1) & ~self.vertex_mask

    def mask(self, names: Iterable) -> int:
        index = {v: i for i, v in enumerate(self.universe)}
        m = 0
        for v in names:
            try:
                m |= 1 << index[v]
            except KeyError:
                raise PreconditionViolated(f"vertex {v!r} not in universe") from None
        return m

    def names(self, mask: int) -> tuple:
        return tuple(self.universe[i] for i in iter_bits(mask))

    def label(self, mask: int) -> str:
        """Compact rendering of a face: ``abc`` for one-letter names, else ``{x1,x2}``."""
        names = self.names(mask)
        if all(len(str(v)) == 1 for v in self.universe):
            return "".join(str(v) for v in names) or "{}"
        return "{" + ",".join(str(v) for v in names) + "}"

    def subcomplex(self, facets: Iterable[int]) -> "SimplicialComplex":
        fs = tuple(sorted(set(facets)))
        for f in fs:
            if f not in self.facets:
                raise NotAFacet(f"{self.label(f)} is not a facet")
        return SimplicialComplex(self.universe, fs)

    def without(self, facet: int) -> "SimplicialComplex":
        _require_facet(self, facet)
        return SimplicialComplex(self.universe, tuple(f for f in self.facets if f != facet))

    def __str__(self):
        return "<" + ", ".join(self.label(f) for f in self.facets) + ">"


def _require_facet(delta: SimplicialComplex, facet: int):
    if facet not in delta.facets:
        raise NotAFacet(f"{delta.label(facet)} is not a facet of {delta}")


def _antichain_violations(masks: Sequence[int]):
    for f in masks:
        for g in masks:
            if f != g and f & g == f:
                yield f, g


def from_masks(universe: Sequence, masks: Iterable[int], normalize: bool = False) -> SimplicialComplex:
    """Build a complex from bitmask facets over ``universe``."""
    universe = tuple(universe)
    if len(universe) > MAX_VERTICES:
        raise CapacityExceeded(f"{len(universe)} vertices exceeds capacity {MAX_VERTICES}")
    fs = sorted(set(masks))
    if not fs:
        raise EmptyInput("a complex needs at least one facet")
    if fs[-1] >> len(universe):
        raise PreconditionViolated("facet outside the universe")
    bad = list(_antichain_violations(fs))
    if bad:
        if not normalize:
            f, g = bad[0]
            raise NotAntichain(f"face {f:#b} is contained in {g:#b}")
        dominated = {f for f, _ in bad}
        fs = [f for f in fs if f not in dominated]
    return SimplicialComplex(universe, tuple(fs))


def build_complex(facets: Iterable, universe: Sequence | None = None,
                  normalize: bool = False) -> SimplicialComplex:
    """Build a complex from facets given as vertex-name iterables (or masks).

    Without an explicit ``universe`` the vertices are indexed in order of
    first appearance.  Non-maximal faces raise :class:`NotAntichain` unless
    ``normalize`` is set, in which case they are dropped.
    """
    facets = list(facets)
    if not facets:
        raise EmptyInput("a complex needs at least one facet")
    if universe is None:
        seen: dict = {}
        for f in facets:
            if isinstance(f, int):
                raise PreconditionViolated("mask facets need an explicit universe")
            for v in f:
                seen.setdefault(v, len(seen))
        universe = tuple(seen)
    universe = tuple(universe)
    if len(universe) > MAX_VERTICES:
        raise CapacityExceeded(f"{len(universe)} vertices exceeds capacity {MAX_VERTICES}")
    index = {v: i for i, v in enumerate(universe)}
    masks = []
    for f in facets:
        if isinstance(f, int):
            masks.append(f)
            continue
        m = 0
        for v in f:
            if v not in index:
                raise PreconditionViolated(f"vertex {v!r} not in universe")
            m |= 1 << index[v]
        masks.append(m)
    return from_masks(universe, masks, normalize=normalize)


def dimension(delta: SimplicialComplex) -> int:
    return max(popcount(f) for f in delta.facets) - 1


def is_pure(delta: SimplicialComplex) -> bool:
    return len({popcount(f) for f in delta.facets}) == 1


# -- leaves ---------------------------------------------------------------

def universal_set(delta: SimplicialComplex, facet: int) -> list:
    """Facets G != F with F & H contained in F & G for every facet H != F."""
    _require_facet(delta, facet)
    others = [g for g in delta.facets if g != facet]
    shared = facet & _union(others)
    return [g for g in others if facet & g == shared]


def is_leaf(delta: SimplicialComplex, facet: int) -> bool:
    _require_facet(delta, facet)
    return len(delta.facets) == 1 or bool(universal_set(delta, facet))


def free_vertices(delta: SimplicialComplex, facet: int) -> int:
    _require_facet(delta, facet)
    return facet & ~_union(g for g in delta.facets if g != facet)


def leaves(delta: SimplicialComplex) -> list:
    return [f for f in delta.facets if is_leaf(delta, f)]


def _has_leaf(fs: Sequence[int]) -> bool:
    k = len(fs)
    if k <= 1:
        return True
    prefix = [0] * (k + 1)
    for i, f in enumerate(fs):
        prefix[i + 1] = prefix[i] | f
    suffix = 0
    for i in range(k - 1, -1, -1):
        f = fs[i]
        shared = f & (prefix[i] | suffix)
        suffix |= f
        for j, g in enumerate(fs):
            if j != i and f & g == shared:
                return True
    return False


# -- star and link --------------------------------------------------------

def is_face(delta: SimplicialComplex, face: int) -> bool:
    return any(face & f == face for f in delta.facets)


def star(delta: SimplicialComplex, face: int) -> SimplicialComplex:
    if not is_face(delta, face):
        raise NotAFace(f"{delta.label(face)} is not a face of {delta}")
    return SimplicialComplex(delta.universe, tuple(f for f in delta.facets if face & f == face))


def link(delta: SimplicialComplex, face: int) -> SimplicialComplex:
    st = star(delta, face)
    return SimplicialComplex(delta.universe, tuple(sorted(f & ~face for f in st.facets)))


# -- connectivity ---------------------------------------------------------

def components(delta: SimplicialComplex) -> list:
    """Connected components, each as a subcomplex."""
    fs = delta.facets
    parent = list(range(len(fs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(fs)), 2):
        if fs[i] & fs[j]:
            parent[find(i)] = find(j)
    groups: dict = {}
    for i, f in enumerate(fs):
        groups.setdefault(find(i), []).append(f)
    return [SimplicialComplex(delta.universe, tuple(g)) for g in
            sorted(groups.values(), key=lambda g: g[0])]


def is_connected(delta: SimplicialComplex) -> bool:
    return len(components(delta)) == 1


def is_proper_step(f: int, g: int) -> bool:
    """``f, g`` may be consecutive in a proper chain: they meet and dim(f & g) = dim g - 1."""
    return f != g and bool(f & g) and popcount(g & ~f) == 1


def is_chain(seq: Sequence[int], proper: bool = False) -> bool:
    """Consecutive facets meet (proper: and each step is a proper step)."""
    step = is_proper_step if proper else (lambda f, g: bool(f & g))
    return all(step(f, g) for f, g in zip(seq, seq[1:]))


def is_irredundant_chain(seq: Sequence[int], proper: bool = False) -> bool:
    """A chain none of whose shorter subsequences with the same ends is again a chain.

    Checked by brute force over subsets of the interior, so only meant for
    short chains.
    """
    if not is_chain(seq, proper):
        return False
    inner = list(seq[1:-1])
    for keep in range(len(inner)):
        for sub in combinations(inner, keep):
            if is_chain([seq[0], *sub, seq[-1]], proper):
                return False
    return True


def _proper_successors(delta: SimplicialComplex) -> dict:
    fs = delta.facets
    return {f: [g for g in fs if is_proper_step(f, g)] for f in fs}


def _proper_bfs(succ: dict, source: int) -> dict:
    """Length of the shortest proper chain from ``source`` to each reachable facet."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        f = queue.popleft()
        for g in succ[f]:
            if g not in dist:
                dist[g] = dist[f] + 1
                queue.append(g)
    return dist


def is_connected_codim1(delta: SimplicialComplex) -> bool:
    """Every pair F, G with dim F >= dim G is joined by a proper chain from F."""
    succ = _proper_successors(delta)
    for f in delta.facets:
        reach = _proper_bfs(succ, f)
        for g in delta.facets:
            if popcount(f) >= popcount(g) and g not in reach:
                return False
    return True


def irredundant_proper_chains(delta: SimplicialComplex, start: int, end: int) -> list:
    """All irredundant proper chains from ``start`` to ``end``, as tuples of facets.

    A path is extended by X only if no earlier facet of the path has a proper
    step to X; otherwise dropping the facets in between would leave a proper
    subchain.  This makes every completed path irredundant, and conversely.
    """
    _require_facet(delta, start)
    _require_facet(delta, end)
    if start == end:
        return [(start,)]
    succ = _proper_successors(delta)
    found = []
    path = [start]

    def extend():
        last = path[-1]
        for x in succ[last]:
            if x in path:
                continue
            if any(is_proper_step(p, x) for p in path[:-1]):
                continue
            path.append(x)
            if x == end:
                found.append(tuple(path))
            else:
                extend()
            path.pop()

    extend()
    return found


# -- forests, quasi-forests, trees ----------------------------------------

def _leaf_order_component(fs: tuple):
    """Leaf order of one connected component by backtracking leaf removal."""
    failed = set()
    full = (1 << len(fs)) - 1

    def search(state):
        # state: bitmask over indices of fs still present
        if state & (state - 1) == 0:
            return [fs[state.bit_length() - 1]]
        if state in failed:
            return None
        present = [i for i in iter_bits(state)]
        sub = [fs[i] for i in present]
        for i in present:
            f = fs[i]
            others = [g for g in sub if g != f]
            shared = f & _union(others)
            if any(f & g == shared for g in others):
                rest = search(state & ~(1 << i))
                if rest is not None:
                    return rest + [f]
        failed.add(state)
        return None

    return search(full)


def leaf_order(delta: SimplicialComplex):
    """A leaf order of the facets, built per component, or None if there is none."""
    order = []
    for comp in components(delta):
        part = _leaf_order_component(comp.facets)
        if part is None:
            return None
        order.extend(part)
    return order


def is_quasi_forest(delta: SimplicialComplex) -> bool:
    return leaf_order(delta) is not None


def is_quasi_tree(delta: SimplicialComplex) -> bool:
    return is_connected(delta) and is_quasi_forest(delta)


def find_leafless_subcomplex(delta: SimplicialComplex, max_facets: int = MAX_FOREST_FACETS):
    """Smallest set of facets spanning a subcomplex without a leaf, or None.

    A minimal leafless subcomplex is connected (a component with a leaf
    hands that leaf to the whole), so only connected facet subsets are
    generated, level by level in increasing size.
    """
    fs = delta.facets
    m = len(fs)
    if m > max_facets:
        raise TooLarge(f"{m} facets exceeds the forest-test bound {max_facets}")
    nbrs = [sum(1 << j for j in range(m) if j != i and fs[i] & fs[j]) for i in range(m)]
    level = {1 << i for i in range(m)}
    for size in range(2, m + 1):
        nxt = set()
        for s in level:
            reach = 0
            for i in iter_bits(s):
                reach |= nbrs[i]
            reach &= ~s
            for j in iter_bits(reach):
                nxt.add(s | (1 << j))
        if size >= 3:
            for s in sorted(nxt):
                if not _has_leaf([fs[i] for i in iter_bits(s)]):
                    return tuple(fs[i] for i in iter_bits(s))
        level = nxt
        if not level:
            break
    return None


def is_forest(delta: SimplicialComplex, max_facets: int = MAX_FOREST_FACETS) -> bool:
    return find_leafless_subcomplex(delta, max_facets) is None


def is_tree(delta: SimplicialComplex, max_facets: int = MAX_FOREST_FACETS) -> bool:
    return is_connected(delta) and is_forest(delta, max_facets)


# -- distances --------------------------------------------------------------

def _check_distance_domain(delta: SimplicialComplex):
    if not is_pure(delta):
        raise PreconditionViolated("distance needs a pure complex")
    if not is_forest(delta):
        raise PreconditionViolated("distance needs a forest")
    if not all(is_connected_codim1(c) for c in components(delta)):
        raise PreconditionViolated("distance needs components connected in codimension 1")


def _pair_distances(delta: SimplicialComplex) -> dict:
    """Shortest proper chain lengths between all facet pairs (inf if none).

    In a pure tree connected in codimension 1 the irredundant proper chain
    between two facets is unique, so the shortest one is it.
    """
    succ = _proper_successors(delta)
    out = {}
    for f in delta.facets:
        reach = _proper_bfs(succ, f)
        for g in delta.facets:
            out[f, g] = reach.get(g, math.inf)
    return out


def distance(delta: SimplicialComplex, f: int, g: int):
    """Length of the unique irredundant proper chain from f to g; inf across components."""
    _require_facet(delta, f)
    _require_facet(delta, g)
    _check_distance_domain(delta)
    return _proper_bfs(_proper_successors(delta), f).get(g, math.inf)


def diameter(delta: SimplicialComplex) -> int:
    _check_distance_domain(delta)
    return max(d for d in _pair_distances(delta).values() if d != math.inf)


# -- intersection property and (d-1)-faces --------------------------------

def has_intersection_property(delta: SimplicialComplex) -> bool:
    """dist(F, G) = k whenever dim(F & G) = d - k, for all facet pairs."""
    if not is_pure(delta):
        raise PreconditionViolated("intersection property needs a pure complex")
    if not is_connected_codim1(delta):
        raise PreconditionViolated("intersection property needs codimension-1 connectivity")
    size = dimension(delta) + 1
    dist = _pair_distances(delta)
    for f, g in combinations(delta.facets, 2):
        if dist[f, g] != size - popcount(f & g):
            return False
    return True


def adjacent_faces(delta: SimplicialComplex) -> list:
    """All (d-1)-faces with the number of facets containing them.

    Faces of degree at least 2 are the adjacent faces.
    """
    if not is_pure(delta):
        raise PreconditionViolated("adjacent faces need a pure complex")
    degree: dict = {}
    for f in delta.facets:
        if f == 0:
            continue
        for i in iter_bits(f):
            face = f & ~(1 << i)
            degree[face] = degree.get(face, 0) + 1
    return sorted(degree.items())
