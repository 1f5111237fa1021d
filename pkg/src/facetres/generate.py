"""Seeded random complexes of a requested kind, plus small exhaustive corpora.

Every random generator draws from its own ``random.Random(seed)`` and is
generate-then-verify: candidates that fail the kind's check are thrown
away, and GenerationExhausted is raised when the retry budget runs out.
"""

from __future__ import annotations

import random
import string
from functools import lru_cache
from itertools import combinations, permutations

from .complex import (
    SimplicialComplex,
    adjacent_faces,
    from_masks,
    has_intersection_property,
    is_connected_codim1,
    is_forest,
    is_tree,
    iter_bits,
    popcount,
)
from .errors import GenerationExhausted, PreconditionViolated

KINDS = ("forest", "codim1-tree", "linear-tree", "graph-forest")
MAX_GEN_FACETS = 12
MAX_GEN_VERTICES = 64
DEFAULT_BUDGET = 200


def vertex_names(n: int) -> tuple:
    """a, b, ..., z and then x26, x27, ..."""
    letters = string.ascii_lowercase
    return tuple(letters[i] if i < 26 else f"x{i}" for i in range(n))


def _finish(masks: list, n_used: int) -> SimplicialComplex:
    return from_masks(vertex_names(n_used), masks, normalize=True)


def _is_antichain(masks) -> bool:
    return all(f & g not in (f, g) for f, g in combinations(masks, 2))


def _random_subset(rng: random.Random, mask: int, lo: int = 1, hi=None) -> int:
    bits = list(iter_bits(mask))
    hi = len(bits) if hi is None else min(hi, len(bits))
    k = rng.randint(lo, hi)
    out = 0
    for b in rng.sample(bits, k):
        out |= 1 << b
    return out


def _check_params(facets: int, max_vertices: int):
    if not 1 <= facets <= MAX_GEN_FACETS:
        raise PreconditionViolated(f"facets must be in 1..{MAX_GEN_FACETS}")
    if max_vertices > MAX_GEN_VERTICES:
        raise PreconditionViolated(f"at most {MAX_GEN_VERTICES} vertices")


def random_forest(seed, facets: int, max_dim: int = 3, max_vertices: int = 10,
                  budget: int = DEFAULT_BUDGET, connected: bool = False) -> SimplicialComplex:
    """Forest with ``facets`` facets of mixed dimension at most ``max_dim``.

    New facets are a subset of an existing facet (or of the union of two
    meeting facets, now and then) plus fresh vertices; the result is kept
    only if it passes the forest test.
    """
    _check_params(facets, max_vertices)
    if max_vertices < facets:
        raise PreconditionViolated("need at least one vertex per facet")
    rng = random.Random(seed)
    for _ in range(budget):
        used = 0
        first = rng.randint(1, min(max_dim + 1, max_vertices - facets + 1))
        masks = [(1 << first) - 1]
        used = first
        ok = True
        for step in range(1, facets):
            spare = max_vertices - used - (facets - step - 1)
            anchor = rng.choice(masks)
            if rng.random() < 0.2 and len(masks) > 1:
                other = rng.choice(masks)
                if other & anchor:
                    anchor |= other
            if not connected and rng.random() < 0.15:
                shared = 0
            else:
                shared = _random_subset(rng, anchor, 1, max_dim)
            room = max_dim + 1 - popcount(shared)
            if room < 1:
                shared = _random_subset(rng, shared, 1, max_dim)
                room = max_dim + 1 - popcount(shared)
            fresh = rng.randint(1, max(1, min(room, spare)))
            new = shared | (((1 << fresh) - 1) << used)
            used += fresh
            if not _is_antichain(masks + [new]):
                ok = False
                break
            masks.append(new)
        if not ok:
            continue
        delta = _finish(masks, used)
        if is_forest(delta) and (not connected or is_tree(delta)):
            return delta
    raise GenerationExhausted(f"no forest after {budget} attempts")


def random_codim1_tree(seed, facets: int, dim: int = 2, max_vertices: int = 64,
                       budget: int = DEFAULT_BUDGET) -> SimplicialComplex:
    """Pure ``dim``-dimensional tree connected in codimension 1.

    Each step takes a (dim-1)-face of some facet and adds a vertex, usually
    a fresh one; candidates are kept only if they are still trees.
    """
    _check_params(facets, max_vertices)
    if dim < 1:
        raise PreconditionViolated("dimension must be at least 1")
    rng = random.Random(seed)
    for _ in range(budget):
        masks = [(1 << (dim + 1)) - 1]
        used = dim + 1
        stalls = 0
        while len(masks) < facets and stalls < 50:
            g = rng.choice(masks)
            face = g & ~(1 << rng.choice(list(iter_bits(g))))
            if rng.random() < 0.15:
                pool = [v for v in range(used) if not face >> v & 1]
                v = rng.choice(pool)
            else:
                if used >= max_vertices:
                    stalls += 1
                    continue
                v = used
            new = face | (1 << v)
            if new in masks:
                stalls += 1
                continue
            cand = from_masks(vertex_names(max(used, v + 1)), masks + [new])
            if not is_tree(cand):
                stalls += 1
                continue
            masks.append(new)
            used = max(used, v + 1)
        if len(masks) == facets:
            delta = _finish(masks, used)
            if is_tree(delta) and is_connected_codim1(delta):
                return delta
    raise GenerationExhausted(f"no codimension-1 tree after {budget} attempts")


def random_quasi_tree(seed, facets: int, dim: int = 2, max_vertices: int = 64,
                      budget: int = DEFAULT_BUDGET) -> SimplicialComplex:
    """Pure quasi-tree connected in codimension 1, not necessarily a tree.

    Every step adds a (dim-1)-face of an existing facet plus a fresh vertex,
    so each new facet is a leaf of the complex built so far and the
    construction order is a leaf order.
    """
    _check_params(facets, max_vertices)
    if dim < 1:
        raise PreconditionViolated("dimension must be at least 1")
    if dim + facets > max_vertices:
        raise PreconditionViolated("not enough vertices for that many facets")
    rng = random.Random(seed)
    masks = [(1 << (dim + 1)) - 1]
    used = dim + 1
    while len(masks) < facets:
        covered = set()
        for g in masks:
            for v in iter_bits(g):
                covered.add(g & ~(1 << v))
        face = rng.choice(sorted(covered))
        masks.append(face | (1 << used))
        used += 1
    delta = _finish(masks, used)
    if not is_connected_codim1(delta):
        raise GenerationExhausted("construction left codimension-1 connectivity")
    return delta


def random_linear_tree(seed, facets: int, dim: int = 2, max_vertices: int = 64,
                       budget: int = DEFAULT_BUDGET) -> SimplicialComplex:
    """Linear tree grown from a simplex by attaching facets at (dim-1)-faces.

    Attaching at an adjacent face always keeps the tree linear; attaching
    at any other face is tried too and kept only when the intersection
    property survives.
    """
    _check_params(facets, max_vertices)
    if dim < 1:
        raise PreconditionViolated("dimension must be at least 1")
    if dim + facets > max_vertices:
        raise PreconditionViolated("not enough vertices for that many facets")
    rng = random.Random(seed)
    names = vertex_names(dim + facets)
    for _ in range(budget):
        masks = [(1 << (dim + 1)) - 1]
        used = dim + 1
        stalls = 0
        while len(masks) < facets and stalls < 50:
            delta = from_masks(names[:used], masks)
            if len(masks) > 1 and rng.random() < 0.5:
                faces = [f for f, deg in adjacent_faces(delta) if deg >= 2]
                face = rng.choice(faces)
            else:
                g = rng.choice(masks)
                face = g & ~(1 << rng.choice(list(iter_bits(g))))
            cand = from_masks(names[:used + 1], masks + [face | (1 << used)])
            if not has_intersection_property(cand):
                stalls += 1
                continue
            masks.append(face | (1 << used))
            used += 1
        if len(masks) == facets:
            delta = _finish(masks, used)
            if is_tree(delta) and has_intersection_property(delta):
                return delta
    raise GenerationExhausted(f"no linear tree after {budget} attempts")


def random_graph_forest(seed, edges: int, max_vertices: int = 12,
                        budget: int = DEFAULT_BUDGET) -> SimplicialComplex:
    """1-dimensional forest with ``edges`` edges on at most ``max_vertices`` vertices."""
    _check_params(edges, max_vertices)
    if edges >= max_vertices:
        raise PreconditionViolated("a forest on n vertices has at most n - 1 edges")
    rng = random.Random(seed)
    for _ in range(budget):
        n = rng.randint(edges + 1, max_vertices)
        parent = {}
        for v in range(1, n):
            parent[v] = rng.randrange(v)
        kept = rng.sample(sorted(parent), edges)
        masks = [(1 << v) | (1 << parent[v]) for v in kept]
        order = sorted({v for m in masks for v in iter_bits(m)})
        relabel = {v: i for i, v in enumerate(order)}
        masks = [sum(1 << relabel[v] for v in iter_bits(m)) for m in masks]
        delta = _finish(masks, len(order))
        if is_forest(delta):
            return delta
    raise GenerationExhausted(f"no graph forest after {budget} attempts")


def generate(kind: str, facets: int, dim: int = 2, seed=0, max_vertices=None) -> SimplicialComplex:
    """Dispatch on ``kind``; ``facets`` counts edges for graph forests."""
    if kind == "forest":
        return random_forest(seed, facets, max_dim=dim,
                             max_vertices=max_vertices or max(10, facets + dim))
    if kind == "codim1-tree":
        return random_codim1_tree(seed, facets, dim, max_vertices or MAX_GEN_VERTICES)
    if kind == "linear-tree":
        return random_linear_tree(seed, facets, dim, max_vertices or MAX_GEN_VERTICES)
    if kind == "graph-forest":
        return random_graph_forest(seed, facets, max_vertices or max(12, facets + 1))
    raise PreconditionViolated(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# -- exhaustive small trees ---------------------------------------------------

@lru_cache(maxsize=None)
def _relabel_tables(m: int) -> tuple:
    """For each facet permutation, the induced map on incidence patterns."""
    return tuple(tuple(sum(1 << perm[i] for i in iter_bits(p)) for p in range(1 << m))
                 for perm in permutations(range(m)))


def canonical_form(masks) -> tuple:
    """Isomorphism invariant that determines the complex: the smallest sorted
    tuple of vertex incidence patterns over all facet orders."""
    masks = list(masks)
    m = len(masks)
    verts = set()
    for f in masks:
        verts.update(iter_bits(f))
    incidence = [sum(1 << i for i in range(m) if masks[i] >> v & 1) for v in verts]
    best = min(tuple(sorted(t[p] for p in incidence)) for t in _relabel_tables(m))
    return (m, best)


def enumerate_small_trees(max_facets: int = 5, max_vertices: int = 9, max_size=None) -> list:
    """All trees with at most ``max_facets`` facets and ``max_vertices`` vertices,
    one per isomorphism class.

    Removing a leaf from a tree leaves a tree, and a leaf F with dominating
    facet G is a proper subset of G plus free vertices.  So every tree comes
    from a smaller one by such an attachment, and growing level by level
    with a forest check reaches them all.
    """
    max_size = max_size or max_vertices
    level = {}
    for s in range(1, min(max_size, max_vertices) + 1):
        masks = ((1 << s) - 1,)
        level[canonical_form(masks)] = (masks, s)
    out = [from_masks(vertex_names(n), m) for m, n in level.values()]
    for _ in range(2, max_facets + 1):
        nxt = {}
        for masks, used in level.values():
            for g in masks:
                sub = (g - 1) & g
                while sub:
                    for fresh in range(1, min(max_vertices - used, max_size - popcount(sub)) + 1):
                        new = sub | (((1 << fresh) - 1) << used)
                        cand = masks + (new,)
                        if not _is_antichain(cand):
                            continue
                        key = canonical_form(cand)
                        if key in nxt:
                            continue
                        if is_forest(from_masks(vertex_names(used + fresh), cand)):
                            nxt[key] = (cand, used + fresh)
                    sub = (sub - 1) & g
        level = nxt
        out.extend(from_masks(vertex_names(n), m) for m, n in level.values())
    return out
