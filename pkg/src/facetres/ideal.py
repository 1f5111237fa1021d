"""Squarefree monomial ideals, stored by the supports of their minimal generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import (
    SimplicialComplex,
    _require_facet,
    from_masks,
    iter_bits,
    leaf_order,
    popcount,
)
from .errors import EmptyInput, PreconditionViolated, TooLarge, UnitColon

MAX_QUOTIENT_ORDER_SEARCH = 12


def minimal_generators(masks: Iterable[int]) -> tuple:
    """Divisibility-minimal elements of a set of squarefree monomials, sorted."""
    kept: list = []
    for m in sorted(set(masks), key=lambda x: (popcount(x), x)):
        if not any(g & m == g for g in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SqfIdeal:
    """Minimal generating set of a squarefree monomial ideal.

    A generator is the bitmask of its support; ``0`` stands for the unit
    monomial 1.  An empty generator tuple is the zero ideal.
    """

    universe: tuple
    generators: tuple

    @property
    def n(self) -> int:
        return len(self.universe)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == (0,)

    def contains(self, monomial: int) -> bool:
        return any(g & monomial == g for g in self.generators)

    def degrees(self) -> list:
        return [popcount(g) for g in self.generators]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    def is_equigenerated(self) -> bool:
        return len(set(self.degrees())) <= 1

    def support(self) -> int:
        s = 0
        for g in self.generators:
            s |= g
        return s

    def complex(self) -> SimplicialComplex:
        """The complex whose facet ideal this is."""
        if self.is_zero or self.is_unit:
            raise PreconditionViolated("zero and unit ideals are not facet ideals")
        return SimplicialComplex(self.universe, self.generators)

    def monomial(self, mask: int) -> str:
        if mask == 0:
            return "1"
        names = [self.universe[i] for i in iter_bits(mask)]
        if all(len(str(v)) == 1 for v in names):
            return "".join(str(v) for v in names)
        return "*".join(str(v) for v in names)

    def __str__(self):
        return "(" + ", ".join(self.monomial(g) for g in self.generators) + ")"


def ideal(universe: Sequence, masks: Iterable[int]) -> SqfIdeal:
    return SqfIdeal(tuple(universe), minimal_generators(masks))


def minimalize(monomials: Iterable[int], universe: Sequence) -> SqfIdeal:
    masks = list(monomials)
    if not masks:
        raise EmptyInput("no monomials given")
    return SqfIdeal(tuple(universe), minimal_generators(masks))


def facet_ideal(delta: SimplicialComplex) -> SqfIdeal:
    return SqfIdeal(delta.universe, delta.facets)


def colon_by(J: SqfIdeal, f: int) -> SqfIdeal:
    """Minimal generators of J : f, namely the minimal elements of g / gcd(g, f)."""
    if J.is_zero:
        raise PreconditionViolated("colon of the zero ideal")
    gens = minimal_generators(g & ~f for g in J.generators)
    if gens == (0,):
        raise UnitColon(f"{J.monomial(f)} lies in {J}")
    return SqfIdeal(J.universe, gens)


def quotient_complex(delta: SimplicialComplex, facet: int) -> SimplicialComplex:
    """Complex of the colon ideal J : f, where J is generated by the other facets.

    Vertices of the universe that end up in no generator are reported by
    :meth:`SimplicialComplex.isolated_vertices` of the result.
    """
    _require_facet(delta, facet)
    if len(delta) < 2:
        raise PreconditionViolated("quotient complex needs at least two facets")
    J = SqfIdeal(delta.universe, tuple(g for g in delta.facets if g != facet))
    return from_masks(delta.universe, colon_by(J, facet).generators)


def _linear_colon(prefix: Sequence[int], f: int) -> bool:
    return all(popcount(g) == 1 for g in minimal_generators(g & ~f for g in prefix))


def is_linear_quotient_order(I: SqfIdeal, order: Sequence[int]) -> bool:
    """Each colon (f_1..f_{i-1}) : f_i is generated by variables.

    Ideals generated in more than one degree are never linear quotient
    ideals, so this returns False for them.
    """
    if sorted(order) != sorted(I.generators):
        raise PreconditionViolated("order must list each minimal generator once")
    if not I.is_equigenerated():
        return False
    return all(_linear_colon(order[:i], order[i]) for i in range(1, len(order)))


def find_linear_quotient_order(I: SqfIdeal, max_generators: int = MAX_QUOTIENT_ORDER_SEARCH):
    """A linear quotient order of G(I), or None.

    A leaf order of the complex of generators is tried first; otherwise the
    search runs over sets of already placed generators, since the colon
    only depends on that set.
    """
    if I.is_zero or not I.is_equigenerated():
        return None
    gens = I.generators
    if not I.is_unit:
        lo = leaf_order(I.complex())
        if lo is not None and is_linear_quotient_order(I, lo):
            return lo
    m = len(gens)
    if m > max_generators:
        raise TooLarge(f"{m} generators exceeds the order search bound {max_generators}")
    full = (1 << m) - 1
    failed = set()

    def search(state):
        if state == full:
            return []
        if state in failed:
            return None
        prefix = [gens[i] for i in iter_bits(state)]
        for i in range(m):
            if state >> i & 1:
                continue
            if state and not _linear_colon(prefix, gens[i]):
                continue
            rest = search(state | (1 << i))
            if rest is not None:
                return [gens[i]] + rest
        failed.add(state)
        return None

    return search(0)
