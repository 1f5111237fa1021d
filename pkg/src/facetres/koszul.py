"""Koszul homology of R/I for squarefree monomial ideals I.

In a squarefree multidegree ``a`` the Koszul complex of R/I has the basis
``m e_L`` with ``L`` a subset of ``a``, ``m = x^(a \\ L)`` and ``m`` not in I,
so a basis element is determined by its wedge set ``L``.  Homology is
computed component by component with exact elimination
(:mod:`facetres.linalg`), and multigraded Betti numbers of R/I are read off
as ``b_{i,a} = dim H_i(K(R/I))_a``.

Koszul homology of R/I vanishes outside squarefree multidegrees when I is
squarefree; products of cycles whose multidegrees overlap are therefore
zero classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping

from .complex import is_forest, iter_bits, popcount
from .errors import CapacityExceeded, NotACycle, PreconditionViolated
from .ideal import SqfIdeal
from .linalg import QQ, Echelon, FieldSpec

MAX_MULTIDEGREE = 20


# -- component bases --------------------------------------------------------

@lru_cache(maxsize=8192)
def _basis(gens: tuple, a: int) -> tuple:
    """Wedge sets of the Koszul basis in multidegree ``a``, grouped by size."""
    k = popcount(a)
    if k > MAX_MULTIDEGREE:
        raise CapacityExceeded(f"multidegree of size {k} exceeds {MAX_MULTIDEGREE}")
    inside = [g for g in gens if g & a == g]
    groups = [[] for _ in range(k + 1)]
    sub = a
    while True:
        # sub is the monomial a \ L
        if not any(g & sub == g for g in inside):
            L = a & ~sub
            groups[popcount(L)].append(L)
        if sub == 0:
            break
        sub = (sub - 1) & a
    return tuple(tuple(sorted(g)) for g in groups)


def _boundary_row(L: int, targets: set) -> dict:
    row = {}
    pos = 0
    for l in iter_bits(L):
        t = L & ~(1 << l)
        if t in targets:
            row[t] = -1 if pos & 1 else 1
        pos += 1
    return row


def koszul_component_basis(I: SqfIdeal, i: int, a: int) -> list:
    """Pairs ``(monomial, wedge set)`` spanning K_i(R/I) in multidegree ``a``."""
    groups = _basis(I.generators, a)
    if not 0 <= i < len(groups):
        return []
    return [(a & ~L, L) for L in groups[i]]


def _ranks(I: SqfIdeal, a: int, fld: FieldSpec) -> tuple:
    """(dims, ranks): dims[i] = dim K_i, ranks[i] = rank of d_i: K_i -> K_{i-1}."""
    groups = _basis(I.generators, a)
    dims = [len(g) for g in groups]
    ranks = [0] * (len(groups) + 1)
    for i in range(1, len(groups)):
        if not groups[i] or not groups[i - 1]:
            continue
        targets = set(groups[i - 1])
        ech = Echelon(fld)
        for L in groups[i]:
            ech.add(_boundary_row(L, targets))
        ranks[i] = ech.rank
    return dims, ranks


def homology_dims(I: SqfIdeal, a: int, field: FieldSpec = QQ) -> list:
    """``[dim H_i(K(R/I))_a for i = 0..|a|]``."""
    if I.is_unit:
        return [0] * (popcount(a) + 1)
    dims, ranks = _ranks(I, a, field)
    return [dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims))]


# -- Betti tables -------------------------------------------------------------

def lcm_lattice(I: SqfIdeal) -> list:
    """All unions of generator supports, the empty union included."""
    lattice = {0}
    for g in I.generators:
        lattice |= {x | g for x in lattice}
    return sorted(lattice)


@dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers ``b_{i,a}`` of R/I; only nonzero entries are stored."""

    universe: tuple
    entries: Mapping = dc_field(default_factory=dict)
    field: FieldSpec = dc_field(default=QQ, compare=False)

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def graded(self) -> dict:
        """``{(i, j): b_{i,j}}`` aggregated over multidegrees of size j."""
        out: dict = {}
        for (i, a), v in self.entries.items():
            key = (i, popcount(a))
            out[key] = out.get(key, 0) + v
        return out

    def beta(self, i: int, j: int) -> int:
        return self.graded().get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def totals(self) -> list:
        top = max((i for i, _ in self.entries), default=-1)
        return [self.total(i) for i in range(top + 1)]

    def multidegrees(self, i: int) -> list:
        return sorted(a for (k, a) in self.entries if k == i)

    def label(self, a: int) -> str:
        names = [str(self.universe[k]) for k in iter_bits(a)]
        if all(len(v) == 1 for v in names):
            return "".join(names) or "1"
        return "*".join(names) or "1"

    def render(self) -> str:
        """Rows i, columns j; zero entries blank."""
        g = self.graded()
        if not g:
            return "(zero module)"
        top_i = max(i for i, _ in g)
        top_j = max(j for _, j in g)
        width = max(3, max(len(str(v)) for v in g.values()) + 1)
        head = "i\\j".ljust(5) + "".join(str(j).rjust(width) for j in range(top_j + 1))
        lines = [head]
        for i in range(top_i + 1):
            cells = "".join((str(g[i, j]) if (i, j) in g else "").rjust(width)
                            for j in range(top_j + 1))
            lines.append(str(i).ljust(5) + cells)
        return "\n".join(lines)


def betti_number(I: SqfIdeal, i: int, a: int, field: FieldSpec = QQ) -> int:
    if I.is_unit:
        raise PreconditionViolated("R/I is zero for the unit ideal")
    dims = homology_dims(I, a, field)
    return dims[i] if 0 <= i < len(dims) else 0


def betti_table(I: SqfIdeal, field: FieldSpec = QQ) -> BettiTable:
    """Multigraded Betti table of R/I from Koszul homology.

    Only lcm-lattice multidegrees are visited; Betti numbers vanish elsewhere.
    """
    if I.is_unit:
        raise PreconditionViolated("R/I is zero for the unit ideal")
    entries = {}
    for a in lcm_lattice(I):
        for i, b in enumerate(homology_dims(I, a, field)):
            if b:
                entries[i, a] = b
    return BettiTable(I.universe, entries, field)


def reg_pd(table: BettiTable) -> tuple:
    """(regularity, projective dimension) of R/I."""
    g = table.graded()
    return max(j - i for i, j in g), max(i for i, _ in g)


def is_linear_resolution(I: SqfIdeal, table: BettiTable) -> bool:
    """b_{i,j}(R/I) = 0 for i >= 1 unless j = i + g - 1, g the common generator degree."""
    if I.is_zero or not I.is_equigenerated():
        return False
    g = I.min_degree
    return all(popcount(a) == i + g - 1 for (i, a) in table.entries if i >= 1)


# -- chains -------------------------------------------------------------------

def _clean(terms: Mapping, fld: FieldSpec) -> dict:
    p = fld.characteristic
    out = {}
    for L, c in terms.items():
        if p:
            c %= p
        if c:
            out[L] = c
    return out


@dataclass(frozen=True)
class KoszulChain:
    """Homogeneous element of K_i(R/I) in squarefree multidegree ``multidegree``.

    ``terms`` maps a wedge set L (ascending wedge order) to its coefficient;
    the monomial of a term is ``multidegree \\ L``.
    """

    ideal: SqfIdeal
    degree: int
    multidegree: int
    terms: Mapping
    field: FieldSpec = QQ

    def is_zero(self) -> bool:
        return not self.terms

    def monomial(self, L: int) -> int:
        return self.multidegree & ~L

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        I = self.ideal
        for L, c in sorted(self.terms.items()):
            wedge = "^".join(f"e{I.universe[k]}" for k in iter_bits(L)) or "1"
            parts.append(f"{c}*{I.monomial(self.monomial(L))}*{wedge}")
        return " + ".join(parts)


def make_chain(I: SqfIdeal, multidegree: int, terms: Mapping, field: FieldSpec = QQ,
               degree: int | None = None) -> KoszulChain:
    """Build a chain, dropping terms whose monomial lies in I."""
    sizes = {popcount(L) for L in terms}
    if len(sizes) > 1:
        raise ValueError("chain terms of mixed homological degree")
    for L in terms:
        if L & multidegree != L:
            raise ValueError("wedge set outside the multidegree")
    if degree is None:
        degree = sizes.pop() if sizes else 0
    elif sizes and sizes != {degree}:
        raise ValueError("degree does not match the wedge sets")
    kept = {L: c for L, c in terms.items() if not I.contains(multidegree & ~L)}
    return KoszulChain(I, degree, multidegree, _clean(kept, field), field)


def monomial_cycle(I: SqfIdeal, f: int, L: int, field: FieldSpec = QQ) -> KoszulChain:
    """The chain ``f e_L`` (squarefree: f and L disjoint)."""
    if f & L:
        raise ValueError("monomial and wedge set overlap: not a squarefree multidegree")
    return make_chain(I, f | L, {L: 1}, field, degree=popcount(L))


def koszul_differential(z: KoszulChain) -> KoszulChain:
    """d(m e_L) = sum over l in L of (-1)^pos(l) x_l m e_{L-l}, pos counted from 0."""
    out: dict = {}
    a = z.multidegree
    for L, c in z.terms.items():
        pos = 0
        for l in iter_bits(L):
            t = L & ~(1 << l)
            if not z.ideal.contains(a & ~t):
                out[t] = out.get(t, 0) + (-c if pos & 1 else c)
            pos += 1
    return KoszulChain(z.ideal, z.degree - 1, a, _clean(out, z.field), z.field)


def is_cycle(z: KoszulChain) -> bool:
    return z.degree <= 0 or koszul_differential(z).is_zero()


def _wedge_sign(L1: int, L2: int) -> int:
    inversions = 0
    for x in iter_bits(L1):
        inversions += popcount(L2 & ((1 << x) - 1))
    return -1 if inversions & 1 else 1


def wedge(z1: KoszulChain, z2: KoszulChain):
    """Product in K(R/I); None when the multidegrees overlap (a non-squarefree degree)."""
    if z1.multidegree & z2.multidegree:
        return None
    out: dict = {}
    a = z1.multidegree | z2.multidegree
    for L1, c1 in z1.terms.items():
        for L2, c2 in z2.terms.items():
            L = L1 | L2
            out[L] = out.get(L, 0) + _wedge_sign(L1, L2) * c1 * c2
    return make_chain(z1.ideal, a, out, z1.field, degree=z1.degree + z2.degree)


def _as_vector(z: KoszulChain) -> dict:
    if z.field.characteristic == 0:
        den = 1
        for c in z.terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        return {L: int(c * den) for L, c in z.terms.items()}
    return dict(z.terms)


def _boundary_echelon(I: SqfIdeal, i: int, a: int, fld: FieldSpec) -> Echelon:
    """Echelon basis of the boundaries B_i(R/I) in multidegree a."""
    groups = _basis(I.generators, a)
    ech = Echelon(fld)
    if 0 <= i and i + 1 < len(groups):
        targets = set(groups[i])
        for L in groups[i + 1]:
            ech.add(_boundary_row(L, targets))
    return ech


def is_boundary(z: KoszulChain) -> bool:
    ech = _boundary_echelon(z.ideal, z.degree, z.multidegree, z.field)
    return ech.contains(_as_vector(z))


def class_product_nonzero(I: SqfIdeal, cycles: Iterable[KoszulChain]) -> bool:
    """Whether the product of the homology classes of ``cycles`` is nonzero."""
    cycles = list(cycles)
    if not cycles:
        raise ValueError("empty product")
    for z in cycles:
        if z.ideal.generators != I.generators or not is_cycle(z):
            raise NotACycle(f"{z} is not a cycle of K(R/I)")
    prod = cycles[0]
    for z in cycles[1:]:
        prod = wedge(prod, z)
        if prod is None:
            return False
    if prod.is_zero():
        return False
    return not is_boundary(prod)


# -- monomial cycles ----------------------------------------------------------

@dataclass(frozen=True)
class MonomialCycleReport:
    """Monomial cycles f e_L in one component and the rank of their classes."""

    degree: int
    multidegree: int
    cycles: tuple
    rank: int
    betti: int

    @property
    def spans(self) -> bool:
        return self.rank == self.betti


def _monomial_cycles_at(I: SqfIdeal, r: int, a: int) -> list:
    out = []
    for f, L in koszul_component_basis(I, r, a):
        if all(I.contains(f | (1 << l)) for l in iter_bits(L)):
            out.append((f, L))
    return out


def monomial_cycle_report(I: SqfIdeal, r: int, a: int, field: FieldSpec = QQ) -> MonomialCycleReport:
    cyc = _monomial_cycles_at(I, r, a)
    ech = _boundary_echelon(I, r, a, field)
    base = ech.rank
    for _, L in cyc:
        ech.add({L: 1})
    return MonomialCycleReport(r, a, tuple(cyc), ech.rank - base, betti_number(I, r, a, field))


def monomial_cycle_basis(I: SqfIdeal, r: int, field: FieldSpec = QQ) -> dict:
    """Per lcm-lattice multidegree, the monomial cycles of K_r(R/I) and their class rank."""
    return {a: monomial_cycle_report(I, r, a, field) for a in lcm_lattice(I)}


# -- edge ideals of forests ---------------------------------------------------

def _neighbours(I: SqfIdeal) -> dict:
    nb: dict = {}
    for g in I.generators:
        u, v = iter_bits(g)
        nb[u] = nb.get(u, 0) | (1 << v)
        nb[v] = nb.get(v, 0) | (1 << u)
    return nb


def _bouquet_partitions(nb: dict, remaining: int):
    """Ways to cover ``remaining`` exactly by vertex-disjoint bouquets (root, flowers)."""
    if remaining == 0:
        yield []
        return
    v = (remaining & -remaining).bit_length() - 1
    rest = remaining & ~(1 << v)
    # v as a root
    avail = nb.get(v, 0) & rest
    sub = avail
    while sub:
        for tail in _bouquet_partitions(nb, rest & ~sub):
            yield [(v, sub)] + tail
        sub = (sub - 1) & avail
    # v as a flower of some root r
    for r in iter_bits(nb.get(v, 0) & rest):
        avail = nb[r] & rest & ~(1 << r)
        sub = avail
        while True:
            flowers = sub | (1 << v)
            for tail in _bouquet_partitions(nb, rest & ~(1 << r) & ~sub):
                yield [(r, flowers)] + tail
            if sub == 0:
                break
            sub = (sub - 1) & avail


def verify_linear_generation(I: SqfIdeal, field: FieldSpec = QQ) -> bool:
    """Products of linear monomial-cycle classes span every component of H(R/I).

    ``I`` must be the edge ideal of a 1-dimensional forest.  The linear
    cycles are x_r e_S with S a nonempty set of neighbours of r.
    """
    if I.is_zero or any(popcount(g) != 2 for g in I.generators):
        raise PreconditionViolated("needs an edge ideal")
    if not is_forest(I.complex()):
        raise PreconditionViolated("needs the edge ideal of a forest")
    nb = _neighbours(I)
    for a in lcm_lattice(I):
        dims = homology_dims(I, a, field)
        by_degree: dict = {}
        for parts in _bouquet_partitions(nb, a):
            prod = None
            for root, flowers in parts:
                z = monomial_cycle(I, 1 << root, flowers, field)
                prod = z if prod is None else wedge(prod, z)
            if prod is None:
                prod = make_chain(I, 0, {0: 1}, field, degree=0)
            if not prod.is_zero():
                by_degree.setdefault(prod.degree, []).append(prod)
        for i, b in enumerate(dims):
            if not b:
                continue
            ech = _boundary_echelon(I, i, a, field)
            base = ech.rank
            for z in by_degree.get(i, []):
                ech.add(_as_vector(z))
            if ech.rank - base != b:
                return False
    return True
