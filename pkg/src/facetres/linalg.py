"""Exact sparse linear algebra over Q or a prime field.

Vectors are ``dict`` objects mapping a column key (any totally ordered
hashable, usually an int bitmask) to a nonzero coefficient.  Over Q the
coefficients are Python ints: rows are kept primitive (content 1) and
elimination is fraction free, so no rational arithmetic is ever needed to
decide rank or span membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: exact rationals (characteristic 0) or GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 2 or not isprime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` / ``Q`` / ``QQ`` or ``gf:<p>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("gf:"):
            try:
                return cls(int(t[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {text!r}") from exc
        raise ValueError(f"bad field spec {text!r}")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incrementally built row echelon basis.

    Each stored row is indexed by its leading (smallest) column.  ``add``
    returns whether the new vector was independent of the rows seen so far.
    """

    def __init__(self, field: FieldSpec = QQ):
        self.p = field.characteristic
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        """Return ``vec`` reduced against the stored rows (leading terms only)."""
        p = self.p
        if p:
            row = {k: v % p for k, v in vec.items() if v % p}
        else:
            row = {k: v for k, v in vec.items() if v}
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                break
            rc = row[c]
            if p:
                # stored rows have leading coefficient 1
                for k, v in prow.items():
                    nv = (row.get(k, 0) - rc * v) % p
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                pc = prow[c]
                g = gcd(pc, rc)
                a, b = pc // g, rc // g
                if a != 1:
                    row = {k: a * v for k, v in row.items()}
                for k, v in prow.items():
                    nv = row.get(k, 0) - b * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                if row:
                    row = _primitive(row)
        return row

    def add(self, vec: dict) -> bool:
        row = self.reduce(vec)
        if not row:
            return False
        c = min(row)
        if self.p:
            inv = pow(row[c], -1, self.p)
            row = {k: (v * inv) % self.p for k, v in row.items()}
        else:
            row = _primitive(row)
        self.pivots[c] = row
        return True

    def contains(self, vec: dict) -> bool:
        """True iff ``vec`` lies in the span of the stored rows."""
        return not self.reduce(vec)


def rank(rows, field: FieldSpec = QQ) -> int:
    """Rank of a list of sparse rows."""
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank
