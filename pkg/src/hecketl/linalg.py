"""Exact rank over the fraction field Q(v) by fraction-free elimination.

Rows are sparse maps ``column -> LaurentPoly``.  Elimination multiplies by
pivots instead of dividing, then strips the integer content and the power of
``v`` common to a row (both units or scalars over Q(v)), so no rational
functions ever appear.
"""

from __future__ import annotations

from math import gcd
from typing import Hashable, Iterable, Mapping

from .laurent import LaurentPoly

Row = dict[Hashable, LaurentPoly]


def _normalise(row: Row) -> Row:
    g = 0
    low = None
    for a in row.values():
        g = gcd(g, a.content())
        lo = a.low_degree
        low = lo if low is None else min(low, lo)
    lead = row[min(row)]
    if lead.terms()[0][1] < 0:
        g = -g
    return {c: a.exact_div_int(g).shift(-low) for c, a in row.items()}


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of Q(v)^n.

    Column keys must be mutually comparable; the leading column of a row is
    its smallest key.
    """

    def __init__(self):
        self.pivots: dict[Hashable, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[Hashable, LaurentPoly]) -> Row:
        r = {c: a for c, a in row.items() if a}
        while r:
            c = min(r)
            e = self.pivots.get(c)
            if e is None:
                return r
            p, f = e[c], r[c]
            new: Row = {}
            for k in set(r) | set(e):
                x = r.get(k)
                y = e.get(k)
                val = (x * p if x is not None else None)
                if y is not None:
                    val = -(y * f) if val is None else val - y * f
                if val:
                    new[k] = val
            r = _normalise(new) if new else new
        return r

    def add(self, row: Mapping[Hashable, LaurentPoly]) -> bool:
        """Insert ``row``; True if it was independent of the current rows."""
        r = self.reduce(row)
        if not r:
            return False
        r = _normalise(r)
        self.pivots[min(r)] = r
        return True

    def contains(self, row: Mapping[Hashable, LaurentPoly]) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping[Hashable, LaurentPoly]]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank
