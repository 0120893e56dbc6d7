"""Bar-invariant triangular bases.

Given a free module with standard basis ``x_w`` indexed by a finite poset and
a bar involution acting by

    bar(x_w) = sum_y r(y, w) x_y,      r(w, w) = 1,  r(y, w) = 0 unless y <= w,

there is a unique family ``c_w = sum_y p(y, w) x_y`` with ``p(w, w) = 1``,
``p(y, w)`` in ``v^-1 Z[v^-1]`` for ``y < w`` and ``bar(c_w) = c_w``.  The
same engine produces Kazhdan-Lusztig elements in the Hecke algebra and the
canonical basis of a Temperley-Lieb quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from .laurent import LaurentPoly, ONE

__all__ = ["ICContext", "CanonicalBasisError", "bar_matrix", "ic_basis", "ic_column",
           "express_in_basis", "invert_unitriangular"]

Index = Hashable
Column = dict[Index, LaurentPoly]
Table = dict[Index, Column]


class CanonicalBasisError(ArithmeticError):
    """The supplied bar action does not admit a canonical basis."""


@dataclass
class ICContext:
    """Input data for the canonical-basis engine.

    ``order`` must be a linear extension of ``leq`` (smaller elements first).
    ``bar_of_basis(w)`` returns the coordinates of ``bar(x_w)`` in the
    standard basis.
    """
    order: Sequence[Index]
    leq: Callable[[Index, Index], bool]
    bar_of_basis: Callable[[Index], Mapping[Index, LaurentPoly]]


def bar_matrix(ctx: ICContext) -> Table:
    """Columns ``r(., w)`` of the bar involution, checked unitriangular."""
    table: Table = {}
    for w in ctx.order:
        col = {y: a for y, a in ctx.bar_of_basis(w).items() if a}
        if col.get(w) != ONE:
            raise CanonicalBasisError(f"bar(x_{w}) has diagonal coefficient {col.get(w)}, expected 1")
        for y in col:
            if y != w and not ctx.leq(y, w):
                raise CanonicalBasisError(f"bar(x_{w}) has support on {y}, which is not below {w}")
        table[w] = col
    return table


def ic_column(w: Index, r: Table, position: Mapping[Index, int]) -> Column:
    """Solve for ``c_w`` given the bar matrix.

    Corrections are made from the top of the interval downwards.  The running
    defect ``d = bar(c) - c`` has, at the current index ``y``, a coefficient
    ``beta`` with ``bar(beta) = -beta``; adding ``alpha x_y`` with ``alpha``
    the negative-exponent part of ``beta`` kills it.
    """
    p: Column = {w: ONE}
    # defect of c = x_w: bar(x_w) - x_w
    defect: Column = {y: a for y, a in r[w].items() if y != w}
    while defect:
        y = max(defect, key=position.__getitem__)
        beta = defect.pop(y)
        if beta.coeff(0):
            raise CanonicalBasisError(f"defect at {y} in column {w} has nonzero constant term: {beta}")
        if beta.bar() != -beta:
            raise CanonicalBasisError(f"defect at {y} in column {w} is not bar-antisymmetric: {beta}")
        # need alpha - bar(alpha) = beta with alpha in v^-1 Z[v^-1]
        alpha = beta.negative_part()
        p[y] = alpha
        # bar(alpha x_y) - alpha x_y contributes bar(alpha) r(z, y) at z < y
        ab = alpha.bar()
        for z, a in r[y].items():
            if z == y:
                continue
            t = defect.get(z)
            nt = ab * a if t is None else t + ab * a
            if nt:
                defect[z] = nt
            else:
                defect.pop(z, None)
    return p


def ic_basis(ctx: ICContext, columns: Sequence[Index] | None = None,
             bar_table: Table | None = None) -> Table:
    """The canonical basis as a table ``{w: {y: p(y, w)}}``.

    ``columns`` restricts the computation to some indices; every column is
    independent of the others once the bar matrix is known.
    """
    r = bar_table if bar_table is not None else bar_matrix(ctx)
    position = {w: k for k, w in enumerate(ctx.order)}
    todo = ctx.order if columns is None else columns
    return {w: ic_column(w, r, position) for w in todo}


def invert_unitriangular(table: Table, order: Sequence[Index]) -> Table:
    """Inverse of a unitriangular table ``{w: {y: a(y, w)}}``."""
    return {w: express_in_basis({w: ONE}, table, order) for w in order}


def express_in_basis(vec: Mapping[Index, LaurentPoly], table: Table,
                     order: Sequence[Index]) -> Column:
    """Coordinates of ``vec`` in a unitriangular basis given by ``table``."""
    position = {w: k for k, w in enumerate(order)}
    residual = {y: a for y, a in vec.items() if a}
    out: Column = {}
    while residual:
        y = max(residual, key=position.__getitem__)
        c = residual.pop(y)
        col = table[y]
        if col.get(y) != ONE:
            raise CanonicalBasisError(f"basis element {y} is not unitriangular")
        out[y] = c
        for z, a in col.items():
            if z == y:
                continue
            t = residual.get(z)
            nt = -(c * a) if t is None else t - c * a
            if nt:
                residual[z] = nt
            else:
                residual.pop(z, None)
    return out
