"""The Hecke algebra of a finite Coxeter group in the T-basis.

Normalisation: ``T_s T_w = T_sw`` if ``l(sw) > l(w)`` and
``q T_sw + (q - 1) T_w`` otherwise, with ``q = v^2``.  The bar involution
sends ``v`` to ``v^-1`` and ``T_w`` to ``T_{w^-1}^-1``.  Kazhdan-Lusztig
elements ``C'_w`` are produced by the generic engine in :mod:`.canonical`
applied to the standard basis ``v^-l(w) T_w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .canonical import ICContext, bar_matrix, ic_basis, invert_unitriangular
from .coxeter import GroupTable
from .laurent import LaurentPoly, ONE, Q, Q_INV, ZERO

__all__ = ["Element", "HeckeElt", "HeckeAlgebra", "KLTable"]

Coords = dict[int, LaurentPoly]


def _add_into(acc: Coords, key: int, a: LaurentPoly) -> None:
    t = acc.get(key)
    if t is None:
        if a:
            acc[key] = a
    else:
        t = t + a
        if t:
            acc[key] = t
        else:
            del acc[key]


def _scalar(c) -> LaurentPoly:
    return c if isinstance(c, LaurentPoly) else LaurentPoly(c)


class Element:
    """Sparse linear combination of basis elements indexed by group elements."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords: Mapping[int, LaurentPoly | int] | None = None):
        self.algebra = algebra
        self.coords: Coords = {}
        for w, a in (coords or {}).items():
            a = _scalar(a)
            if a:
                self.coords[w] = a

    def _new(self, coords: Coords) -> "Element":
        e = type(self).__new__(type(self))
        e.algebra = self.algebra
        e.coords = coords
        return e

    def __getitem__(self, w: int) -> LaurentPoly:
        return self.coords.get(w, ZERO)

    def items(self):
        return self.coords.items()

    def support(self) -> list[int]:
        return sorted(self.coords)

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.coords == other.coords
        if other == 0:
            return not self.coords
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "Element") -> "Element":
        acc = dict(self.coords)
        for w, a in other.coords.items():
            _add_into(acc, w, a)
        return self._new(acc)

    def __neg__(self) -> "Element":
        return self._new({w: -a for w, a in self.coords.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = _scalar(c)
        if not c:
            return self._new({})
        return self._new({w: a * c for w, a in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        g = self.algebra.group
        sym = self.algebra.symbol
        parts = []
        for w in sorted(self.coords, reverse=True):
            parts.append(f"({self.coords[w]}){sym}[{g.name(w)}]")
        return " + ".join(parts)

    def to_json(self) -> dict[str, list]:
        g = self.algebra.group
        return {g.name(w): self.coords[w].to_json() for w in sorted(self.coords)}


class HeckeElt(Element):
    __slots__ = ()


@dataclass
class KLTable:
    """Coefficients of ``C'_w = sum_x p_tilde[w][x] v^-l(x) T_x``.

    ``q_tilde[w][x]`` holds the signed-inverse coefficients with
    ``v^-l(w) T_w = eps_w sum_x eps_x q_tilde[w][x] C'_x``.
    """
    group: GroupTable
    p_tilde: dict[int, dict[int, LaurentPoly]]
    q_tilde: dict[int, dict[int, LaurentPoly]] = field(default_factory=dict)

    def p(self, x: int, w: int) -> LaurentPoly:
        return self.p_tilde[w].get(x, ZERO)

    def q(self, x: int, w: int) -> LaurentPoly:
        return self.q_tilde[w].get(x, ZERO)

    def to_json(self) -> dict:
        g = self.group
        def rows(tab):
            return {g.name(w): {g.name(x): tab[w][x].to_json() for x in sorted(tab[w])}
                    for w in sorted(tab)}
        out = {"graph": g.graph.label, "p_tilde": rows(self.p_tilde)}
        if self.q_tilde:
            out["q_tilde"] = rows(self.q_tilde)
        return out

    @classmethod
    def from_json(cls, group: GroupTable, data: dict) -> "KLTable":
        el = group.element
        def rows(tab):
            return {el(w): {el(x): LaurentPoly.from_json(c) for x, c in row.items()}
                    for w, row in tab.items()}
        return cls(group, rows(data["p_tilde"]), rows(data.get("q_tilde", {})))


class HeckeAlgebra:
    """``H(W)`` over ``Z[v, v^-1]`` for an enumerated group ``W``."""

    symbol = "T"
    element_class = HeckeElt

    def __init__(self, group: GroupTable):
        self.group = group
        self._inverse_cache: dict[int, Coords] = {0: {0: ONE}}
        self._kl: KLTable | None = None
        self._bar: dict | None = None
        self._columns: dict[int, dict[int, LaurentPoly]] = {}

    # -- constructors ----------------------------------------------------

    def elt(self, coords: Mapping[int, LaurentPoly | int] | None = None) -> HeckeElt:
        return self.element_class(self, coords)

    def T(self, w: int | str | Sequence[int]) -> HeckeElt:
        if not isinstance(w, int):
            w = self.group.element(w)
        return self.elt({w: ONE})

    @property
    def zero(self) -> HeckeElt:
        return self.elt()

    @property
    def one(self) -> HeckeElt:
        return self.T(0)

    # -- multiplication --------------------------------------------------

    def _gen_mul_coords(self, coords: Mapping[int, LaurentPoly], s: int, side: str) -> Coords:
        g = self.group
        table = g.right if side == "right" else g.left
        length = g.length
        acc: Coords = {}
        for w, a in coords.items():
            ws = table[w][s]
            if length[ws] > length[w]:
                _add_into(acc, ws, a)
            else:
                qa = a.shift(2)
                _add_into(acc, ws, qa)
                _add_into(acc, w, qa - a)
        return acc

    def t_mul_gen(self, side: str, s: int, h: HeckeElt) -> HeckeElt:
        """``T_s h`` (``side="left"``) or ``h T_s`` (``side="right"``)."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        return h._new(self._gen_mul_coords(h.coords, s, side))

    def _mul_coords(self, a: Mapping[int, LaurentPoly], b: Mapping[int, LaurentPoly]) -> Coords:
        words = self.group.words
        acc: Coords = {}
        for y, beta in b.items():
            part = dict(a)
            for s in words[y]:
                part = self._gen_mul_coords(part, s, "right")
            for x, c in part.items():
                _add_into(acc, x, c * beta)
        return acc

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        return a._new(self._mul_coords(a.coords, b.coords))

    def basis_product(self, x: int, y: int) -> Coords:
        """``T_x T_y`` as coordinates."""
        part: Coords = {x: ONE}
        for s in self.group.words[y]:
            part = self._gen_mul_coords(part, s, "right")
        return part

    # -- inverses and bar ------------------------------------------------

    def _inverse_coords(self, w: int) -> Coords:
        cache = self._inverse_cache
        if w in cache:
            return cache[w]
        g = self.group
        # w = u s reduced, so T_w^-1 = T_s^-1 T_u^-1
        s = g.words[w][-1]
        u = g.right[w][s]
        inv_u = self._inverse_coords(u)
        # T_s^-1 = q^-1 T_s + (q^-1 - 1) T_e
        ts = self._gen_mul_coords(inv_u, s, "left")
        acc: Coords = {}
        for x, a in ts.items():
            _add_into(acc, x, a.shift(-2))
        for x, a in inv_u.items():
            _add_into(acc, x, a.shift(-2) - a)
        cache[w] = acc
        return acc

    def invert_T(self, w: int) -> HeckeElt:
        """``T_w^-1``."""
        return self.elt(dict(self._inverse_coords(w)))

    def bar(self, h: HeckeElt) -> HeckeElt:
        inv = self.group.inverse
        acc: Coords = {}
        for w, a in h.coords.items():
            ab = a.bar()
            for x, c in self._inverse_coords(inv[w]).items():
                _add_into(acc, x, c * ab)
        return h._new(acc)

    bar_hecke = bar

    # -- Kazhdan-Lusztig basis --------------------------------------------

    def standard_bar(self, w: int) -> dict[int, LaurentPoly]:
        """``bar(v^-l(w) T_w)`` in coordinates of the basis ``v^-l(x) T_x``."""
        g = self.group
        lw = g.length[w]
        coords = self._inverse_coords(g.inverse[w])
        return {x: c.shift(lw + g.length[x]) for x, c in coords.items()}

    def kl_context(self, order: Sequence[int] | None = None) -> ICContext:
        g = self.group
        return ICContext(order=list(range(g.size)) if order is None else list(order),
                         leq=g.bruhat_leq, bar_of_basis=self.standard_bar)

    def kl_table(self, order: Sequence[int] | None = None, with_inverse: bool = True,
                 columns: Iterable[int] | None = None) -> KLTable:
        """The table of ``p_tilde``; the default-order full table is cached."""
        default = order is None and columns is None
        if default and self._kl is not None and (self._kl.q_tilde or not with_inverse):
            return self._kl
        ctx = self.kl_context(order)
        cols = None if columns is None else list(columns)
        p = ic_basis(ctx, cols)
        q = {}
        if with_inverse and cols is None:
            q = self._signed_inverse(p, ctx.order)
        table = KLTable(self.group, p, q)
        if default:
            self._kl = table
        return table

    def set_kl_table(self, table: KLTable) -> None:
        self._kl = table

    def _signed_inverse(self, p, order) -> dict[int, dict[int, LaurentPoly]]:
        inv = invert_unitriangular(p, order)
        length = self.group.length
        return {w: {x: (c if (length[w] + length[x]) % 2 == 0 else -c) for x, c in col.items()}
                for w, col in inv.items()}

    def kl_column(self, w: int) -> dict[int, LaurentPoly]:
        """``{x: p_tilde(x, w)}`` for a single ``w``."""
        if self._kl is not None and w in self._kl.p_tilde:
            return self._kl.p_tilde[w]
        col = self._columns.get(w)
        if col is None:
            if self._bar is None:
                self._bar = bar_matrix(self.kl_context())
            col = ic_basis(self.kl_context(), [w], bar_table=self._bar)[w]
            self._columns[w] = col
        return col

    def kl_columns(self, ws: Iterable[int]) -> None:
        for w in ws:
            self.kl_column(w)

    def kl_basis(self, w: int) -> HeckeElt:
        """``C'_w`` in the T-basis."""
        length = self.group.length
        return self.elt({x: a.shift(-length[x]) for x, a in self.kl_column(w).items()})

    def inverse_kl_expansion(self, w: int) -> dict[int, LaurentPoly]:
        """Coefficients of ``v^-l(w) T_w`` in the basis ``C'_x``."""
        table = self.kl_table()
        length = self.group.length
        return {x: (c if (length[w] + length[x]) % 2 == 0 else -c)
                for x, c in table.q_tilde[w].items()}

    # -- the ideal J -----------------------------------------------------

    def ideal_generators(self) -> list[tuple[int, int, HeckeElt]]:
        """``sum_{u in <s,t>} T_u`` for each edge ``(s, t)`` of the graph."""
        g = self.group
        return [(s, t, self.elt({u: ONE for u in g.parabolic(s, t)}))
                for s, t, _ in g.graph.edges]
