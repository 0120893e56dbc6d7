"""Generalized Temperley-Lieb algebras ``TL(X) = H(X) / J(X)``.

Elements are stored in the t-basis ``t_w = theta(T_w)``, ``w`` fully
commutative.  The quotient map is computed by eliminating complex basis
elements: if ``w = x1 w_st x2`` is reduced with ``w_st`` the longest element
of a non-commuting rank-2 parabolic, then modulo ``J``

    T_w = T_x1 T_{w_st} T_x2  ==  - sum_{u in <s,t>, u != w_st} T_x1 T_u T_x2,

and every basis element on the right is shorter than ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .canonical import ICContext, bar_matrix, express_in_basis, ic_basis
from .coxeter import GroupTable
from .hecke import Coords, Element, HeckeAlgebra, HeckeElt, _add_into
from .laurent import LaurentPoly, ONE, Q_C, V_INV, ZERO
from .linalg import Echelon

__all__ = ["TLElt", "TLAlgebra", "KernelReport", "BProduct"]


class TLElt(Element):
    __slots__ = ()


@dataclass(frozen=True)
class BProduct:
    """``a * q_c^m * b_x``."""
    a: int
    m: int
    x: int

    def __iter__(self):
        return iter((self.a, self.m, self.x))


@dataclass
class KernelReport:
    kl_kernel: list[int]        # w with theta(C'_w) = 0
    group_order: int
    tl_dimension: int
    rank_theta: int
    dim_kernel: int
    rank_ideal: int
    ideal_in_kernel: bool
    kl_in_ideal: bool

    @property
    def hypothesis_holds(self) -> bool:
        """The kernel is spanned by the ``C'_w`` it contains."""
        return (self.ideal_in_kernel and self.kl_in_ideal
                and self.rank_ideal == self.dim_kernel == len(self.kl_kernel))


class TLAlgebra:
    symbol = "t"
    element_class = TLElt

    def __init__(self, hecke: HeckeAlgebra):
        self.hecke = hecke
        self.group: GroupTable = hecke.group
        self.basis: list[int] = list(self.group.fc_elements)
        self._theta: dict[int, Coords] = {}
        self._tt: dict[tuple[int, int], Coords] = {}
        self._bar_t: dict[int, Coords] = {}
        self._b: dict[int, Coords] = {}
        self._ic: dict[int, dict[int, LaurentPoly]] | None = None

    # -- constructors ----------------------------------------------------

    def elt(self, coords=None) -> TLElt:
        e = self.element_class(self, coords)
        bad = [w for w in e.coords if not self.group.fc[w]]
        if bad:
            raise ValueError(f"t-basis index {self.group.name(bad[0])} is not fully commutative")
        return e

    def t(self, w: int | str | Sequence[int]) -> TLElt:
        if not isinstance(w, int):
            w = self.group.element(w)
        return self.elt({w: ONE})

    @property
    def one(self) -> TLElt:
        return self.t(0)

    # -- the quotient map ------------------------------------------------

    def theta_basis(self, w: int) -> Coords:
        """``theta(T_w)`` in t-coordinates (memoised, do not mutate)."""
        memo = self._theta
        got = memo.get(w)
        if got is not None:
            return got
        g = self.group
        if g.fc[w]:
            memo[w] = {w: ONE}
            return memo[w]
        word, i, s, t = g.find_braid_factor(w)
        m = g.graph.m(s, t)
        x1 = g.element(word[:i])
        x2_word = word[i + m:]
        longest = g.element(word[i:i + m])
        h = self.hecke
        acc: Coords = {}
        for u in g.parabolic(s, t):
            if u == longest:
                continue
            part: Coords = {x1: ONE}
            for letter in g.words[u] + x2_word:
                part = h._gen_mul_coords(part, letter, "right")
            for z, a in part.items():
                for y, c in self.theta_basis(z).items():
                    _add_into(acc, y, -(a * c))
        memo[w] = acc
        return acc

    def precompute_theta(self) -> None:
        for w in range(self.group.size):
            self.theta_basis(w)

    def _theta_coords(self, coords) -> Coords:
        acc: Coords = {}
        for w, a in coords.items():
            for y, c in self.theta_basis(w).items():
                _add_into(acc, y, a * c)
        return acc

    def theta(self, h: HeckeElt) -> TLElt:
        return self.elt(self._theta_coords(h.coords))

    def lift(self, x: TLElt) -> HeckeElt:
        """The preimage ``sum a_w T_w`` of ``sum a_w t_w``."""
        return self.hecke.elt(dict(x.coords))

    # -- multiplication --------------------------------------------------

    def basis_product(self, x: int, y: int) -> Coords:
        key = (x, y)
        got = self._tt.get(key)
        if got is None:
            got = self._theta_coords(self.hecke.basis_product(x, y))
            self._tt[key] = got
        return got

    def _mul_coords(self, a, b) -> Coords:
        acc: Coords = {}
        for x, alpha in a.items():
            for y, beta in b.items():
                ab = alpha * beta
                for z, c in self.basis_product(x, y).items():
                    _add_into(acc, z, ab * c)
        return acc

    def mul(self, a: TLElt, b: TLElt) -> TLElt:
        return a._new(self._mul_coords(a.coords, b.coords))

    tl_mul = mul

    # -- bar involution --------------------------------------------------

    def _bar_basis(self, w: int) -> Coords:
        got = self._bar_t.get(w)
        if got is None:
            inv = self.hecke._inverse_coords(self.group.inverse[w])
            got = self._theta_coords(inv)
            self._bar_t[w] = got
        return got

    def bar(self, x: TLElt) -> TLElt:
        acc: Coords = {}
        for w, a in x.coords.items():
            ab = a.bar()
            for y, c in self._bar_basis(w).items():
                _add_into(acc, y, ab * c)
        return x._new(acc)

    bar_tl = bar

    # -- monomial basis --------------------------------------------------

    def b_gen(self, s: int) -> TLElt:
        return self.elt({self.group.gen(s): V_INV, 0: V_INV})

    def b_word(self, word: Sequence[int]) -> TLElt:
        """The product ``b_{s_1} ... b_{s_k}`` for an arbitrary word."""
        acc: Coords = {0: ONE}
        for s in word:
            acc = self._mul_coords(acc, {self.group.gen(s): V_INV, 0: V_INV})
        return self.elt(acc)

    def b_monomial(self, w: int) -> TLElt:
        g = self.group
        if not g.fc[w]:
            raise ValueError(f"{g.name(w)} is not fully commutative")
        got = self._b.get(w)
        if got is None:
            if w == 0:
                got = {0: ONE}
            else:
                word = g.words[w]
                u = g.element(word[:-1])
                s = word[-1]
                got = self._mul_coords(self.b_monomial(u).coords,
                                       {g.gen(s): V_INV, 0: V_INV})
            self._b[w] = got
        return self.elt(dict(got))

    def b_product_reduce(self, word: Sequence[int]) -> BProduct:
        """Normal form ``a q_c^m b_x`` of ``b_{s_1} ... b_{s_k}``.

        Uses only the defining relations of the b-generators (bond orders
        2, 3, 4).  Each new letter is absorbed into the current monomial
        ``b_x``; when ``xs`` is complex the offending ``s s' s`` or
        ``s' s s' s`` pattern is located by the parse of ``x`` against ``s``.
        """
        g = self.group
        if any(m not in (2, 3, 4) for _, _, m in g.graph.edges):
            raise ValueError("b-rewriting needs all bond orders in {2, 3, 4}")
        a, m, x = 1, 0, 0
        for s in word:
            a2, m2, x = self._b_times_gen(x, s)
            a *= a2
            m += m2
        return BProduct(a, m, x)

    def _b_times_gen(self, x: int, s: int) -> tuple[int, int, int]:
        g = self.group
        xs = g.right[x][s]
        if g.length[xs] < g.length[x]:
            # x = u s, b_s b_s = q_c b_s
            return 1, 1, x
        if g.fc[xs]:
            return 1, 0, xs
        parse = g.parse_noncommutative(x, s)
        if parse.case == 1:
            # b_s b_w2 b_s' b_w3 b_s = b_w2 (b_s b_s' b_s) b_w3 = b_w2 b_s b_w3
            w1, w2, w3 = parse.pieces
            rest, factor = w1 + (s,) + w2 + w3, 1
        else:
            # b_s' b_w2 b_s b_w3 b_s' b_w4 b_s = b_w2 b_w3 (b_s' b_s b_s' b_s) b_w4
            w1, w2, w3, w4 = parse.pieces
            rest, factor = w1 + w2 + w3 + (parse.s_prime, s) + w4, 2
        a, m, y = self.b_product_reduce(rest)
        return factor * a, m, y

    def b_product_value(self, prod: BProduct) -> TLElt:
        return self.b_monomial(prod.x).scale(Q_C ** prod.m * prod.a)

    # -- canonical basis -------------------------------------------------

    def standard_bar(self, w: int) -> dict[int, LaurentPoly]:
        """``bar(v^-l(w) t_w)`` in coordinates of ``v^-l(y) t_y``."""
        length = self.group.length
        lw = length[w]
        return {y: c.shift(lw + length[y]) for y, c in self._bar_basis(w).items()}

    def ic_context(self, order: Sequence[int] | None = None) -> ICContext:
        return ICContext(order=list(self.basis) if order is None else list(order),
                         leq=self.group.bruhat_leq, bar_of_basis=self.standard_bar)

    def ic_table(self, order: Sequence[int] | None = None) -> dict[int, dict[int, LaurentPoly]]:
        """``{w: {y: p(y, w)}}`` with ``c_w = sum_y p(y, w) v^-l(y) t_y``."""
        if order is None and self._ic is not None:
            return self._ic
        table = ic_basis(self.ic_context(order))
        if order is None:
            self._ic = table
        return table

    ic_basis_tl = ic_table

    def set_ic_table(self, table) -> None:
        self._ic = table

    def c_basis(self, w: int) -> TLElt:
        length = self.group.length
        return self.elt({y: a.shift(-length[y]) for y, a in self.ic_table()[w].items()})

    def to_standard(self, x: TLElt | Coords) -> dict[int, LaurentPoly]:
        """t-coordinates to coordinates in the basis ``v^-l(y) t_y``."""
        coords = x.coords if isinstance(x, Element) else x
        length = self.group.length
        return {y: a.shift(length[y]) for y, a in coords.items()}

    def basis_table(self, kind: str) -> dict[int, dict[int, LaurentPoly]]:
        """Each basis element in coordinates of ``v^-l(y) t_y``."""
        if kind == "t":
            length = self.group.length
            return {w: {w: LaurentPoly.monomial(length[w])} for w in self.basis}
        if kind == "b":
            return {w: self.to_standard(self.b_monomial(w)) for w in self.basis}
        if kind == "c":
            return self.ic_table()
        raise ValueError(f"unknown basis {kind!r}; expected t, b or c")

    def structure_constants(self, kind: str) -> dict[tuple[int, int], dict[int, LaurentPoly]]:
        """``{(x, y): {z: coefficient of basis_z in basis_x basis_y}}``."""
        table = self.basis_table(kind)
        elements = {w: self._from_standard(col) for w, col in table.items()}
        out = {}
        for x in self.basis:
            for y in self.basis:
                prod = self._mul_coords(elements[x], elements[y])
                if kind == "t":
                    out[(x, y)] = prod
                else:
                    out[(x, y)] = express_in_basis(self.to_standard(prod), table, self.basis)
        return out

    def _from_standard(self, col) -> Coords:
        length = self.group.length
        return {y: a.shift(-length[y]) for y, a in col.items()}

    # -- kernel of theta -------------------------------------------------

    def kernel_basis_check(self) -> KernelReport:
        """Compare ``ker theta`` with the span of the ``C'_w`` it contains."""
        g, h = self.group, self.hecke
        kl = h.kl_table(with_inverse=False)
        length = g.length
        kl_elts = {w: {x: a.shift(-length[x]) for x, a in kl.p_tilde[w].items()}
                   for w in range(g.size)}
        kernel = [w for w in range(g.size) if not self._theta_coords(kl_elts[w])]

        theta_rows = Echelon()
        for w in range(g.size):
            theta_rows.add(self.theta_basis(w))
        dim_ker = g.size - theta_rows.rank

        # two-sided ideal generated by the sums over rank-2 parabolics
        ideal = Echelon()
        queue = []
        for _, _, gen in h.ideal_generators():
            if ideal.add(gen.coords):
                queue.append(gen.coords)
        in_kernel = True
        while queue:
            vec = queue.pop()
            if self._theta_coords(vec):
                in_kernel = False
            for s in range(g.rank):
                for side in ("left", "right"):
                    new = h._gen_mul_coords(vec, s, side)
                    if new and ideal.add(new):
                        queue.append(new)
        kl_in_ideal = all(ideal.contains(kl_elts[w]) for w in kernel)
        return KernelReport(kernel, g.size, len(self.basis), theta_rows.rank, dim_ker,
                            ideal.rank, in_kernel, kl_in_ideal)
