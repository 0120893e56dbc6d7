"""Exact arithmetic in the Laurent polynomial ring Z[v, v^-1].

Polynomials are immutable and stored sparsely as ``{exponent: coefficient}``
with no zero coefficients.  Coefficients are Python ints, so nothing overflows.

>>> (Q_C * Q_C)
v^2 + 2 + v^-2
>>> (V - V_INV).bar()
-v + v^-1
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly", "ZERO", "ONE", "V", "V_INV", "Q", "Q_INV", "Q_C",
    "add", "mul", "neg", "bar",
    "in_A_minus", "in_v_inv_A_minus", "has_nonneg_coeffs",
]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | int = ()):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                c[e] = c.get(e, 0) + a
        self._c = {e: a for e, a in c.items() if a}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    # -- inspection ------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs, highest exponent first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def in_A_minus(self) -> bool:
        """All exponents <= 0, i.e. the polynomial lies in Z[v^-1]."""
        return all(e <= 0 for e in self._c)

    def in_v_inv_A_minus(self) -> bool:
        """All exponents <= -1."""
        return all(e < 0 for e in self._c)

    def has_nonneg_coeffs(self) -> bool:
        return all(a > 0 for a in self._c.values())

    def content(self) -> int:
        g = 0
        for a in self._c.values():
            g = gcd(g, a)
        return g

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            b = c.get(e, 0) + a
            if b:
                c[e] = b
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        x, y = self._c, other._c
        if not x or not y:
            return ZERO
        if len(y) == 1:
            (f, b), = y.items()
            return LaurentPoly._raw({e + f: a * b for e, a in x.items()})
        if len(x) == 1:
            (e, a), = x.items()
            return LaurentPoly._raw({e + f: a * b for f, b in y.items()})
        c: dict[int, int] = {}
        for e, a in x.items():
            for f, b in y.items():
                k = e + f
                c[k] = c.get(k, 0) + a * b
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise ValueError("only units v^k and -v^k can be inverted in Z[v, v^-1]")
            (e, a), = self._c.items()
            return LaurentPoly.monomial(e * n, a ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The ring involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def negative_part(self) -> "LaurentPoly":
        """Sum of the terms with strictly negative exponent."""
        return LaurentPoly._raw({e: a for e, a in self._c.items() if e < 0})

    def exact_div_int(self, d: int) -> "LaurentPoly":
        if any(a % d for a in self._c.values()):
            raise ArithmeticError(f"{self} is not divisible by {d}")
        return LaurentPoly._raw({e: a // d for e, a in self._c.items()})

    def divmod_poly(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Division with remainder in Q[v] after clearing v-powers.

        Only used with exact divisions (the quotient is checked to be integral).
        Both operands are treated as ordinary polynomials after shifting their
        lowest exponents to zero; the result is shifted back.
        """
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        a_low = min(self._c) if self._c else 0
        b_low = other.low_degree
        num = {e - a_low: c for e, c in self._c.items()}
        den = {e - b_low: c for e, c in other._c.items()}
        db = max(den)
        lead = den[db]
        quot: dict[int, int] = {}
        while num and max(num) >= db:
            dn = max(num)
            c = num[dn]
            if c % lead:
                raise ArithmeticError("quotient is not integral")
            t = c // lead
            quot[dn - db] = t
            for e, b in den.items():
                k = e + dn - db
                x = num.get(k, 0) - t * b
                if x:
                    num[k] = x
                else:
                    num.pop(k, None)
        shift = a_low - b_low
        return (LaurentPoly._raw({e + shift: c for e, c in quot.items()}),
                LaurentPoly._raw({e + a_low: c for e, c in num.items()}))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod_poly(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- comparison and hashing -----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for i, (e, a) in enumerate(self.terms()):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    __repr__ = __str__

    def to_json(self) -> list[list[int]]:
        return [[e, a] for e, a in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "LaurentPoly":
        return cls((int(e), int(a)) for e, a in data)


ZERO = LaurentPoly()
ONE = LaurentPoly.monomial(0)
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)
Q = LaurentPoly.monomial(2)
Q_INV = LaurentPoly.monomial(-2)
Q_C = V + V_INV


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def in_A_minus(a: LaurentPoly) -> bool:
    return a.in_A_minus()


def in_v_inv_A_minus(a: LaurentPoly) -> bool:
    return a.in_v_inv_A_minus()


def has_nonneg_coeffs(a: LaurentPoly) -> bool:
    return a.has_nonneg_coeffs()
