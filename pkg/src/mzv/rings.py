"""Pluggable coefficient rings for the series layer.

A ring object describes how coefficients behave (zero/one, equality,
units, embedding of the rationals) without wrapping the coefficient
values themselves: rational coefficients are `fractions.Fraction`,
symbolic ones are `SymbolPoly`, p-adic ones are `PadicNumber` and complex
ones are the built-in `complex`.  The `has_rationals` capability flag
gates exp/log and every construction that divides by integers.
"""

from __future__ import annotations

from fractions import Fraction

from .padics import DEFAULT_PRECISION, PadicNumber, parse_padic
from .symbols import SymbolPoly, parse_symbol_poly


class RingMismatchError(TypeError):
    pass


class Ring:
    name: str = "ring"
    has_rationals: bool = True

    def from_fraction(self, q):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_fraction(Fraction(0))

    @property
    def one(self):
        return self.from_fraction(Fraction(1))

    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return self.is_zero(x - y)

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def invert(self, x):
        raise NotImplementedError

    def compatible(self, other: "Ring") -> bool:
        return self == other

    def coeff_str(self, x) -> str:
        return str(x)

    def coeff_parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalRing(Ring):
    name = "Q"

    def from_fraction(self, q):
        return Fraction(q)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x != 0

    def invert(self, x):
        return Fraction(1) / x

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash(self.name)

    def coeff_parse(self, text):
        return Fraction(text)


class IntegerRing(Ring):
    """Exact integers; no rational scalars, so exp/log are unavailable."""

    name = "Z"
    has_rationals = False

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator != 1:
            raise ValueError(f"{q} is not an integer")
        return q.numerator

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x in (1, -1)

    def invert(self, x):
        if not self.is_unit(x):
            raise ValueError(f"{x} is not a unit in Z")
        return x

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(self.name)

    def coeff_parse(self, text):
        return int(text)


class SymbolicRing(Ring):
    """Polynomials in tagged symbols over exact rational (or z-rational) scalars."""

    name = "symbolic"

    def from_fraction(self, q):
        return SymbolPoly.constant(Fraction(q))

    def is_zero(self, x):
        return x.is_zero()

    def is_unit(self, x):
        return x.is_constant() and not x.is_zero()

    def invert(self, x):
        c = x.constant_value()
        if isinstance(c, Fraction):
            return SymbolPoly.constant(Fraction(1) / c)
        return SymbolPoly.constant(1 / c)

    def __eq__(self, other):
        return isinstance(other, SymbolicRing)

    def __hash__(self):
        return hash(self.name)

    def coeff_parse(self, text):
        return parse_symbol_poly(text)


class PadicRing(Ring):
    def __init__(self, p: int, precision: int = DEFAULT_PRECISION):
        self.p = p
        self.precision = precision
        self.name = f"Q_{p} (prec {precision})"

    def from_fraction(self, q):
        return PadicNumber.from_rational(q, self.p, self.precision)

    def is_zero(self, x):
        return x.is_zero()

    def is_unit(self, x):
        return not x.is_zero()

    def invert(self, x):
        return 1 / x

    def __eq__(self, other):
        return isinstance(other, PadicRing) and other.p == self.p and other.precision == self.precision

    def __hash__(self):
        return hash((self.p, self.precision))

    def coeff_parse(self, text):
        return parse_padic(text, self.p, self.precision)


class ComplexRing(Ring):
    """Double-precision complex numbers with tolerance-tagged equality."""

    def __init__(self, tolerance: float = 1e-9):
        self.tolerance = tolerance
        self.name = f"C (tol {tolerance:g})"

    def from_fraction(self, q):
        q = Fraction(q)
        return complex(q.numerator / q.denominator)

    def is_zero(self, x):
        return abs(x) < self.tolerance

    def is_unit(self, x):
        return abs(x) >= self.tolerance

    def invert(self, x):
        return 1 / x

    def __eq__(self, other):
        return isinstance(other, ComplexRing) and other.tolerance == self.tolerance

    def __hash__(self):
        return hash(("C", self.tolerance))

    def coeff_str(self, x):
        x = complex(x)
        sign = "+" if x.imag >= 0 or x.imag != x.imag else "-"
        return f"{x.real!r}{sign}{abs(x.imag)!r}j"

    def coeff_parse(self, text):
        return complex(text)


QQ = RationalRing()
ZZ = IntegerRing()
SYMBOLIC = SymbolicRing()


def padic_ring(p: int, precision: int = DEFAULT_PRECISION) -> PadicRing:
    return PadicRing(p, precision)


def complex_ring(tolerance: float = 1e-9) -> ComplexRing:
    return ComplexRing(tolerance)
