"""Commutative polynomials in tagged transcendental symbols.

Generators come in four kinds:

* zeta symbols  -- multiple zeta values of a given flavor (complex, p-adic,
  p-adic Deligne), indexed by an admissible index tuple;
* Li symbols    -- one-variable multiple polylogarithm functions (plain,
  overconvergent "dagger", single-valued "minus") at an argument tag
  (z, z^p, zbar);
* log symbols   -- logarithms of the argument tags plus 1-z, 1-zbar, |z|^2;
* lambda symbols -- free character coordinates attached to Lyndon words,
  used to parameterize group-like series before any zeta relations are
  imposed.

A SymbolPoly is a finite map {monomial: scalar} with monomials sorted
tuples of (generator, exponent).  Scalars are exact: `fractions.Fraction`
by default, promoted to `ratfunc.RatFunc` as soon as a z-dependent scalar
enters (only the differential-equation checks do that).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re

from .ratfunc import RatFunc

# argument tags for function symbols
ARG_Z = "z"
ARG_Z_POW_P = "z^p"
ARG_Z_CONJ = "zbar"
ARG_ONE_MINUS_Z = "1-z"
ARG_ONE_MINUS_Z_CONJ = "1-zbar"
ARG_ABS_Z_SQ = "|z|^2"

ZETA_FLAVORS = {"complex": "zeta", "p-adic": "zeta_p", "p-adic-Deligne": "zetaDe_p"}
LI_FLAVORS = {"plain": "Li", "dagger": "Lidag", "minus": "Liminus"}
_ZETA_BY_NAME = {v: k for k, v in ZETA_FLAVORS.items()}
_LI_BY_NAME = {v: k for k, v in LI_FLAVORS.items()}


@dataclass(frozen=True, order=True)
class ZetaSym:
    flavor: str
    index: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.index)

    def __str__(self):
        return f"{ZETA_FLAVORS[self.flavor]}[{','.join(map(str, self.index))}]"


@dataclass(frozen=True, order=True)
class LiSym:
    flavor: str
    index: tuple[int, ...]
    arg: str

    @property
    def weight(self) -> int:
        return sum(self.index)

    def __str__(self):
        return f"{LI_FLAVORS[self.flavor]}[{','.join(map(str, self.index))}]({self.arg})"


@dataclass(frozen=True, order=True)
class LogSym:
    arg: str

    @property
    def weight(self) -> int:
        return 1

    def __str__(self):
        return f"log|z|^2" if self.arg == ARG_ABS_Z_SQ else f"log({self.arg})"


@dataclass(frozen=True, order=True)
class LambdaSym:
    tag: str
    word: str  # letters of the Lyndon word

    @property
    def weight(self) -> int:
        return len(self.word)

    def __str__(self):
        return f"lam_{self.tag}[{self.word}]"


_KIND_RANK = {ZetaSym: 0, LiSym: 1, LogSym: 2, LambdaSym: 3}


def _gen_key(g):
    return (_KIND_RANK[type(g)], str(g))


Monomial = tuple[tuple[object, int], ...]


def _scalar_zero(x) -> bool:
    if isinstance(x, RatFunc):
        return x.is_zero()
    return x == 0


def _scalar_mul(x, y):
    if isinstance(x, RatFunc) or isinstance(y, RatFunc):
        x = x if isinstance(x, RatFunc) else RatFunc.from_fraction(x)
        y = y if isinstance(y, RatFunc) else RatFunc.from_fraction(y)
    return x * y


def _scalar_add(x, y):
    if isinstance(x, RatFunc) or isinstance(y, RatFunc):
        x = x if isinstance(x, RatFunc) else RatFunc.from_fraction(x)
        y = y if isinstance(y, RatFunc) else RatFunc.from_fraction(y)
    return x + y


class SymbolPoly:
    """Exact commutative polynomial in the tagged generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if not _scalar_zero(c):
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolPoly is immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def constant(c) -> "SymbolPoly":
        if isinstance(c, int):
            c = Fraction(c)
        return SymbolPoly({(): c})

    @staticmethod
    def gen(g, c=Fraction(1)) -> "SymbolPoly":
        return SymbolPoly({((g, 1),): c})

    ZERO: "SymbolPoly"
    ONE: "SymbolPoly"

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def weight(self) -> int | None:
        """The common weight of all monomials, or None if mixed/zero."""
        weights = {sum(g.weight * e for g, e in m) for m in self.terms}
        if len(weights) == 1:
            return weights.pop()
        return None

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SymbolPoly):
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return SymbolPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = _scalar_add(out[m], c) if m in out else c
        return SymbolPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _merge_monomials(m1, m2)
                c = _scalar_mul(c1, c2)
                out[m] = _scalar_add(out[m], c) if m in out else c
        return SymbolPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self * (Fraction(1) / other)
        if isinstance(other, RatFunc):
            return self * (RatFunc.from_fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        out = SymbolPoly.ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        raise TypeError("SymbolPoly is unhashable")

    # -- substitution ---------------------------------------------------

    def substitute(self, mapping: dict[object, "SymbolPoly"]) -> "SymbolPoly":
        """Replace each generator in `mapping` by the given polynomial."""
        out = SymbolPoly.ZERO
        for mono, c in self.terms.items():
            term = SymbolPoly.constant(c)
            for g, e in mono:
                base = mapping.get(g)
                term = term * (base**e if base is not None else SymbolPoly({((g, e),): Fraction(1)}))
            out = out + term
        return out

    def generators(self) -> set:
        return {g for m in self.terms for g, _ in m}

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            parts.append(_term_str(mono, c))
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"SymbolPoly({self})"


SymbolPoly.ZERO = SymbolPoly({})
SymbolPoly.ONE = SymbolPoly.constant(1)


def _merge_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    acc: dict = {}
    for g, e in m1 + m2:
        acc[g] = acc.get(g, 0) + e
    return tuple(sorted(acc.items(), key=lambda ge: _gen_key(ge[0])))


def _mono_sort_key(m: Monomial):
    return tuple(( _gen_key(g), e) for g, e in m)


def _term_str(mono: Monomial, c) -> str:
    factors = []
    for g, e in mono:
        factors.append(str(g) if e == 1 else f"{str(g)}^{e}")
    body = "*".join(factors)
    if isinstance(c, RatFunc):
        cs = f"({c})"
        return f"{cs}*{body}" if body else cs
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


# -- the formal d/dz derivative ------------------------------------------


class NotDifferentiableError(ValueError):
    pass


def _dlog(arg: str, p: int | None) -> RatFunc:
    z = RatFunc.z_power(1)
    one = RatFunc.from_fraction(1)
    if arg == ARG_Z:
        return one / z
    if arg == ARG_ONE_MINUS_Z:
        return -(one / (one - z))
    if arg == ARG_Z_POW_P:
        if p is None:
            raise NotDifferentiableError("differentiating a z^p symbol needs the prime p")
        return RatFunc.from_fraction(p) / z
    raise NotDifferentiableError(f"log({arg}) is not differentiable in z")


def _dli(g: LiSym, p: int | None) -> SymbolPoly:
    """Derivative of a single Li generator as a SymbolPoly over RatFunc."""
    z = RatFunc.z_power(1)
    one = RatFunc.from_fraction(1)
    idx = g.index
    if g.arg == ARG_Z:
        inner, dz_over = one, None
    elif g.arg == ARG_Z_POW_P:
        if p is None:
            raise NotDifferentiableError("differentiating a z^p symbol needs the prime p")
        pz = RatFunc.z_power(p)
        inner, dz_over = RatFunc.from_fraction(p) * RatFunc.z_power(p - 1), pz
    else:
        raise NotDifferentiableError(f"Li symbol with argument {g.arg} is not differentiable")
    if idx[-1] >= 2:
        dropped = LiSym(g.flavor, idx[:-1] + (idx[-1] - 1,), g.arg)
        denom = z if g.arg == ARG_Z else dz_over
        return SymbolPoly.gen(dropped, inner / denom)
    # last exponent 1: strip it; Li of the empty index is 1
    denom = (one - z) if g.arg == ARG_Z else (one - dz_over)
    rest = idx[:-1]
    if rest:
        return SymbolPoly.gen(LiSym(g.flavor, rest, g.arg), inner / denom)
    return SymbolPoly.constant(inner / denom)


def formal_derivative(q: SymbolPoly, p: int | None = None) -> SymbolPoly:
    """d/dz applied with the Leibniz rule; zeta and lambda symbols are constants.

    The derivative acts on the last index entry of an Li symbol (the
    exponent of the outermost summation variable): Li[...,k](z) maps to
    Li[...,k-1](z)/z for k >= 2 and to Li[...](z)/(1-z) for k == 1.
    Symbols with conjugate arguments are rejected.
    """
    for g in q.generators():
        if isinstance(g, (LiSym, LogSym)) and g.arg in (ARG_Z_CONJ, ARG_ONE_MINUS_Z_CONJ, ARG_ABS_Z_SQ):
            raise NotDifferentiableError(f"{g} is not differentiable in z")
    out = SymbolPoly.ZERO
    for mono, c in q.terms.items():
        for i, (g, e) in enumerate(mono):
            if isinstance(g, (ZetaSym, LambdaSym)):
                continue
            rest = list(mono[:i] + mono[i + 1 :])
            if e > 1:
                rest.append((g, e - 1))
            rest_mono = tuple(sorted(rest, key=lambda ge: _gen_key(ge[0])))
            coeff = _scalar_mul(c, Fraction(e))
            if isinstance(g, LogSym):
                dg = SymbolPoly.constant(_dlog(g.arg, p))
            else:
                dg = _dli(g, p)
            out = out + SymbolPoly({rest_mono: coeff}) * dg
    return out


# -- canonical parsing --------------------------------------------------

_GEN_RE = re.compile(
    r"(?P<name>zetaDe_p|zeta_p|zeta|Lidag|Liminus|Li|lam_[A-Za-z0-9]+)"
    r"\[(?P<idx>[A-Z0-9,]*)\]"
    r"(?:\((?P<arg>[^)]*)\))?"
    r"(?:\^(?P<exp>\d+))?"
)
_LOG_RE = re.compile(r"log(?:\((?P<arg>[^)]*)\)|\|z\|\^2)(?:\^(?P<exp>\d+))?")


def _parse_generator(tok: str):
    m = _LOG_RE.fullmatch(tok)
    if m:
        arg = m.group("arg") if m.group("arg") else ARG_ABS_Z_SQ
        return LogSym(arg), int(m.group("exp") or 1)
    m = _GEN_RE.fullmatch(tok)
    if not m:
        raise ValueError(f"cannot parse generator {tok!r}")
    name = m.group("name")
    exp = int(m.group("exp") or 1)
    if name.startswith("lam_"):
        return LambdaSym(name[4:], m.group("idx")), exp
    idx = tuple(int(x) for x in m.group("idx").split(",") if x)
    if name in _ZETA_BY_NAME:
        return ZetaSym(_ZETA_BY_NAME[name], idx), exp
    return LiSym(_LI_BY_NAME[name], idx, m.group("arg") or ARG_Z), exp


def parse_symbol_poly(text: str) -> SymbolPoly:
    """Parse the canonical str() form back into a SymbolPoly."""
    text = text.strip()
    if text == "0":
        return SymbolPoly.ZERO
    # split into signed terms at top level (no parens nesting except args)
    terms = []
    depth = 0
    cur = ""
    sign = 1
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            terms.append((sign, cur.strip()))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif depth == 0 and ch in "+-" and not cur.strip():
            sign = sign if ch == "+" else -sign
        else:
            cur += ch
    if cur.strip():
        terms.append((sign, cur.strip()))
    out = SymbolPoly.ZERO
    for sign, term in terms:
        factors = _split_factors(term)
        coeff = Fraction(sign)
        gens: dict = {}
        for f in factors:
            f = f.strip()
            if re.fullmatch(r"-?\d+(/\d+)?", f):
                coeff *= Fraction(f)
            else:
                g, e = _parse_generator(f)
                gens[g] = gens.get(g, 0) + e
        mono = tuple(sorted(gens.items(), key=lambda ge: _gen_key(ge[0])))
        out = out + SymbolPoly({mono: coeff})
    return out


def _split_factors(term: str) -> list[str]:
    parts = []
    depth = 0
    cur = ""
    for ch in term:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        parts.append(cur)
    return parts
