"""Complex-numeric evaluation: multiple zeta values, disk polylogarithms,
single-valued combinations, and numeric checks of relation rows.

Multiple zeta values are computed by one streaming pass of nested prefix
sums up to a cutoff M followed by an exact tail correction: the tail of a
nested sum telescopes into tails of strictly shallower nested sums with
larger last exponent, and the depth-one base case is Euler-Maclaurin with
three terms.  Everything is elementary summation; no acceleration beyond
the integral comparison is used, and the reported error bound adds the
analytic remainder to a float-roundoff allowance.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .shufflealg import Monomial, RelationRow
from .symbols import (
    ARG_ABS_Z_SQ,
    ARG_ONE_MINUS_Z,
    ARG_ONE_MINUS_Z_CONJ,
    ARG_Z,
    ARG_Z_CONJ,
    LambdaSym,
    LiSym,
    LogSym,
    SymbolPoly,
    ZetaSym,
)
from .words import Word
from .ratfunc import RatFunc

MZV_TOLERANCE = 1e-6
DEPTH1_TOLERANCE = 1e-8
_CUTOFF = 2_000_000
_CHUNK = 250_000


class InadmissibleIndexError(ValueError):
    pass


def _power_tail(k: int, m: float) -> float:
    """sum_{n>M} n^-k by Euler-Maclaurin with three terms."""
    return m ** (1 - k) / (k - 1) - m ** (-k) / 2 + k * m ** (-k - 1) / 12


def _power_tail_error(k: int, m: float) -> float:
    return k * (k + 1) * (k + 2) / 720.0 * m ** (-k - 3)


def _stream_prefixes(entries: tuple[int, ...], cutoff: int) -> list[float]:
    """F_j(cutoff) for j = 1..depth, where F_j(n) sums the depth-j nested
    prefix of the index over n_j <= n."""
    carries = [0.0] * len(entries)
    lo = 1
    while lo <= cutoff:
        hi = min(lo + _CHUNK, cutoff + 1)
        n = np.arange(lo, hi, dtype=np.float64)
        prev_excl = None
        for j, k in enumerate(entries):
            g = n ** (-float(k))
            if prev_excl is not None:
                g = g * prev_excl
            csum = np.cumsum(g)
            total = carries[j] + csum
            # exclusive prefix F_j(n-1) feeding the next level
            prev_excl = np.concatenate(([carries[j]], total[:-1]))
            carries[j] = float(total[-1])
        lo = hi
    return carries


def _tail(entries: tuple[int, ...], prefixes: list[float], cutoff: int) -> tuple[float, float]:
    """(tail value, error bound) of sum_{n>cutoff} F_{d-1}(n-1) n^-k_d.

    Telescopes F_{d-1}(n-1) = F_{d-1}(M) + increments, swaps the order of
    summation, and expands the inner power tail by Euler-Maclaurin, which
    reduces the depth by one at a larger last exponent.
    """
    m = float(cutoff)
    depth = len(entries)
    k = entries[-1]
    if depth == 1:
        return _power_tail(k, m), _power_tail_error(k, m)
    base = prefixes[depth - 2] * _power_tail(k, m)
    base_err = prefixes[depth - 2] * _power_tail_error(k, m)
    kp = entries[-2]
    rest = entries[:-2]
    t1, e1 = _tail(rest + (kp + k - 1,), prefixes, cutoff)
    t2, e2 = _tail(rest + (kp + k,), prefixes, cutoff)
    t3, e3 = _tail(rest + (kp + k + 1,), prefixes, cutoff)
    value = base + t1 / (k - 1) - t2 / 2 + k * t3 / 12
    # remainder of the Euler-Maclaurin expansion summed against the prefix,
    # bounded with F_{d-2}(n) <= (log n + 2)^(d-2)
    rem = (math.log(m) + 2) ** (depth - 1) * _power_tail_error(k, m) * m
    err = base_err + e1 / (k - 1) + e2 / 2 + k * e3 / 12 + rem
    return value, err


@lru_cache(maxsize=None)
def _mzv_with_bound(entries: tuple[int, ...], cutoff: int) -> tuple[float, float]:
    prefixes = _stream_prefixes(entries, cutoff)
    tail, err = _tail(entries, prefixes, cutoff)
    roundoff = 5e-11 * (cutoff / 1e6 + 1) * len(entries)
    return prefixes[-1] + tail, err + roundoff


def mzv_numeric(index, tolerance: float = MZV_TOLERANCE) -> tuple[float, float]:
    """Numeric value of an admissible multiple zeta value with an error bound.

    The achieved bound is far below the requested tolerance at desk scale
    (weight <= 5, depth <= 4); a ValueError is raised if the cutoff cannot
    meet the tolerance.
    """
    entries = tuple(getattr(index, "entries", index))
    if not entries or entries[-1] < 2:
        raise InadmissibleIndexError(f"index {entries} is not admissible")
    if any(k < 1 for k in entries):
        raise InadmissibleIndexError(f"index {entries} has nonpositive entries")
    cutoff = 100_000 if len(entries) == 1 else _CUTOFF
    value, err = _mzv_with_bound(entries, cutoff)
    if err > tolerance:
        raise ValueError(f"cutoff {cutoff} only reaches error {err:g} > {tolerance:g}")
    return value, err


def mzv(index) -> float:
    return mzv_numeric(index)[0]


# -- Bernoulli numbers -------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with B_1 = -1/2 (generating function t/(e^t - 1))."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(n):
        acc += Fraction(math.comb(n + 1, j)) * bernoulli(j)
    return -acc / (n + 1)


# -- disk polylogarithms ------------------------------------------------------


def _series_cutoff(abs_z: float, tolerance: float) -> int:
    if abs_z >= 1:
        raise ValueError("polylogarithm series need |z| < 1")
    n = max(8, int(math.log(tolerance * (1 - abs_z)) / math.log(abs_z)) + 2)
    return n


def polylog(k: int, z: complex, tolerance: float = 1e-12) -> complex:
    """Li_k on the open unit disk by direct summation with a geometric tail."""
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    cutoff = _series_cutoff(abs(z), tolerance)
    n = np.arange(1, cutoff + 1, dtype=np.float64)
    return complex(np.sum(z ** n / n ** float(k)))


def polylog2(a: int, b: int, z: complex, tolerance: float = 1e-12) -> complex:
    """Li_{a,b}(z) = sum_{n1<n2} z^n2 / (n1^a n2^b) on the open disk."""
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    cutoff = _series_cutoff(abs(z), tolerance / 4) + 32
    n = np.arange(1, cutoff + 1, dtype=np.float64)
    inner = np.concatenate(([0.0], np.cumsum(n ** (-float(a)))[:-1]))
    return complex(np.sum(z ** n * n ** (-float(b)) * inner))


def log_abs_sq(z: complex) -> float:
    return 2.0 * math.log(abs(z))


def sv_polylog(k: int, z: complex) -> complex:
    """The single-valued combination of Li_k and its conjugate-argument twin.

    Evaluates Li_k(z) - sum_{a=0}^{k-1} (-1)^(k-a) (log|z|^2)^a / a! *
    Li_{k-a}(zbar) pointwise on the punctured open disk.
    """
    z = complex(z)
    if z == 0 or abs(z) >= 1:
        raise ValueError("sv_polylog is evaluated on the punctured open unit disk")
    ell = log_abs_sq(z)
    acc = polylog(k, z)
    for a in range(k):
        acc -= (-1) ** (k - a) * ell**a / math.factorial(a) * polylog(k - a, z.conjugate())
    return acc


def zagier_p(k: int, z: complex) -> float:
    """Bernoulli-weighted real/imaginary projection of the polylogarithm:
    Re for odd k, Im for even k."""
    z = complex(z)
    if z == 0 or abs(z) >= 1:
        raise ValueError("zagier_p is evaluated on the punctured open unit disk")
    ell = log_abs_sq(z)
    acc = 0.0 + 0.0j
    for a in range(k):
        acc += float(bernoulli(a)) / math.factorial(a) * ell**a * polylog(k - a, z)
    return acc.real if k % 2 == 1 else acc.imag


def sv_depth2_direct(a: int, b: int, z: complex) -> complex:
    """The closed-form single-valued depth-2 polylogarithm evaluated literally.

    Divergent zeta(1)-type constants are regularized to 0.
    """
    z = complex(z)
    zb = z.conjugate()
    ell = log_abs_sq(z)

    def zeta_reg(k: int) -> float:
        return 0.0 if k <= 1 else mzv((k,))

    def li(k: int, arg: complex) -> complex:
        return polylog(k, arg)

    total = polylog2(a, b, z)
    for r in range(a):
        for s in range(r + 1):
            outer = (
                (-1) ** (a + r + s)
                * math.comb(b - 1 + s, s)
                * ell ** (r - s)
                / math.factorial(r - s)
                * li(a - r, zb)
            )
            inner = li(b + s, z)
            for w in range(b + s):
                inner -= (-1) ** (b + s + w) * ell**w / math.factorial(w) * li(b + s - w, zb)
            total -= outer * inner
    for u in range(b):
        bracket = (-1) ** (a + b + u) * polylog2(a, b - u, zb)
        bracket += ((-1) ** (b + u) - (-1) ** (a + b + u)) * zeta_reg(a) * li(b - u, zb)
        for v in range(b - u):
            bracket += (
                ((-1) ** (a + b + u + v) - (-1) ** (b + u))
                * math.comb(a + v - 1, a - 1)
                * zeta_reg(a + v)
                * li(b - u - v, zb)
            )
        total -= ell**u / math.factorial(u) * bracket
    return total


# -- numeric evaluation of symbolic expressions --------------------------------


def lambda_value(word: Word) -> float:
    """Numeric character value of the complex associator on a Lyndon word."""
    from .shufflealg import index_of_word, is_convergent_word

    if word.weight <= 1:
        return 0.0
    if not is_convergent_word(word):
        return 0.0
    entries, sign = index_of_word(word)
    return sign * mzv(entries)


def evaluate_symbol_poly(poly: SymbolPoly, z: complex | None = None, lambda_tag: str = "c") -> complex:
    """Evaluate a symbolic polynomial at a disk point with numeric MZVs.

    Complex-flavor zeta symbols and lambda symbols of the given tag map to
    numeric multiple zeta values; Li and log symbols are evaluated at z /
    zbar.  p-adic symbols have no complex value and raise.
    """
    args: dict[str, complex] = {}
    if z is not None:
        z = complex(z)
        args = {ARG_Z: z, ARG_Z_CONJ: z.conjugate()}

    def gen_value(g) -> complex:
        if isinstance(g, ZetaSym):
            if g.flavor != "complex":
                raise ValueError(f"{g} has no complex numeric value")
            return 0.0 if g.index == (1,) else mzv(g.index)
        if isinstance(g, LambdaSym):
            if g.tag != lambda_tag:
                raise ValueError(f"lambda symbol {g} does not match tag {lambda_tag!r}")
            return lambda_value(Word(g.word))
        if isinstance(g, LogSym):
            if g.arg == ARG_ABS_Z_SQ:
                return log_abs_sq(args[ARG_Z])
            if g.arg == ARG_ONE_MINUS_Z:
                return cmath.log(1 - args[ARG_Z])
            if g.arg == ARG_ONE_MINUS_Z_CONJ:
                return cmath.log(1 - args[ARG_Z_CONJ])
            if g.arg not in args:
                raise ValueError(f"no numeric value for the argument of {g}")
            return cmath.log(args[g.arg])
        if isinstance(g, LiSym):
            if g.arg not in args:
                raise ValueError(f"no numeric value for the argument of {g}")
            target = args[g.arg]
            if len(g.index) == 1:
                return polylog(g.index[0], target)
            if len(g.index) == 2:
                return polylog2(g.index[0], g.index[1], target)
            raise ValueError(f"no numeric evaluator for depth {len(g.index)} Li symbol")
        raise TypeError(f"unknown generator {g!r}")

    total = 0.0 + 0.0j
    for mono, c in poly.terms.items():
        if isinstance(c, RatFunc):
            num = _eval_poly(c.num, args[ARG_Z])
            den = _eval_poly(c.den, args[ARG_Z])
            scalar = num / den
        else:
            scalar = complex(Fraction(c))
        term = scalar
        for g, e in mono:
            term *= gen_value(g) ** e
        total += term
    return total


def _eval_poly(coeffs, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * z + complex(c)
    return acc


def evaluate_monomial(mono: Monomial) -> float:
    out = 1.0
    for idx in mono:
        out *= mzv(idx)
    return out


def evaluate_relation_row(row: RelationRow) -> float:
    """Numeric residual of a relation row under the complex MZV evaluator."""
    return sum(float(c) * evaluate_monomial(m) for m, c in row.coeffs.items())


def sv_depth2_book_residual(a: int, b: int, z: complex) -> float:
    """|direct depth-2 single-valued formula - symbolic expansion| at z.

    The symbolic side is the word coefficient of the single-valued series
    built in the associator module, evaluated with numeric polylogarithms
    and zeta values; the direct side is the closed-form depth-2 display.
    """
    from .associator import single_valued_g0_coefficient

    sym = single_valued_g0_coefficient((a, b))
    lhs = evaluate_symbol_poly(sym, z=z)
    rhs = sv_depth2_direct(a, b, z)
    return abs(lhs - rhs)
