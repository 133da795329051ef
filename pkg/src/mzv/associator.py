"""Associator-type group-like series, their twisted composition law, and
the machinery that verifies the worked identities.

Symbolic associators are parameterized by free character coordinates
(lambda symbols) on Lyndon words of weight >= 2; zeta symbols of every
flavor are derived expressions: the flavor's zeta value at an index is
the sign-adjusted word coefficient of the corresponding series.  All
equality checks between displayed formulas happen in the lambda
polynomial ring after substituting each side's zeta symbols by their
lambda expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .braid import BraidElement, evaluate_series
from .rings import SYMBOLIC, Ring, complex_ring
from .ratfunc import RatFunc, poly_from_coeffs
from .series import NCSeries, character_series, is_group_like
from .shufflealg import index_of_word, is_convergent_word, word_of_index
from .symbols import (
    ARG_ABS_Z_SQ,
    ARG_Z,
    ARG_Z_CONJ,
    ARG_Z_POW_P,
    LambdaSym,
    LiSym,
    LogSym,
    SymbolPoly,
    ZetaSym,
    formal_derivative,
)
from .words import Word, lyndon_words

COMPLEX_KZ = "complex_KZ"
PADIC_KZ = "padic_KZ"
PADIC_DELIGNE = "padic_Deligne"
MINUS_KZ = "minus_KZ"
SYMBOLIC_LAMBDA = "symbolic_lambda"
FLAVORS = (COMPLEX_KZ, PADIC_KZ, PADIC_DELIGNE, MINUS_KZ, SYMBOLIC_LAMBDA)

# -- Grothendieck-Teichmueller pairs ------------------------------------------


@dataclass(frozen=True)
class GTPair:
    c: object
    g: NCSeries

    def validate(self) -> "GTPair":
        ring = self.g.ring
        if not ring.is_unit(self.c):
            raise ValueError("the scalar of a GT pair must be invertible")
        for letter in ("A", "B"):
            if not ring.is_zero(self.g[letter]):
                raise ValueError("GT pair series must have vanishing letter coefficients")
        if not is_group_like(self.g):
            raise ValueError("GT pair series must be group-like")
        return self


def gt_unit(ring: Ring, truncation: int) -> GTPair:
    return GTPair(ring.one, NCSeries.one(ring, truncation))


def _twisted_images(g: NCSeries, c_inv, truncation: int) -> tuple[NCSeries, NCSeries]:
    ring = g.ring
    img_a = NCSeries.letter(ring, "A", truncation, coeff=c_inv)
    b = NCSeries.letter(ring, "B", truncation, coeff=c_inv)
    img_b = g.invert() * b * g
    return img_a, img_b


def gt_compose(p2: GTPair, p1: GTPair) -> GTPair:
    """(c2,g2) o (c1,g1) = (c1 c2, g2 * g1(A/c2, g2^-1 (B/c2) g2))."""
    ring = p2.g.ring
    if not ring.compatible(p1.g.ring):
        raise ValueError("GT pairs over incompatible rings")
    n = min(p1.g.truncation, p2.g.truncation)
    if not ring.is_unit(p2.c):
        raise ValueError("the scalar of a GT pair must be invertible")
    img_a, img_b = _twisted_images(p2.g.truncate(n), ring.invert(p2.c), n)
    return GTPair(p1.c * p2.c, p2.g.truncate(n) * p1.g.substitute(img_a, img_b))


def substitution_preimage(target: NCSeries, img_a: NCSeries, img_b: NCSeries) -> NCSeries:
    """Solve substitute(h, img_a, img_b) == target by weight recursion.

    The images must be a letter scaled by a unit plus higher-weight terms,
    so the substitution is weight-triangular and the preimage unique.
    """
    ring = target.ring
    n = target.truncation
    sa, sb = img_a["A"], img_b["B"]
    if not (ring.is_unit(sa) and ring.is_unit(sb)):
        raise ValueError("substitution images need unit letter coefficients")
    sa_inv, sb_inv = ring.invert(sa), ring.invert(sb)
    h = NCSeries.zero(ring, n)
    for _ in range(n + 2):
        r = target - h.substitute(img_a, img_b)
        if r.is_zero():
            return h
        low = min(w.weight for w in r.coeffs)
        fix = {}
        for w, c in r.weight_part(low).items():
            scale = ring.one
            for letter in w.letters:
                scale = scale * (sa_inv if letter == "A" else sb_inv)
            fix[w] = c * scale
        h = h + NCSeries(ring, n, fix)
    raise AssertionError("substitution preimage did not converge; images may not be triangular")


def gt_invert(p: GTPair) -> GTPair:
    ring = p.g.ring
    n = p.g.truncation
    c_inv = ring.invert(p.c)
    img_a, img_b = _twisted_images(p.g, c_inv, n)
    h = substitution_preimage(p.g.invert(), img_a, img_b)
    return GTPair(c_inv, h)


# -- symbolic and numeric associator builders ----------------------------------


@lru_cache(maxsize=None)
def build_symbolic_associator(tag: str, truncation: int) -> NCSeries:
    """Group-like series with free lambda coordinates on Lyndon words of
    weight >= 2 and vanishing letter coefficients."""
    assignments = {}
    for w in lyndon_words(truncation):
        if w.weight >= 2:
            assignments[w] = SymbolPoly.gen(LambdaSym(tag, w.letters))
    return character_series(assignments, truncation, SYMBOLIC)


@lru_cache(maxsize=None)
def build_numeric_kz(truncation: int, tolerance: float = 1e-9) -> NCSeries:
    """The complex associator with numeric multiple zeta value coefficients."""
    from .arch_eval import mzv

    ring = complex_ring(tolerance)
    assignments = {}
    for w in lyndon_words(truncation):
        if w.weight >= 2 and is_convergent_word(w):
            entries, sign = index_of_word(w)
            assignments[w] = complex(sign * mzv(entries))
    return character_series(assignments, truncation, ring)


def build_associator(flavor: str, truncation: int, p: int | None = None) -> NCSeries:
    if flavor == COMPLEX_KZ:
        return build_numeric_kz(truncation)
    if flavor in (PADIC_KZ,):
        return build_symbolic_associator("p", truncation)
    if flavor == SYMBOLIC_LAMBDA:
        return build_symbolic_associator("c", truncation)
    if flavor == PADIC_DELIGNE:
        if p is None:
            raise ValueError("the Deligne-type associator needs the prime p")
        return solve_deligne(build_symbolic_associator("p", truncation), p)
    if flavor == MINUS_KZ:
        return solve_minus(build_symbolic_associator("c", truncation))
    raise ValueError(f"unknown flavor {flavor!r}; pick one of {FLAVORS}")


def zeta_lambda_expr(series: NCSeries, index: tuple[int, ...]) -> SymbolPoly:
    """The flavor's zeta value at `index` as a polynomial in lambda symbols:
    the sign-adjusted word coefficient of the series."""
    word, sign = word_of_index(index)
    return Fraction(sign) * series[word]


@lru_cache(maxsize=None)
def _zeta_substitution_table(truncation: int, p: int | None):
    from .shufflealg import admissible_indices

    table: dict[object, SymbolPoly] = {}
    phi_p = build_symbolic_associator("p", truncation)
    phi_c = build_symbolic_associator("c", truncation)
    per_flavor = {"p-adic": phi_p, "complex": phi_c}
    if p is not None:
        per_flavor["p-adic-Deligne"] = solve_deligne(phi_p, p)
    for flavor, series in per_flavor.items():
        for weight in range(2, truncation + 1):
            for idx in admissible_indices(weight):
                table[ZetaSym(flavor, idx)] = zeta_lambda_expr(series, idx)
    return table


def substitute_zeta_symbols(poly: SymbolPoly, truncation: int, p: int | None = None) -> SymbolPoly:
    """Replace every zeta symbol by its lambda expression; zeta at index (1)
    of any flavor is regularized to zero."""
    mapping = dict(_zeta_substitution_table(truncation, p))
    for g in poly.generators():
        if isinstance(g, ZetaSym) and g.index == (1,):
            mapping[g] = SymbolPoly.ZERO
    return poly.substitute(mapping)


# -- twisted self-referential solvers -------------------------------------------


def _solve_twisted(phi: NCSeries, scale) -> NCSeries:
    """Solve G = phi * substitute(phi, scale*A, G^-1 (scale*B) G)^-1.

    The conjugation by G only involves strictly lower weights of G, so
    iterating from G = 1 fixes one extra weight per pass.
    """
    ring = phi.ring
    n = phi.truncation
    s = ring.from_fraction(scale) if isinstance(scale, (int, Fraction)) else scale
    g = NCSeries.one(ring, n)
    for _ in range(n + 1):
        img_a = NCSeries.letter(ring, "A", n, coeff=s)
        img_b = g.invert() * NCSeries.letter(ring, "B", n, coeff=s) * g
        nxt = phi * phi.substitute(img_a, img_b).invert()
        if nxt == g:
            return g
        g = nxt
    return g


def solve_deligne(phi_kz: NCSeries, p: int) -> NCSeries:
    """The Frobenius-quotient associator determined by phi_kz and p."""
    return _solve_twisted(phi_kz, Fraction(1, p))


def solve_minus(phi_kz: NCSeries) -> NCSeries:
    """The complex-conjugation quotient of the associator (scale -1)."""
    return _solve_twisted(phi_kz, Fraction(-1))


def comparison_residual(phi_kz: NCSeries, g: NCSeries, scale) -> NCSeries:
    """phi_kz - g * substitute(phi_kz, scale*A, g^-1 (scale*B) g); exact zero
    certifies the twisted-quotient identity."""
    ring = phi_kz.ring
    n = min(phi_kz.truncation, g.truncation)
    s = ring.from_fraction(scale) if isinstance(scale, (int, Fraction)) else scale
    img_a = NCSeries.letter(ring, "A", n, coeff=s)
    img_b = g.invert() * NCSeries.letter(ring, "B", n, coeff=s) * g
    return phi_kz.truncate(n) - g.truncate(n) * phi_kz.truncate(n).substitute(img_a, img_b)


# -- Frobenius / infinity / period substitutions --------------------------------


def frobenius_substitution(f: NCSeries, phi_de: NCSeries, p: int) -> NCSeries:
    """A -> A/p, B -> phi_de^-1 (B/p) phi_de."""
    ring = f.ring
    n = min(f.truncation, phi_de.truncation)
    inv_p = ring.from_fraction(Fraction(1, p))
    img_a = NCSeries.letter(ring, "A", n, coeff=inv_p)
    img_b = phi_de.invert() * NCSeries.letter(ring, "B", n, coeff=inv_p) * phi_de
    return f.substitute(img_a, img_b)


def infinity_substitution(f: NCSeries, phi_minus: NCSeries) -> NCSeries:
    """A -> -A, B -> phi_minus^-1 (-B) phi_minus."""
    ring = f.ring
    n = min(f.truncation, phi_minus.truncation)
    minus_one = ring.from_fraction(-1)
    img_a = NCSeries.letter(ring, "A", n, coeff=minus_one)
    img_b = phi_minus.invert() * NCSeries.letter(ring, "B", n, coeff=minus_one) * phi_minus
    return f.substitute(img_a, img_b)


def period_substitution(f: NCSeries, phi_kz: NCSeries, two_pi_i=None) -> NCSeries:
    """A -> 2*pi*i*A, B -> phi_kz^-1 (2*pi*i*B) phi_kz."""
    ring = f.ring
    n = min(f.truncation, phi_kz.truncation)
    mu = two_pi_i if two_pi_i is not None else 2j * math.pi
    img_a = NCSeries.letter(ring, "A", n, coeff=mu)
    img_b = phi_kz.invert() * NCSeries.letter(ring, "B", n, coeff=mu) * phi_kz
    return f.substitute(img_a, img_b)


# -- fundamental-solution builders ----------------------------------------------


@lru_cache(maxsize=None)
def g0_symbolic(arg: str, truncation: int, li_flavor: str = "plain") -> NCSeries:
    """The fundamental-solution series at the given argument tag.

    Character values on Lyndon words: A maps to log(arg), B to -Li_1(arg),
    and every other Lyndon word to its (-1)^depth-signed Li symbol.
    """
    assignments: dict[Word, SymbolPoly] = {
        Word("A"): SymbolPoly.gen(LogSym(arg)),
        Word("B"): -SymbolPoly.gen(LiSym(li_flavor, (1,), arg)),
    }
    for w in lyndon_words(truncation):
        if w.weight >= 2:
            entries, sign = index_of_word(w)
            assignments[w] = SymbolPoly.gen(LiSym(li_flavor, entries, arg), Fraction(sign))
    return character_series(assignments, truncation, SYMBOLIC)


@lru_cache(maxsize=None)
def overconvergent_g0(p: int, truncation: int) -> NCSeries:
    """G0(z) * [G0 at z^p twisted by the Frobenius substitution]^-1.

    The word coefficients, sign-adjusted, define the overconvergent
    polylogarithm expressions.
    """
    phi_de = solve_deligne(build_symbolic_associator("p", truncation), p)
    base = g0_symbolic(ARG_Z, truncation)
    shifted = g0_symbolic(ARG_Z_POW_P, truncation)
    return base * frobenius_substitution(shifted, phi_de, p).invert()


@lru_cache(maxsize=None)
def single_valued_g0(truncation: int) -> NCSeries:
    """G0(z) * [G0 at zbar twisted by the infinity substitution]^-1."""
    phi_minus = solve_minus(build_symbolic_associator("c", truncation))
    base = g0_symbolic(ARG_Z, truncation)
    conj = g0_symbolic(ARG_Z_CONJ, truncation)
    return base * infinity_substitution(conj, phi_minus).invert()


def dagger_coefficient(index: tuple[int, ...], p: int, truncation: int | None = None) -> SymbolPoly:
    """The overconvergent polylogarithm at `index` as a symbol expression."""
    n = truncation if truncation is not None else max(sum(index), 2)
    word, sign = word_of_index(index)
    return Fraction(sign) * overconvergent_g0(p, n)[word]


def single_valued_g0_coefficient(index: tuple[int, ...], truncation: int | None = None) -> SymbolPoly:
    """The single-valued polylogarithm at `index` as a symbol expression."""
    n = truncation if truncation is not None else max(sum(index), 2)
    word, sign = word_of_index(index)
    return Fraction(sign) * single_valued_g0(n)[word]


def canonicalize_li_symbols(poly: SymbolPoly) -> SymbolPoly:
    """Rewrite Li symbols at non-Lyndon indices into the Lyndon generators.

    The one-variable polylogarithms satisfy the interleaving shuffle
    relations, so any index whose word is not a Lyndon word equals the
    corresponding word coefficient of the fundamental solution, a
    polynomial in Lyndon-index symbols.
    """
    mapping: dict[object, SymbolPoly] = {}
    for g in poly.generators():
        if isinstance(g, LiSym):
            word, sign = word_of_index(g.index)
            if not word.is_lyndon():
                table = g0_symbolic(g.arg, word.weight, g.flavor)
                mapping[g] = Fraction(sign) * table[word]
    return poly.substitute(mapping) if mapping else poly


def rewrite_logs(poly: SymbolPoly, p: int | None = None) -> SymbolPoly:
    """Apply log(z^p) = p log(z) and log|z|^2 = log z + log zbar."""
    mapping: dict[object, SymbolPoly] = {}
    for g in poly.generators():
        if isinstance(g, LogSym) and g.arg == ARG_Z_POW_P:
            if p is None:
                raise ValueError("rewriting log(z^p) needs the prime p")
            mapping[g] = Fraction(p) * SymbolPoly.gen(LogSym(ARG_Z))
        if isinstance(g, LogSym) and g.arg == ARG_ABS_Z_SQ:
            mapping[g] = SymbolPoly.gen(LogSym(ARG_Z)) + SymbolPoly.gen(LogSym(ARG_Z_CONJ))
    return poly.substitute(mapping) if mapping else poly


def rewrite_series_logs(f: NCSeries, p: int | None = None) -> NCSeries:
    return NCSeries(f.ring, f.truncation, {w: rewrite_logs(c, p) for w, c in f.coeffs.items()})


# -- differential-equation residuals ---------------------------------------------


def _kz_operator(truncation: int) -> NCSeries:
    one_over_z = RatFunc(poly_from_coeffs([1]), poly_from_coeffs([0, 1]))
    one_over_zm1 = RatFunc(poly_from_coeffs([1]), poly_from_coeffs([-1, 1]))
    return NCSeries(SYMBOLIC, truncation, {
        Word("A"): SymbolPoly.constant(one_over_z),
        Word("B"): SymbolPoly.constant(one_over_zm1),
    })


def verify_kz_equation(g: NCSeries, p: int | None = None,
                       frobenius_conjugator: NCSeries | None = None) -> NCSeries:
    """Residual of the differential equation satisfied by a fundamental
    solution: dG - (A/z + B/(z-1)) G, minus the right-multiplier term
    G (A dz^p/(p z^p) + conj(B) dz^p/(p(z^p-1))) when a Frobenius
    conjugator is supplied (the modified equation for the overconvergent
    solution).  The result must be identically zero in the symbol ring.
    """
    n = g.truncation
    dg = NCSeries(SYMBOLIC, n, {w: formal_derivative(c, p) for w, c in g.coeffs.items()})
    residual = dg - _kz_operator(n) * g
    if frobenius_conjugator is not None:
        if p is None:
            raise ValueError("the modified equation needs the prime p")
        conj = frobenius_conjugator.invert() * NCSeries.letter(SYMBOLIC, "B", n) * frobenius_conjugator
        weight = RatFunc(poly_from_coeffs([0] * (p - 1) + [1]),
                         poly_from_coeffs([-1] + [0] * (p - 1) + [1]))
        right = NCSeries(SYMBOLIC, n, {Word("A"): SymbolPoly.constant(
            RatFunc(poly_from_coeffs([1]), poly_from_coeffs([0, 1])))})
        right = right + conj.scale(SymbolPoly.constant(weight))
        residual = residual + g * right
    # derivatives mint Li symbols at non-Lyndon indices; reduce them to the
    # Lyndon parameterization so that exact zero is decidable
    return NCSeries(SYMBOLIC, n, {w: canonicalize_li_symbols(c) for w, c in residual.coeffs.items()})


# -- defining relations of the twisted composition group -------------------------


def _exp_letter(ring: Ring, letters: dict[str, object], truncation: int) -> NCSeries:
    acc = NCSeries.zero(ring, truncation)
    for name, coeff in letters.items():
        acc = acc + NCSeries.letter(ring, name, truncation, coeff=coeff)
    return acc.exp()


def verify_grt_relations(phi: NCSeries, truncation: int | None = None,
                         hexagon_scale=None, pentagon: bool = True) -> dict[str, object]:
    """Residuals of the defining relations.

    rel0: the letter coefficients of log(phi) (must vanish) plus the
    group-like flag; rel_i: phi(A,B) phi(B,A) - 1; rel_ii: the three-cycle
    product with C = -A-B, optionally dressed with exp(mu*X/2) factors
    between the three terms (mu = 0 gives the plain product, mu = 2*pi*i
    is the complex associator's hexagon); rel_iii: the five-cycle pentagon
    in the reduced braid algebra.  Residual series/elements are returned;
    symbolic coefficients are polynomial constraints.
    """
    n = min(truncation, phi.truncation) if truncation is not None else phi.truncation
    phi = phi.truncate(n)
    ring = phi.ring
    one = NCSeries.one(ring, n)
    a = NCSeries.letter(ring, "A", n)
    b = NCSeries.letter(ring, "B", n)
    c = -a - b

    log_phi = phi.log()
    rel0 = {
        "group_like": is_group_like(phi),
        "letter_A": log_phi["A"],
        "letter_B": log_phi["B"],
    }
    rel_i = phi * phi.substitute(b, a) - one

    factors = [phi.substitute(c, a), phi.substitute(b, c), phi]
    if hexagon_scale is not None and hexagon_scale != 0:
        mu = hexagon_scale
        half = mu * 0.5 if not isinstance(mu, (int, Fraction)) else Fraction(mu, 2)
        e_a = _exp_letter(ring, {"A": half}, n)
        e_c = _exp_letter(ring, {"A": -half, "B": -half}, n)
        e_b = _exp_letter(ring, {"B": half}, n)
        rel_ii = e_a * factors[0] * e_c * factors[1] * e_b * factors[2] - one
    else:
        rel_ii = factors[0] * factors[1] * factors[2] - one

    report: dict[str, object] = {"rel0": rel0, "rel_i": rel_i, "rel_ii": rel_ii}
    if pentagon:
        cap = n
        pairs = [(1, 2, 2, 3), (3, 4, 4, 5), (5, 1, 1, 2), (2, 3, 3, 4), (4, 5, 5, 1)]
        unit = ring.one
        acc = BraidElement.one(cap, unit=unit)
        for i, j, k, l in pairs:
            x = BraidElement.generator(i, j, cap, unit=unit)
            y = BraidElement.generator(k, l, cap, unit=unit)
            acc = acc * evaluate_series(phi, x, y, cap)
        report["rel_iii"] = acc - BraidElement.one(cap, unit=unit)
    return report


def grt_residual_norm(report: dict[str, object]) -> float:
    """Largest absolute residual coefficient across the numeric relations."""
    out = 0.0
    for key in ("rel_i", "rel_ii"):
        series = report[key]
        for c in series.coeffs.values():
            out = max(out, abs(c))
    rel0 = report["rel0"]
    out = max(out, abs(rel0["letter_A"]), abs(rel0["letter_B"]))
    if "rel_iii" in report:
        out = max(out, report["rel_iii"].max_abs())
    return out


def complex_hexagon_scale() -> complex:
    return 2j * math.pi


# -- Lie leading terms -------------------------------------------------------------


def ad_power_bracket(m: int, ring: Ring, truncation: int) -> NCSeries:
    """(ad A)^(m-1)(B) expanded in words."""
    coeffs = {}
    for j in range(m):
        w = Word("A" * (m - 1 - j) + "B" + "A" * j)
        coeffs[w] = ring.from_fraction(Fraction((-1) ** j * math.comb(m - 1, j)))
    return NCSeries(ring, truncation, coeffs)


def lie_leading_term(phi: NCSeries, m: int):
    """Coefficient of A^(m-1) B in log(phi) and the matching coordinate on
    (ad A)^(m-1)(B) in the Lie basis.

    The single-B weight-m part of a Lie series is a multiple of the
    iterated bracket, so the two agree; the full single-B part is checked
    against the bracket expansion.
    """
    if m < 2 or m > phi.truncation:
        raise ValueError("need 2 <= m <= truncation")
    ring = phi.ring
    log_phi = phi.log()
    lead = log_phi[Word("A" * (m - 1) + "B")]
    bracket = ad_power_bracket(m, ring, phi.truncation)
    for w, c in bracket.coeffs.items():
        got = log_phi[w]
        want = lead * c
        if not ring.is_zero(got - want):
            raise AssertionError(f"single-B part of log(phi) at weight {m} is not a bracket multiple")
    return lead, lead


# -- worked-identity formulas -----------------------------------------------------


def _zeta_p(index) -> SymbolPoly:
    idx = tuple(index) if not isinstance(index, tuple) else index
    if idx == (1,):
        return SymbolPoly.ZERO
    return SymbolPoly.gen(ZetaSym("p-adic", idx))


def _zeta_de(index) -> SymbolPoly:
    return SymbolPoly.gen(ZetaSym("p-adic-Deligne", tuple(index)))


def deligne_depth1_formula(k: int, p: int) -> SymbolPoly:
    """zetaDe(k) = (1 - p^-k) zeta_p(k)."""
    return (1 - Fraction(1, p**k)) * _zeta_p((k,))


def deligne_depth2_formula(a: int, b: int, p: int) -> SymbolPoly:
    """The depth-2 comparison between the two p-adic zeta flavors."""
    q = lambda e: Fraction(1, p**e)
    out = (1 - q(a + b)) * _zeta_p((a, b))
    out = out - (q(b) - q(a + b)) * _zeta_p((a,)) * _zeta_p((b,))
    for r in range(a):
        out = out - Fraction((-1) ** r) * (q(a - r) - q(a + b)) * math.comb(b - 1 + r, b - 1) * _zeta_p((a - r,)) * _zeta_p((b + r,))
    for s in range(b):
        out = out - Fraction((-1) ** a) * (q(b - s) - q(a + b)) * math.comb(a - 1 + s, a - 1) * _zeta_p((a + s,)) * _zeta_p((b - s,))
    return out


def check_deligne_depth1(k: int, p: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(k, 2)
    phi_de = build_associator(PADIC_DELIGNE, n, p)
    lhs = zeta_lambda_expr(phi_de, (k,))
    rhs = substitute_zeta_symbols(deligne_depth1_formula(k, p), n, p)
    return (lhs - rhs).is_zero()


def check_deligne_depth2(a: int, b: int, p: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(a + b, 2)
    phi_de = build_associator(PADIC_DELIGNE, n, p)
    lhs = zeta_lambda_expr(phi_de, (a, b))
    rhs = substitute_zeta_symbols(deligne_depth2_formula(a, b, p), n, p)
    return (lhs - rhs).is_zero()


def _li(index, arg: str) -> SymbolPoly:
    return SymbolPoly.gen(LiSym("plain", tuple(index), arg))


def dagger_depth1_formula(k: int, p: int) -> SymbolPoly:
    """Li-dagger_k(z) = Li_k(z) - p^-k Li_k(z^p)."""
    return _li((k,), ARG_Z) - Fraction(1, p**k) * _li((k,), ARG_Z_POW_P)


def dagger_depth2_formula(a: int, b: int, p: int) -> SymbolPoly:
    """The depth-2 overconvergent polylogarithm in plain polylogarithms."""
    q = lambda e: Fraction(1, p**e)
    out = _li((a, b), ARG_Z) - q(a + b) * _li((a, b), ARG_Z_POW_P)
    out = out - (q(b) - q(a + b)) * _zeta_p((a,)) * _li((b,), ARG_Z_POW_P)
    for r in range(a):
        inner = _li((b + r,), ARG_Z) - q(b + r) * _li((b + r,), ARG_Z_POW_P)
        out = out - Fraction((-1) ** r) * q(a - r) * math.comb(b - 1 + r, r) * _li((a - r,), ARG_Z_POW_P) * inner
    for s in range(b):
        out = out - Fraction((-1) ** a) * (q(b - s) - q(a + b)) * math.comb(a - 1 + s, a - 1) * _zeta_p((a + s,)) * _li((b - s,), ARG_Z_POW_P)
    return out


def check_dagger_depth1(k: int, p: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(k, 2)
    lhs = canonicalize_li_symbols(rewrite_logs(dagger_coefficient((k,), p, n), p))
    rhs = canonicalize_li_symbols(substitute_zeta_symbols(dagger_depth1_formula(k, p), n, p))
    return (lhs - rhs).is_zero()


def check_dagger_depth2(a: int, b: int, p: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(a + b, 2)
    lhs = canonicalize_li_symbols(rewrite_logs(dagger_coefficient((a, b), p, n), p))
    rhs = canonicalize_li_symbols(substitute_zeta_symbols(dagger_depth2_formula(a, b, p), n, p))
    return (lhs - rhs).is_zero()


def _zeta_c(index) -> SymbolPoly:
    idx = tuple(index)
    if idx == (1,):
        return SymbolPoly.ZERO
    return SymbolPoly.gen(ZetaSym("complex", idx))


def sv_depth1_formula(k: int) -> SymbolPoly:
    """Li-minus_k(z) = Li_k(z) - sum (-1)^(k-a) (log|z|^2)^a / a! Li_(k-a)(zbar)."""
    ell = SymbolPoly.gen(LogSym(ARG_ABS_Z_SQ))
    out = _li((k,), ARG_Z)
    for a in range(k):
        out = out - Fraction((-1) ** (k - a), math.factorial(a)) * ell**a * _li((k - a,), ARG_Z_CONJ)
    return out


def sv_depth2_formula(a: int, b: int) -> SymbolPoly:
    """The depth-2 single-valued polylogarithm in plain polylogarithms."""
    ell = SymbolPoly.gen(LogSym(ARG_ABS_Z_SQ))
    out = _li((a, b), ARG_Z)
    for r in range(a):
        for s in range(r + 1):
            outer = (Fraction((-1) ** (a + r + s) * math.comb(b - 1 + s, s), math.factorial(r - s))
                     * ell ** (r - s) * _li((a - r,), ARG_Z_CONJ))
            inner = _li((b + s,), ARG_Z)
            for w in range(b + s):
                inner = inner - Fraction((-1) ** (b + s + w), math.factorial(w)) * ell**w * _li((b + s - w,), ARG_Z_CONJ)
            out = out - outer * inner
    for u in range(b):
        bracket = Fraction((-1) ** (a + b + u)) * _li((a, b - u), ARG_Z_CONJ)
        bracket = bracket + Fraction((-1) ** (b + u) - (-1) ** (a + b + u)) * _zeta_c((a,)) * _li((b - u,), ARG_Z_CONJ)
        for v in range(b - u):
            bracket = bracket + (Fraction((-1) ** (a + b + u + v) - (-1) ** (b + u)) * math.comb(a + v - 1, a - 1)
                                 * _zeta_c((a + v,)) * _li((b - u - v,), ARG_Z_CONJ))
        out = out - Fraction(1, math.factorial(u)) * ell**u * bracket
    return out


def check_sv_depth1(k: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(k, 2)
    lhs = canonicalize_li_symbols(single_valued_g0_coefficient((k,), n))
    rhs = canonicalize_li_symbols(substitute_zeta_symbols(rewrite_logs(sv_depth1_formula(k)), n))
    return (lhs - rhs).is_zero()


def check_sv_depth2(a: int, b: int, truncation: int | None = None) -> bool:
    n = truncation if truncation is not None else max(a + b, 2)
    lhs = canonicalize_li_symbols(single_valued_g0_coefficient((a, b), n))
    rhs = canonicalize_li_symbols(substitute_zeta_symbols(rewrite_logs(sv_depth2_formula(a, b)), n))
    return (lhs - rhs).is_zero()
