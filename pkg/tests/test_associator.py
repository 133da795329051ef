import math
import random
from fractions import Fraction

import pytest

from mzv.arch_eval import mzv
from mzv.associator import (
    COMPLEX_KZ,
    MINUS_KZ,
    PADIC_DELIGNE,
    PADIC_KZ,
    GTPair,
    ad_power_bracket,
    build_associator,
    build_numeric_kz,
    build_symbolic_associator,
    check_dagger_depth1,
    check_dagger_depth2,
    check_deligne_depth1,
    check_deligne_depth2,
    check_sv_depth1,
    check_sv_depth2,
    comparison_residual,
    complex_hexagon_scale,
    dagger_coefficient,
    frobenius_substitution,
    g0_symbolic,
    gt_compose,
    gt_invert,
    gt_unit,
    infinity_substitution,
    lie_leading_term,
    overconvergent_g0,
    period_substitution,
    rewrite_logs,
    single_valued_g0,
    solve_deligne,
    solve_minus,
    verify_grt_relations,
    verify_kz_equation,
    zeta_lambda_expr,
    grt_residual_norm,
)
from mzv.rings import QQ, SYMBOLIC, complex_ring
from mzv.series import NCSeries, character_series, is_group_like
from mzv.symbols import ARG_Z, ARG_Z_CONJ, LiSym, LogSym, SymbolPoly
from mzv.words import lyndon_words


def _random_pair(rng, n=4):
    assignments = {w: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                   for w in lyndon_words(n) if w.weight >= 2}
    return GTPair(Fraction(rng.choice([1, 2, 3, -2, 5])), character_series(assignments, n, QQ))


def test_gt_unit_and_validation():
    u = gt_unit(QQ, 4).validate()
    rng = random.Random(0)
    x = _random_pair(rng)
    c = gt_compose(u, x)
    assert c.c == x.c and c.g == x.g
    with pytest.raises(ValueError):
        GTPair(Fraction(0), NCSeries.one(QQ, 3)).validate()
    bad = NCSeries.one(QQ, 3) + NCSeries.letter(QQ, "A", 3)
    with pytest.raises(ValueError):
        GTPair(Fraction(1), bad).validate()


def test_gt_inverse_two_sided():
    rng = random.Random(1)
    for _ in range(6):
        x = _random_pair(rng)
        xi = gt_invert(x)
        for left, right in ((x, xi), (xi, x)):
            c = gt_compose(left, right)
            assert c.c == 1 and c.g == NCSeries.one(QQ, 4)


def test_gt_associativity_exact():
    rng = random.Random(2)
    for _ in range(6):
        x, y, z = (_random_pair(rng) for _ in range(3))
        lhs = gt_compose(gt_compose(x, y), z)
        rhs = gt_compose(x, gt_compose(y, z))
        assert lhs.c == rhs.c and lhs.g == rhs.g


def test_gt_associativity_symbolic():
    phi = build_symbolic_associator("p", 3)
    one = SYMBOLIC.from_fraction(1)
    x = GTPair(SYMBOLIC.from_fraction(2), phi)
    y = GTPair(SYMBOLIC.from_fraction(3), phi.substitute(
        NCSeries.letter(SYMBOLIC, "B", 3), NCSeries.letter(SYMBOLIC, "A", 3)))
    z = GTPair(one, phi)
    lhs = gt_compose(gt_compose(x, y), z)
    rhs = gt_compose(x, gt_compose(y, z))
    assert SYMBOLIC.eq(lhs.c, rhs.c) and lhs.g == rhs.g


def test_composition_recovers_twisted_quotient():
    # (p, solved) == (p, phi) o (1, phi)^(-1) at weight 5
    p = 3
    phi = build_symbolic_associator("p", 5)
    de = solve_deligne(phi, p)
    lhs = GTPair(SYMBOLIC.from_fraction(p), de)
    rhs = gt_compose(GTPair(SYMBOLIC.from_fraction(p), phi),
                     gt_invert(GTPair(SYMBOLIC.from_fraction(1), phi)))
    assert SYMBOLIC.eq(lhs.c, rhs.c)
    assert lhs.g == rhs.g


def test_solver_fixes_the_identity_exactly():
    for p in (2, 7):
        phi = build_symbolic_associator("p", 4)
        de = solve_deligne(phi, p)
        assert is_group_like(de)
        assert comparison_residual(phi, de, Fraction(1, p)).is_zero()
    phi = build_symbolic_associator("c", 4)
    minus = solve_minus(phi)
    assert is_group_like(minus)
    assert comparison_residual(phi, minus, Fraction(-1)).is_zero()


def test_solver_trivial_input():
    one = NCSeries.one(SYMBOLIC, 4)
    assert solve_deligne(one, 5) == one


def test_depth1_and_depth2_comparison_formulas():
    for p in (2, 5):
        assert check_deligne_depth1(2, p, 4)
        assert check_deligne_depth1(3, p, 4)
        assert check_deligne_depth2(1, 2, p, 4)
        assert check_deligne_depth2(2, 2, p, 4)
        assert check_deligne_depth2(1, 3, p, 4)


def test_weight2_comparison_coefficient():
    # weight-2: zetaDe(2) = (1 - p^-2) zeta_p(2) read off directly
    p = 5
    phi = build_symbolic_associator("p", 2)
    de = solve_deligne(phi, p)
    lhs = zeta_lambda_expr(de, (2,))
    rhs = (1 - Fraction(1, p**2)) * zeta_lambda_expr(phi, (2,))
    assert (lhs - rhs).is_zero()


def test_substitution_wrappers():
    a = NCSeries.letter(SYMBOLIC, "A", 3)
    b = NCSeries.letter(SYMBOLIC, "B", 3)
    one = NCSeries.one(SYMBOLIC, 3)
    # infinity twist sends A to -A
    assert infinity_substitution(a, one) == -a
    # trivial conjugator: B maps to B/p
    assert frobenius_substitution(b, one, 5) == b.scale(Fraction(1, 5))
    # period map applied twice with trivial conjugator scales A by (2 pi i)^2
    ring = complex_ring(1e-9)
    ac = NCSeries.letter(ring, "A", 3)
    onec = NCSeries.one(ring, 3)
    twice = period_substitution(period_substitution(ac, onec), onec)
    mu = 2j * math.pi
    assert abs(twice["A"] - mu * mu) < 1e-9


def test_g0_low_coefficients():
    g0 = g0_symbolic(ARG_Z, 4)
    log = SymbolPoly.gen(LogSym(ARG_Z))
    li1 = SymbolPoly.gen(LiSym("plain", (1,), ARG_Z))
    assert (g0["A"] - log).is_zero()
    assert (g0["B"] + li1).is_zero()
    assert (g0["AA"] - Fraction(1, 2) * log * log).is_zero()
    assert is_group_like(g0)


def test_overconvergent_and_single_valued_are_group_like():
    assert is_group_like(overconvergent_g0(3, 4))
    assert is_group_like(single_valued_g0(4))


def test_overconvergent_letter_a_vanishes():
    for p in (3, 5):
        coeff = rewrite_logs(overconvergent_g0(p, 4)["A"], p)
        assert coeff.is_zero()


def test_single_valued_letter_a():
    coeff = single_valued_g0(4)["A"]
    want = SymbolPoly.gen(LogSym(ARG_Z)) + SymbolPoly.gen(LogSym(ARG_Z_CONJ))
    assert (coeff - want).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_overconvergent_formulas(p):
    for k in (1, 2, 3, 4):
        assert check_dagger_depth1(k, p, 4)
    assert check_dagger_depth2(1, 2, p, 4)


def test_single_valued_formulas():
    for k in (1, 2, 3, 4):
        assert check_sv_depth1(k, 4)
    assert check_sv_depth2(1, 2, 4)


def test_kz_residuals():
    from mzv.ratfunc import RatFunc, poly_from_coeffs

    assert verify_kz_equation(g0_symbolic(ARG_Z, 4)).is_zero()
    one = NCSeries.one(SYMBOLIC, 3)
    res = verify_kz_equation(one)
    # constants are not solutions: residual is minus the connection applied to 1
    minus_inv_z = SymbolPoly.constant(RatFunc(poly_from_coeffs([-1]), poly_from_coeffs([0, 1])))
    minus_inv_zm1 = SymbolPoly.constant(RatFunc(poly_from_coeffs([-1]), poly_from_coeffs([-1, 1])))
    assert (res["A"] - minus_inv_z).is_zero()
    assert (res["B"] - minus_inv_zm1).is_zero()
    assert all(res[w].is_zero() for w in res.words() if w.weight > 1)
    p = 3
    phi_de = solve_deligne(build_symbolic_associator("p", 4), p)
    res2 = verify_kz_equation(overconvergent_g0(p, 4), p=p, frobenius_conjugator=phi_de)
    assert res2.is_zero()


def test_grt_trivial_input():
    one = NCSeries.one(QQ, 4)
    rep = verify_grt_relations(one, 4)
    assert rep["rel0"]["group_like"]
    assert rep["rel_i"].is_zero() and rep["rel_ii"].is_zero()
    assert rep["rel_iii"].is_zero()


def test_grt_numeric_relations():
    phi = build_numeric_kz(4)
    rep = verify_grt_relations(phi, 4, hexagon_scale=complex_hexagon_scale())
    assert rep["rel0"]["group_like"]
    assert grt_residual_norm(rep) < 1e-6


def test_grt_plain_three_cycle_fails_for_complex():
    # without the exponential dressing the three-cycle product detects zeta(2)
    phi = build_numeric_kz(2)
    rep = verify_grt_relations(phi, 2, pentagon=False)
    residual = rep["rel_ii"]["AB"]
    assert abs(residual - 3 * phi["AB"]) < 1e-9


def test_grt_symbolic_weight2_forces_zeta2():
    phi = build_symbolic_associator("p", 2)
    rep = verify_grt_relations(phi, 2, pentagon=False)
    constraint = rep["rel_ii"]["AB"]
    zeta2 = zeta_lambda_expr(phi, (2,))
    assert not constraint.is_zero()
    assert (constraint + 3 * zeta2).is_zero()  # constraint is -3 zeta_p(2)
    assert rep["rel_i"].is_zero()


def test_flavor_dispatch_and_group_likeness():
    for flavor, p in ((COMPLEX_KZ, None), (PADIC_KZ, None), (PADIC_DELIGNE, 3), (MINUS_KZ, None)):
        f = build_associator(flavor, 3, p)
        assert is_group_like(f)
    with pytest.raises(ValueError):
        build_associator(PADIC_DELIGNE, 3)
    with pytest.raises(ValueError):
        build_associator("nope", 3)


def test_numeric_kz_coefficients():
    phi = build_numeric_kz(3)
    assert abs(phi["AB"] + mzv((2,))) < 1e-9
    assert abs(phi["A"]) == 0 and abs(phi["B"]) == 0
    # divergent leading-B word is determined by the convergent data
    assert abs(phi["BAB"] + 2 * phi["ABB"]) < 1e-9


def test_lie_leading_term():
    phi = build_numeric_kz(4)
    lead, coord = lie_leading_term(phi, 2)
    assert abs(lead + mzv((2,))) < 1e-9
    assert lead == coord
    phi_p = build_symbolic_associator("p", 4)
    lead3, _ = lie_leading_term(phi_p, 3)
    assert (lead3 + zeta_lambda_expr(phi_p, (3,)) * (-1) ** 1).is_zero() or (
        lead3 - phi_p["AAB"]).is_zero()
    # pure bracket exponential returns the bracket coefficient
    c = Fraction(4, 7)
    bracket = ad_power_bracket(3, QQ, 4).scale(c)
    lead_b, _ = lie_leading_term(bracket.exp(), 3)
    assert lead_b == c


def test_dagger_coefficient_depth1_shape():
    p = 3
    expr = rewrite_logs(dagger_coefficient((2,), p), p)
    want = SymbolPoly.gen(LiSym("plain", (2,), ARG_Z)) - Fraction(1, p**2) * SymbolPoly.gen(
        LiSym("plain", (2,), "z^p"))
    assert (expr - want).is_zero()


def test_dagger_expansion_agrees_with_padic_evaluation():
    # evaluate the symbolic overconvergent coefficient p-adically and compare
    # with the direct prime-to-p series on disk points
    from mzv.padic_eval import padic_li_dagger, padic_polylog
    from mzv.padics import PadicNumber
    from mzv.symbols import ARG_Z_POW_P

    p = 5
    z = PadicNumber.from_rational(Fraction(10, 3), p, 30)
    for k in (1, 2, 3):
        expr = rewrite_logs(dagger_coefficient((k,), p), p)
        total = PadicNumber.zero(p, 30)
        for mono, c in expr.terms.items():
            term = PadicNumber.from_rational(Fraction(c), p, 40)
            for g, e in mono:
                assert isinstance(g, LiSym) and g.index == (k,)
                base = padic_polylog(k, z if g.arg == ARG_Z else z**p)
                for _ in range(e):
                    term = term * base
            total = total + term
        assert (total - padic_li_dagger(k, z)).is_zero()
