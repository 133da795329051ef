import random
from fractions import Fraction

import pytest

from mzv.ratfunc import RatFunc
from mzv.symbols import (
    ARG_ABS_Z_SQ,
    ARG_ONE_MINUS_Z,
    ARG_Z,
    ARG_Z_CONJ,
    ARG_Z_POW_P,
    LambdaSym,
    LiSym,
    LogSym,
    NotDifferentiableError,
    SymbolPoly,
    ZetaSym,
    formal_derivative,
    parse_symbol_poly,
)

Z = RatFunc.z_power(1)
ONE = RatFunc.from_fraction(1)


def _rand_poly(rng):
    gens = [
        ZetaSym("complex", (2,)),
        ZetaSym("p-adic", (1, 2)),
        LiSym("plain", (2,), ARG_Z),
        LogSym(ARG_Z),
        LambdaSym("p", "AB"),
    ]
    out = SymbolPoly.constant(Fraction(rng.randint(-3, 3)))
    for _ in range(rng.randint(1, 3)):
        mono = SymbolPoly.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for _ in range(rng.randint(1, 2)):
            mono = mono * SymbolPoly.gen(rng.choice(gens))
        out = out + mono
    return out


def test_commutativity_and_collection():
    a = SymbolPoly.gen(ZetaSym("complex", (2,)))
    b = SymbolPoly.gen(LogSym(ARG_Z))
    assert (a * b - b * a).is_zero()
    assert ((a + a) - 2 * a).is_zero()
    sq = a * a
    ((gen, exp),) = list(sq.terms)[0]
    assert exp == 2


def test_weight_grading():
    z23 = SymbolPoly.gen(ZetaSym("complex", (2, 3)))  # weight 5
    li2 = SymbolPoly.gen(LiSym("plain", (2,), ARG_Z))  # weight 2
    log = SymbolPoly.gen(LogSym(ARG_Z))  # weight 1
    lam = SymbolPoly.gen(LambdaSym("c", "AAB"))  # weight 3
    assert z23.weight() == 5
    assert (li2 * log * lam).weight() == 6
    # products of homogeneous elements are homogeneous of summed weight
    rng = random.Random(5)
    for _ in range(10):
        e1, e2 = rng.randint(1, 3), rng.randint(1, 3)
        h1, h2 = li2**e1, lam**e2
        assert (h1 * h2).weight() == 2 * e1 + 3 * e2


def test_leibniz_rule_on_random_products():
    rng = random.Random(17)
    for _ in range(12):
        f, g = _rand_poly(rng), _rand_poly(rng)
        lhs = formal_derivative(f * g, p=5)
        rhs = formal_derivative(f, p=5) * g + f * formal_derivative(g, p=5)
        assert (lhs - rhs).is_zero()


def test_derivative_generator_rules():
    dlog = formal_derivative(SymbolPoly.gen(LogSym(ARG_Z)))
    assert (dlog - SymbolPoly.constant(ONE / Z)).is_zero()

    dli1 = formal_derivative(SymbolPoly.gen(LiSym("plain", (1,), ARG_Z)))
    assert (dli1 - SymbolPoly.constant(ONE / (ONE - Z))).is_zero()

    dli12 = formal_derivative(SymbolPoly.gen(LiSym("plain", (1, 2), ARG_Z)))
    want = SymbolPoly.gen(LiSym("plain", (1, 1), ARG_Z), ONE / Z)
    assert (dli12 - want).is_zero()

    # last entry 1 strips to the prefix with the 1/(1-z) kernel
    dli21 = formal_derivative(SymbolPoly.gen(LiSym("plain", (2, 1), ARG_Z)))
    want = SymbolPoly.gen(LiSym("plain", (2,), ARG_Z), ONE / (ONE - Z))
    assert (dli21 - want).is_zero()

    dlog1mz = formal_derivative(SymbolPoly.gen(LogSym(ARG_ONE_MINUS_Z)))
    assert (dlog1mz - SymbolPoly.constant(-(ONE / (ONE - Z)))).is_zero()


def test_derivative_chain_rule_for_zp():
    p = 3
    dlog = formal_derivative(SymbolPoly.gen(LogSym(ARG_Z_POW_P)), p=p)
    assert (dlog - SymbolPoly.constant(RatFunc.from_fraction(p) / Z)).is_zero()
    dli2 = formal_derivative(SymbolPoly.gen(LiSym("plain", (2,), ARG_Z_POW_P)), p=p)
    want = SymbolPoly.gen(LiSym("plain", (1,), ARG_Z_POW_P), RatFunc.from_fraction(p) / Z)
    assert (dli2 - want).is_zero()
    # chain rule needs the prime
    with pytest.raises(NotDifferentiableError):
        formal_derivative(SymbolPoly.gen(LogSym(ARG_Z_POW_P)))


def test_conjugate_arguments_are_rejected():
    with pytest.raises(NotDifferentiableError):
        formal_derivative(SymbolPoly.gen(LiSym("plain", (2,), ARG_Z_CONJ)))
    with pytest.raises(NotDifferentiableError):
        formal_derivative(SymbolPoly.gen(LogSym(ARG_ABS_Z_SQ)))


def test_zeta_and_lambda_are_constants():
    q = SymbolPoly.gen(ZetaSym("p-adic", (3,))) * SymbolPoly.gen(LambdaSym("p", "AAB"))
    assert formal_derivative(q).is_zero()


def test_canonical_printing_grammar():
    assert str(SymbolPoly.gen(ZetaSym("p-adic", (2, 3)))) == "zeta_p[2,3]"
    assert str(SymbolPoly.gen(ZetaSym("p-adic-Deligne", (2,)))) == "zetaDe_p[2]"
    assert str(SymbolPoly.gen(LiSym("plain", (1, 2), ARG_Z))) == "Li[1,2](z)"
    assert str(SymbolPoly.gen(LiSym("dagger", (2,), ARG_Z))) == "Lidag[2](z)"
    assert str(SymbolPoly.gen(LiSym("minus", (3,), ARG_Z_CONJ))) == "Liminus[3](zbar)"
    assert str(SymbolPoly.gen(LogSym(ARG_Z))) == "log(z)"
    assert str(SymbolPoly.gen(LogSym(ARG_ABS_Z_SQ))) == "log|z|^2"


def test_parse_round_trip():
    rng = random.Random(23)
    for _ in range(30):
        q = _rand_poly(rng)
        again = parse_symbol_poly(str(q))
        assert (q - again).is_zero(), f"round trip failed for {q}"


def test_parse_specific_forms():
    q = parse_symbol_poly("3/2*zeta_p[2]*lam_p[AB]^2 - log|z|^2 + Li[1,2](z^p)")
    assert (q - (Fraction(3, 2) * SymbolPoly.gen(ZetaSym("p-adic", (2,))) * SymbolPoly.gen(LambdaSym("p", "AB")) ** 2
                 - SymbolPoly.gen(LogSym(ARG_ABS_Z_SQ))
                 + SymbolPoly.gen(LiSym("plain", (1, 2), ARG_Z_POW_P)))).is_zero()
