import random
from fractions import Fraction

import pytest

from mzv.padic_eval import (
    OutsideDiskError,
    padic_li_dagger,
    padic_mpl2,
    padic_polylog,
    polylog_reference,
)
from mzv.padics import PadicNumber, padic_log


def _disk_point(rng, p, prec=30):
    num = p * rng.randint(1, 40)
    den = rng.choice([d for d in range(1, 50) if d % p])
    return PadicNumber.from_rational(Fraction(num, den), p, prec), Fraction(num, den)


def test_polylog_at_zero():
    z = PadicNumber.zero(5, 30)
    assert padic_polylog(3, z).is_zero()
    assert padic_li_dagger(2, z).is_zero()
    assert padic_mpl2(1, 2, z).is_zero()


def test_outside_disk_rejected():
    z = PadicNumber.from_rational(Fraction(7), 5, 20)
    for fn in (lambda: padic_polylog(2, z), lambda: padic_li_dagger(2, z), lambda: padic_mpl2(1, 2, z)):
        with pytest.raises(OutsideDiskError):
            fn()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_li1_is_minus_log_one_minus_z(p):
    rng = random.Random(p)
    for _ in range(6):
        z, zq = _disk_point(rng, p)
        one_minus = PadicNumber.from_rational(1 - zq, p, 30)
        # 1 - z is a 1-unit, so the branch does not enter
        assert (padic_polylog(1, z) + padic_log(one_minus)).is_zero()


def test_against_independent_reference():
    for p, k in ((5, 2), (3, 3), (7, 1)):
        zq = Fraction(p, p + 2)
        z = PadicNumber.from_rational(zq, p, 20)
        direct = padic_polylog(k, z)
        ref = polylog_reference(k, zq, p, 20)
        assert (direct - ref).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dagger_equals_frobenius_combination(p, k):
    rng = random.Random(100 * p + k)
    for _ in range(3):
        z, _ = _disk_point(rng, p)
        lhs = padic_li_dagger(k, z)
        rhs = padic_polylog(k, z) - padic_polylog(k, z**p) / Fraction(p) ** k
        diff = lhs - rhs
        assert diff.is_zero() and diff.aprec >= 20


def test_depth2_shuffle_identities():
    # C_B^2 = 2 C_BB and the (B, AB) interleaving at the function level
    for p in (3, 5):
        rng = random.Random(p)
        z, _ = _disk_point(rng, p)
        li1 = padic_polylog(1, z)
        li2 = padic_polylog(2, z)
        assert (li1 * li1 - 2 * padic_mpl2(1, 1, z)).is_zero()
        assert (li1 * li2 - padic_mpl2(2, 1, z) - 2 * padic_mpl2(1, 2, z)).is_zero()


def test_depth2_identities_emitted_by_shuffle_module():
    # every depth-<=2 identity from the word-level expansion evaluates to 0
    from mzv.shufflealg import index_of_word, shuffle_words, word_of_index

    p = 5
    z = PadicNumber.from_rational(Fraction(5, 7), p, 30)

    def li(entries):
        if len(entries) == 1:
            return padic_polylog(entries[0], z)
        return padic_mpl2(entries[0], entries[1], z)

    for i in ((1,), (2,)):
        for j in ((1,), (2,), (3,)):
            wi, si = word_of_index(i)
            wj, sj = word_of_index(j)
            acc = si * sj * li(i) * li(j)
            for t, c in shuffle_words(wi, wj).items():
                entries, st = index_of_word(t)
                if len(entries) > 2:
                    break
                acc = acc - Fraction(c * st) * li(entries)
            else:
                assert acc.is_zero(), (i, j)


def test_higher_precision_confirms_claimed_digits():
    p, k = 5, 2
    zq = Fraction(5, 7)
    lo = padic_polylog(k, PadicNumber.from_rational(zq, p, 18))
    hi = padic_polylog(k, PadicNumber.from_rational(zq, p, 34))
    assert (hi - lo).is_zero()  # compared at min precision
