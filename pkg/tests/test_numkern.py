"""Numeric kernel: elementary functions, AGM, pi and Gamma(3/4)."""

import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from cubiccf.errors import DomainError, PrecisionUnderflow
from cubiccf.numkern import (
    BigReal,
    agm,
    const_pi,
    elementary,
    exp,
    gamma_three_quarters,
    ln,
    nth_root,
    pow_rational,
    sqrt,
)

AGM_SQRT2_1 = "1.19814023473559220743992249228032387822721"
GAMMA34 = "1.22541670246517764512909830336289052685124"
FIFTH_ROOT_OF_5MOD = "1.49534878122122054191189899414091339536346"  # 5^(1/4)


def digits_agree(a, b, digits):
    with mp.workdps(digits + 20):
        av, bv = mpf(a), mpf(b)
        return abs(av - bv) <= mpf(10) ** (-digits + 1) * max(1, abs(av))


def machin_pi(digits):
    """Machin's arctangent formula summed in exact rational arithmetic."""
    def atan_inv(n):
        total = Fraction(0)
        term = Fraction(1, n)
        k = 0
        while term > Fraction(1, 10 ** (digits + 5)):
            total += term if k % 2 == 0 else -term
            k += 1
            term = Fraction(1, (2 * k + 1) * n ** (2 * k + 1))
        return total
    return 16 * atan_inv(5) - 4 * atan_inv(239)


class TestElementary:
    def test_exp_zero_is_one(self):
        assert exp(BigReal(0, 20)) == BigReal(1, 20)

    def test_cube_root_of_minus_eight(self):
        assert nth_root(3, BigReal(-8, 20)) == BigReal(-2, 20)

    def test_pow_rational_quarter(self):
        got = pow_rational(Fraction(1, 4), BigReal(5, 45))
        assert digits_agree(got.value, FIFTH_ROOT_OF_5MOD, 40)

    def test_exp_ln_inverse_pair(self):
        p = const_pi(30)
        back = exp(ln(p))
        assert digits_agree(back.value, p.value, 28)

    def test_dispatcher_matches_named_functions(self):
        x = BigReal(Fraction(7, 3), 25)
        assert elementary("exp", x) == exp(x)
        assert elementary("sqrt", x) == sqrt(x)
        assert elementary("nth_root", x, n=3) == nth_root(3, x)
        assert elementary("pow_rational", x, exponent=Fraction(2, 5)) == \
            pow_rational(Fraction(2, 5), x)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            ln(BigReal(-1, 20))
        with pytest.raises(DomainError):
            sqrt(BigReal(-2, 20))
        with pytest.raises(DomainError):
            nth_root(2, BigReal(-1, 20))
        with pytest.raises(DomainError):
            BigReal(1, 20) / BigReal(0, 20)

    def test_precision_underflow(self):
        with pytest.raises(PrecisionUnderflow):
            BigReal(1, 5)
        with pytest.raises(PrecisionUnderflow):
            const_pi(8)

    def test_nth_root_roundtrip(self):
        rng = random.Random(7)
        prec = 35
        for _ in range(50):
            x = BigReal(Fraction(rng.randint(1, 10 ** 6), 10 ** 5), prec)
            for n in (2, 3, 4):
                back = nth_root(n, x) ** n
                assert abs(back - x) <= BigReal(Fraction(1, 10 ** (prec - 3)), prec) * x

    def test_precision_propagates_as_minimum(self):
        a = BigReal(2, 40)
        b = BigReal(3, 25)
        assert (a * b).precision == 25
        assert (a + b).precision == 25


class TestAgm:
    def test_fixed_point(self):
        assert agm(BigReal(1, 30), BigReal(1, 30)) == BigReal(1, 30)

    def test_defining_recurrence(self):
        rng = random.Random(11)
        for _ in range(10):
            a = BigReal(Fraction(rng.randint(1, 500), rng.randint(1, 50)), 35)
            b = BigReal(Fraction(rng.randint(1, 500), rng.randint(1, 50)), 35)
            lhs = agm(a, b)
            rhs = agm((a + b) / 2, sqrt(a * b))
            assert digits_agree(lhs.value, rhs.value, 32)

    def test_symmetry(self):
        a = BigReal(Fraction(17, 5), 35)
        b = BigReal(Fraction(29, 7), 35)
        assert digits_agree(agm(a, b).value, agm(b, a).value, 33)

    def test_agm_sqrt2_one(self):
        got = agm(sqrt(BigReal(2, 45)), BigReal(1, 45))
        assert digits_agree(got.value, AGM_SQRT2_1, 40)
        # independent oracle: iterate the recurrence directly in mpmath
        with mp.workdps(60):
            x, y = mp.sqrt(2), mpf(1)
            for _ in range(10):
                x, y = (x + y) / 2, mp.sqrt(x * y)
            assert digits_agree(got.value, x, 40)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            agm(BigReal(0, 20), BigReal(1, 20))
        with pytest.raises(DomainError):
            agm(BigReal(1, 20), BigReal(-3, 20))


class TestConstants:
    def test_pi_against_machin_oracle(self):
        oracle = machin_pi(45)
        got = const_pi(40)
        with mp.workdps(55):
            ref = mpf(oracle.numerator) / oracle.denominator
            assert abs(got.value - ref) < mpf(10) ** -40

    def test_pi_15_digits(self):
        assert const_pi(15).to_str(15).startswith("3.1415926535897")

    def test_pi_self_consistency(self):
        a = const_pi(30)
        b = const_pi(50)
        assert digits_agree(a.value, b.value, 29)

    def test_gamma34_value(self):
        got = gamma_three_quarters(45)
        assert digits_agree(got.value, GAMMA34, 40)
        assert got.to_str(10).startswith("1.22541670")

    def test_gamma34_low_precision_oracle(self):
        # independent library gamma as the cross-check oracle
        got = gamma_three_quarters(15)
        with mp.workdps(25):
            assert abs(got.value - mpmath.gamma(mpf(3) / 4)) < mpf(10) ** -14

    def test_reflection_identity(self):
        g34 = gamma_three_quarters(40)
        with mp.workdps(55):
            g14 = mpmath.gamma(mpf(1) / 4)  # independent route
            prod = g14 * g34.value
            ref = const_pi(40).value * mp.sqrt(2)
            assert abs(prod - ref) < mpf(10) ** -38


class TestMonotonePrecision:
    def test_leading_digits_stable_under_more_precision(self):
        rng = random.Random(3)
        for _ in range(100):
            frac = Fraction(rng.randint(1, 10 ** 8), rng.randint(1, 10 ** 4))
            p = rng.choice([15, 20, 30])
            lo = sqrt(BigReal(frac, p))
            hi = sqrt(BigReal(frac, p + 20))
            assert digits_agree(lo.value, hi.value, p - 2)
