"""Exact series engine: ring ops, inverses, roots, substitutions, theta and
continued fraction series."""

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cubiccf.errors import (
    ExponentRangeError,
    FractionalSignExponent,
    LatticeOverflow,
    NotInvertible,
    RootNotExtractable,
)
from cubiccf.qseries import (
    QSeries,
    cf_series,
    cf_series_at_depth,
    infinite_product,
    inverse,
    nth_root_series,
    ring_ops,
    substitute_monomial,
    theta_product,
    theta_series,
)


def series(terms, order, lattice=1):
    return QSeries.from_terms(terms, order, lattice)


# --- strategies ---------------------------------------------------------------

coeffs = st.integers(min_value=-9, max_value=9)


@st.composite
def small_series(draw, unit=False, monic=False):
    lattice = draw(st.sampled_from([1, 2, 3]))
    order = draw(st.integers(min_value=4, max_value=8))
    n = order * lattice
    values = draw(st.lists(coeffs, min_size=n + 1, max_size=n + 1))
    if monic:
        values[0] = 1
    elif unit and values[0] == 0:
        values[0] = draw(st.sampled_from([-2, -1, 1, 2, 3]))
    return QSeries(lattice, 0, n, values)


# --- ring operations ------------------------------------------------------------


class TestRingOps:
    def test_difference_of_squares(self):
        a = series({0: 1, 1: 1}, 12)
        b = series({0: 1, 1: -1}, 12)
        assert list(a.mul(b).terms()) == [(F(0), 1), (F(2), -1)]

    def test_additive_inverse(self):
        a = series({0: 3, 2: -5, 7: 1}, 10)
        assert ring_ops(a, -a, "add").is_zero()

    def test_psi_phi_product_against_convolution_oracle(self):
        n = 50
        psi = theta_series("psi", n)
        phi = theta_series("phi", n)
        prod = psi.mul(phi)
        # naive convolution over plain integer lists
        pa = [0] * (n + 1)
        for e, c in psi.terms():
            pa[int(e)] = c
        pb = [0] * (n + 1)
        for e, c in phi.terms():
            pb[int(e)] = c
        for k in range(n + 1):
            expected = sum(pa[i] * pb[k - i] for i in range(k + 1))
            assert prod.coefficient(k) == expected

    @given(small_series(), small_series())
    def test_commutativity(self, a, b):
        assert a.mul(b) == b.mul(a)
        assert a.add(b) == b.add(a)

    @given(small_series(), small_series(), small_series())
    def test_distributivity(self, a, b, c):
        lhs = a.mul(b.add(c))
        rhs = a.mul(b).add(a.mul(c))
        assert lhs.sub(rhs).first_nonzero(through_order=lhs.q_order()) is None

    @given(small_series(), small_series(), small_series())
    def test_associativity(self, a, b, c):
        lhs = a.mul(b).mul(c)
        rhs = a.mul(b.mul(c))
        common = min(lhs.q_order(), rhs.q_order())
        assert lhs.sub(rhs).first_nonzero(through_order=common) is None

    def test_lattice_overflow(self):
        a = QSeries.monomial(1, F(1, 8), 2)
        b = QSeries.monomial(1, F(1, 9), 2)
        with pytest.raises(LatticeOverflow):
            a.mul(b)

    def test_laurent_floor_enforced(self):
        deep = QSeries.monomial(1, F(5), 10)
        with pytest.raises(ExponentRangeError):
            deep.inverse()  # q^-5 is below the q^-4 floor


class TestInverse:
    def test_geometric_series(self):
        inv = series({0: 1, 1: -1}, 10).inverse()
        assert all(inv.coefficient(k) == 1 for k in range(11))

    def test_involution(self):
        a = series({0: 2, 1: 3, 4: -7}, 9)
        assert a.inverse().inverse().agrees_with(a, 9)

    @given(small_series(unit=True))
    def test_defining_equation(self, a):
        prod = a.mul(a.inverse())
        one = QSeries.one(1)
        assert prod.sub(one.to_lattice(prod.lattice)).first_nonzero(
            through_order=prod.q_order()) is None

    def test_psi_inverse_to_order_100(self):
        psi = theta_series("psi", 100)
        prod = psi.mul(psi.inverse())
        assert prod.coefficient(0) == 1
        assert all(prod.coefficient(k) == 0 for k in range(1, 101))

    def test_zero_not_invertible(self):
        with pytest.raises(NotInvertible):
            QSeries.zero(5).inverse()


class TestRoots:
    def test_root_of_one(self):
        assert QSeries.one(8).nth_root(3) == QSeries.one(8)

    def test_exact_cube(self):
        a = series({0: 1, 1: 1}, 10)
        assert a.pow_int(3).nth_root(3).agrees_with(a, 10)

    @given(small_series(monic=True), st.sampled_from([2, 3, 4]))
    def test_defining_equation(self, a, n):
        root = a.nth_root(n)
        assert root.pow_int(n).sub(a).first_nonzero(
            through_order=a.q_order()) is None

    def test_cube_root_identity_to_order_100(self):
        # cube root of 1 - 9q psi^4(q^3)/psi^4(q) equals 1 - 3q psi(q^9)/psi(q)
        n = 100
        psi = theta_series("psi", n)
        psi3 = theta_series("psi", n // 3 + 1).substitute_monomial(1, F(3))
        psi9 = theta_series("psi", n // 9 + 1).substitute_monomial(1, F(9))
        q = QSeries.monomial(1, F(1), n)
        inner = QSeries.one(n).sub(
            q.scale(9).mul(psi3.pow_int(4)).mul(psi.pow_int(4).inverse()))
        lhs = QSeries.one(n).sub(q.scale(3).mul(psi9).mul(psi.inverse()))
        assert inner.nth_root(3).agrees_with(lhs, n - 2)

    def test_requires_unit_constant_term(self):
        with pytest.raises(RootNotExtractable):
            series({0: 2, 1: 1}, 5).nth_root(2)
        with pytest.raises(RootNotExtractable):
            series({1: 1}, 5).nth_root(2)


class TestSubstitution:
    def test_sign_flip(self):
        a = series({0: 1, 1: 1, 3: 1}, 5)
        assert list(a.substitute_monomial(-1, F(1)).terms()) == \
            [(F(0), 1), (F(1), -1), (F(3), -1)]

    def test_involution(self):
        a = series({0: 2, 1: -3, 2: 5, 7: 1}, 9)
        twice = a.substitute_monomial(-1, F(1)).substitute_monomial(-1, F(1))
        assert twice == a

    def test_phi_minus_q_matches_product_rearrangement(self):
        n = 60
        lhs = theta_series("phi", n).substitute_monomial(-1, F(1))
        rhs = infinite_product(1, 1, 2, 2, n).mul(infinite_product(1, 2, 2, 1, n))
        assert lhs.agrees_with(rhs, n)

    def test_fractional_sign_exponent(self):
        with pytest.raises(FractionalSignExponent):
            cf_series(6).substitute_monomial(-1, F(1))

    def test_stretch_extends_validity(self):
        a = theta_series("psi", 10)
        b = substitute_monomial(a, 1, F(3))
        assert b.q_order() == 30
        assert b.coefficient(9) == a.coefficient(3)

    def test_lattice_roundtrip_is_identity(self):
        v = cf_series(7)
        assert v.to_lattice(12).reduce_lattice() == v


class TestDerivative:
    def test_constant(self):
        assert QSeries.one(6).derivative().is_zero()

    def test_power_rule_fractional(self):
        d = QSeries.monomial(1, F(1, 3), 4).derivative()
        assert d.coefficient(F(-2, 3)) == F(1, 3)

    @given(small_series(), small_series())
    def test_leibniz(self, a, b):
        lhs = a.mul(b).derivative()
        rhs = a.derivative().mul(b).add(a.mul(b.derivative()))
        common = min(lhs.q_order(), rhs.q_order())
        assert lhs.sub(rhs).first_nonzero(through_order=common) is None


class TestInfiniteProduct:
    def test_pentagonal_numbers(self):
        got = infinite_product(1, 1, 1, 1, 15)
        assert list(got.terms()) == [
            (F(0), 1), (F(1), -1), (F(2), -1), (F(5), 1),
            (F(7), 1), (F(12), -1), (F(15), -1),
        ]

    def test_zero_power(self):
        assert infinite_product(1, 1, 2, 0, 10) == QSeries.one(10)

    def test_chi_factors_against_naive_expansion(self):
        n = 20
        got = infinite_product(1, 1, 2, 1, n)
        # multiply out (1-q)(1-q^3)... with plain lists
        acc = [0] * (n + 1)
        acc[0] = 1
        e = 1
        while e <= n:
            nxt = acc[:]
            for i in range(n + 1 - e):
                if acc[i]:
                    nxt[i + e] -= acc[i]
            acc = nxt
            e += 2
        for k in range(n + 1):
            assert got.coefficient(k) == acc[k]

    def test_pentagonal_equals_f_theta(self):
        n = 90
        assert infinite_product(1, 1, 1, 1, n).agrees_with(
            theta_series("f_minus", n), n)


class TestTheta:
    def test_psi_to_order_10(self):
        assert list(theta_series("psi", 10).terms()) == \
            [(F(0), 1), (F(1), 1), (F(3), 1), (F(6), 1), (F(10), 1)]

    def test_phi_to_order_9(self):
        assert list(theta_series("phi", 9).terms()) == \
            [(F(0), 1), (F(1), 2), (F(4), 2), (F(9), 2)]

    @pytest.mark.parametrize("kind", ["phi", "psi", "f_minus", "chi_minus"])
    def test_sum_equals_product_to_order_120(self, kind):
        n = 120
        assert theta_series(kind, n).agrees_with(theta_product(kind, n), n)


class TestCfSeries:
    def test_order_zero_is_cube_root_of_q(self):
        v = cf_series(0)
        assert list(v.terms()) == [(F(1, 3), 1)]

    def test_depth_insensitivity(self):
        n = 40
        a = cf_series_at_depth(n, n + 2)
        b = cf_series_at_depth(n, n + 7)
        assert a.sub(b).first_nonzero(through_order=F(n)) is None

    def test_cube_relation_to_order_150(self):
        # 1 + 1/V^3 agrees with the psi quartic quotient
        n = 150
        v3 = cf_series(n + 4).pow_int(3)
        lhs = QSeries.one(n + 4, 3).add(v3.inverse())
        psi = theta_series("psi", n + 4)
        psi3 = theta_series("psi", (n + 4) // 3 + 1).substitute_monomial(1, F(3))
        q = QSeries.monomial(1, F(1), n + 4)
        rhs = psi.pow_int(4).mul(q.mul(psi3.pow_int(4)).inverse())
        assert lhs.sub(rhs).first_nonzero(through_order=F(n)) is None

    def test_matches_classical_product_form(self):
        n = 80
        v = cf_series(n)
        prod = infinite_product(1, 1, 2, 1, n).mul(infinite_product(1, 3, 6, -3, n))
        vprod = QSeries.monomial(1, F(1, 3), n).mul(prod.to_lattice(3))
        assert v.sub(vprod).first_nonzero(through_order=F(n - 1)) is None


class TestSurface:
    def test_module_level_wrappers(self):
        a = series({0: 1, 1: 2}, 6)
        assert inverse(a) == a.inverse()
        assert nth_root_series(series({0: 1, 1: 2}, 6), 1) == a
        assert ring_ops(a, None, "neg") == -a

    def test_coefficient_beyond_validity_raises(self):
        a = series({0: 1}, 5)
        with pytest.raises(Exception):
            a.coefficient(6)
