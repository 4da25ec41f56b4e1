"""Closed-form constant trees: evaluation, guards, rendering."""

import random
from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from cubiccf import closedform as cf
from cubiccf.closedform import eval_closedform, render
from cubiccf.errors import ClosedFormError, DivisionByZero, NegativeEvenRoot
from cubiccf.numkern import BigReal, const_pi, exp, pow_rational
from cubiccf.registry import builtin_corpus
from cubiccf.registry import ast as rast
from cubiccf.specfun import theta_num


def lit(x):
    return cf.Lit(F(x))


def test_quartic_root_of_five_matches_kernel():
    tree = cf.Pow(lit(5), F(1, 4))
    got = eval_closedform(tree, 45)
    oracle = pow_rational(F(1, 4), BigReal(5, 45))
    assert abs(got - oracle) < BigReal(F(1, 10 ** 40), 45)


def test_half_of_one_minus_sqrt3():
    tree = cf.BinOp("/", cf.BinOp("-", lit(1), cf.Pow(lit(3), F(1, 2))), lit(2))
    got = eval_closedform(tree, 30)
    assert got.to_str(10).startswith("-0.3660254038")


def test_quartic_root_value_matches_phi_ratio():
    # (6 sqrt(3) - 9)^(1/4) against the phi quotient at exp(-pi)
    d = 45
    tree = cf.Pow(
        cf.BinOp("-", cf.BinOp("*", lit(6), cf.Pow(lit(3), F(1, 2))), lit(9)),
        F(1, 4))
    closed = eval_closedform(tree, d)
    q = exp(-const_pi(d + 10))
    with mp.workdps(d + 15):
        ratio = theta_num("phi", q, d) / theta_num("phi", q ** 3, d)
        assert abs(closed - ratio) < BigReal(F(1, 10 ** 40), d)


def test_corpus_closed_forms_stable_under_more_precision():
    digits = 40
    for rec in builtin_corpus():
        if rec.kind_name != "numeric" or not isinstance(rec.rhs, rast.CFLeaf):
            continue
        lo = eval_closedform(rec.rhs.tree, digits)
        hi = eval_closedform(rec.rhs.tree, digits + 20)
        with mp.workdps(digits + 30):
            frame = mpf(10) ** (-(digits - 2)) * max(1, abs(hi.value))
            assert abs(lo.value - hi.value) <= frame, rec.id


def random_positive_tree(rng, depth=0):
    if depth >= 3 or rng.random() < 0.4:
        return lit(F(rng.randint(1, 12), rng.randint(1, 4)))
    pick = rng.random()
    if pick < 0.3:
        return cf.BinOp("+", random_positive_tree(rng, depth + 1),
                        random_positive_tree(rng, depth + 1))
    if pick < 0.6:
        return cf.BinOp("*", random_positive_tree(rng, depth + 1),
                        random_positive_tree(rng, depth + 1))
    if pick < 0.8:
        return cf.Pow(random_positive_tree(rng, depth + 1), F(1, 2))
    return cf.Const("pi")


def test_structural_identities_on_random_trees():
    rng = random.Random(23)
    d = 35
    for _ in range(25):
        x = random_positive_tree(rng)
        vx = eval_closedform(x, d)
        square = eval_closedform(cf.BinOp("*", x, x), d)
        with mp.workdps(d + 15):
            assert abs(square.value - vx.value ** 2) \
                <= mpf(10) ** (-(d - 3)) * max(1, vx.value ** 2)
        back = eval_closedform(cf.Pow(cf.BinOp("*", x, x), F(1, 2)), d)
        with mp.workdps(d + 15):
            assert abs(back.value - abs(vx.value)) \
                <= mpf(10) ** (-(d - 3)) * max(1, abs(vx.value))


def test_negative_even_root_rejected():
    bad = cf.Pow(cf.BinOp("-", lit(1), cf.Pow(lit(3), F(1, 2))), F(1, 2))
    with pytest.raises(NegativeEvenRoot):
        eval_closedform(bad, 30)
    # exactly zero cannot be certified positive either
    with pytest.raises(NegativeEvenRoot):
        eval_closedform(cf.Pow(cf.BinOp("-", lit(1), lit(1)), F(1, 2)), 30)


def test_odd_root_of_negative_is_real():
    tree = cf.Pow(cf.Neg(lit(8)), F(1, 3))
    assert eval_closedform(tree, 20) == BigReal(-2, 20)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        eval_closedform(cf.BinOp("/", lit(1), cf.BinOp("-", lit(1), lit(1))), 25)


def test_depth_cap():
    tree = lit(1)
    for _ in range(40):
        tree = cf.Neg(tree)
    with pytest.raises(ClosedFormError):
        eval_closedform(tree, 20)


def test_unknown_constant_rejected():
    with pytest.raises(ClosedFormError):
        cf.Const("tau")


def test_render_round_trips_through_parser():
    from cubiccf.registry.dsl import parse_constant
    trees = [
        cf.Pow(lit(5), F(1, 4)),
        cf.BinOp("/", cf.BinOp("-", lit(1), cf.Pow(lit(3), F(1, 2))), lit(2)),
        cf.Exp(cf.BinOp("/", cf.Const("pi"), lit(8))),
        cf.BinOp("*", cf.Pow(lit(2), F(5, 8)), cf.Const("gamma34")),
    ]
    for tree in trees:
        text = render(tree)
        again = parse_constant(text)
        assert eval_closedform(again, 30) == eval_closedform(tree, 30), text
