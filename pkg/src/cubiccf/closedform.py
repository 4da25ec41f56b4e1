"""Closed-form constant expressions: nested radicals, rationals, pi,
Gamma(3/4) and exponentials, evaluated to arbitrary precision.

Trees are plain frozen dataclasses and double as corpus data (the right-hand
sides of the explicit-value records).  There is no simplification: equality
of closed forms is always decided numerically at high precision.  Even roots
demand a provably positive base; positivity is probed at precision 30 with a
10^-20 margin and anything closer to zero is an error, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import ClosedFormError, DivisionByZero, NegativeEvenRoot
from .numkern import BigReal, const_pi, gamma_three_quarters, precision_guard

MAX_DEPTH = 32

CONSTANT_NAMES = ("pi", "gamma34")


@dataclass(frozen=True)
class Node:
    """Base class for closed-form nodes."""


@dataclass(frozen=True)
class Lit(Node):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Const(Node):
    name: str

    def __post_init__(self):
        if self.name not in CONSTANT_NAMES:
            raise ClosedFormError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # one of + - * /
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Exp(Node):
    operand: Node


ClosedForm = Node


def _eval_raw(node: Node, depth: int):
    """Evaluate under the ambient working precision; returns an mpf."""
    if depth > MAX_DEPTH:
        raise ClosedFormError(f"tree depth exceeds {MAX_DEPTH}")
    if isinstance(node, Lit):
        return mpf(node.value.numerator) / node.value.denominator
    if isinstance(node, Const):
        digits = int(mp.dps)
        if node.name == "pi":
            return const_pi(max(digits, 10)).value
        return gamma_three_quarters(max(digits, 10)).value
    if isinstance(node, Neg):
        return -_eval_raw(node.operand, depth + 1)
    if isinstance(node, Exp):
        return mp.exp(_eval_raw(node.operand, depth + 1))
    if isinstance(node, BinOp):
        lv = _eval_raw(node.left, depth + 1)
        rv = _eval_raw(node.right, depth + 1)
        if node.op == "+":
            return lv + rv
        if node.op == "-":
            return lv - rv
        if node.op == "*":
            return lv * rv
        if node.op == "/":
            if rv == 0:
                raise DivisionByZero("closed-form division by zero")
            return lv / rv
        raise ClosedFormError(f"unknown operator {node.op!r}")
    if isinstance(node, Pow):
        p, r = node.exponent.numerator, node.exponent.denominator
        bv = _eval_raw(node.base, depth + 1)
        if r == 1:
            if bv == 0 and p < 0:
                raise DivisionByZero("zero base with negative power")
            return bv ** p
        if r % 2 == 0 and not _certified_positive(node.base, depth):
            raise NegativeEvenRoot(
                f"cannot certify positive base for exponent {node.exponent}"
            )
        if bv < 0:  # odd r: real-root convention
            root = -mp.root(-bv, r)
        else:
            root = mp.root(bv, r)
        return root ** p
    raise ClosedFormError(f"unknown node {node!r}")


def _certified_positive(base: Node, depth: int) -> bool:
    """Positivity probe at precision 30 with margin 10^-20."""
    with mp.workdps(30 + precision_guard()):
        probe = _eval_raw(base, depth + 1)
        return probe > mpf(10) ** -20


def eval_closedform(cf: Node, digits: int) -> BigReal:
    """Evaluate a closed form to `digits` decimal digits."""
    with mp.workdps(digits + precision_guard()):
        return BigReal(_eval_raw(cf, 0), max(digits, 10))


# --- rendering (the DSL's closed-form sub-grammar) ---------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def render(node: Node, parent_prec: int = 0) -> str:
    if isinstance(node, Lit):
        v = node.value
        if v.denominator == 1:
            s = str(v.numerator)
            need = v.numerator < 0 and parent_prec > 0
        else:
            s = f"{v.numerator}/{v.denominator}"
            need = parent_prec > 2 or v.numerator < 0
        return f"({s})" if need else s
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        inner = render(node.operand, 3)
        s = f"-{inner}"
        return f"({s})" if parent_prec > 0 else s
    if isinstance(node, Exp):
        return f"exp({render(node.operand)})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        left = render(node.left, prec)
        right = render(node.right, prec + 1)
        s = f"{left}{node.op}{right}"
        return f"({s})" if prec < parent_prec else s
    if isinstance(node, Pow):
        e = node.exponent
        if e == Fraction(1, 2):
            return f"sqrt({render(node.base)})"
        if e == Fraction(1, 3):
            return f"cbrt({render(node.base)})"
        if e.numerator == 1 and e.denominator > 3:
            return f"root({e.denominator},{render(node.base)})"
        base = render(node.base, 4)
        if e.denominator == 1:
            exp_s = str(e.numerator) if e.numerator >= 0 else f"({e.numerator})"
        else:
            exp_s = f"({e.numerator}/{e.denominator})"
        return f"{base}^{exp_s}"
    raise ClosedFormError(f"cannot render {node!r}")
