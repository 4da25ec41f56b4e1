"""Expression trees for identity records.

The grammar is tiny: the five primitives phi/psi/f/chi/V applied to signed
q-monomials, the two integral-representation callables for numeric records,
arithmetic, rational powers, rational literals, closed-form constant leaves
and (in numeric alpha/beta records) references to the evaluation point.

Constant folding happens after parsing: any subtree free of q, calls and
point references either collapses to an exact rational literal or becomes a
single closed-form leaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import closedform as cf
from ..errors import EngineError

SERIES_FUNCTIONS = ("phi", "psi", "f", "chi", "V")
NUMERIC_ONLY_FUNCTIONS = ("intrep1", "intrep2")
FUNCTIONS = SERIES_FUNCTIONS + NUMERIC_ONLY_FUNCTIONS


@dataclass(frozen=True)
class Expr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class Lit(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class ConstName(Expr):
    name: str  # pi | gamma34 (folded into CFLeaf after parsing)


@dataclass(frozen=True)
class Monomial(Expr):
    sign: int
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Monomial


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # + - * /
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class ExpCall(Expr):
    operand: Expr


@dataclass(frozen=True)
class Diff(Expr):
    operand: Expr


@dataclass(frozen=True)
class PointRef(Expr):
    name: str  # alpha | beta


@dataclass(frozen=True)
class CFLeaf(Expr):
    tree: cf.Node


# --- constant folding ---------------------------------------------------------


def _to_cf(node: Expr) -> cf.Node:
    if isinstance(node, Lit):
        return cf.Lit(node.value)
    if isinstance(node, ConstName):
        return cf.Const(node.name)
    if isinstance(node, CFLeaf):
        return node.tree
    if isinstance(node, Neg):
        return cf.Neg(_to_cf(node.operand))
    if isinstance(node, ExpCall):
        return cf.Exp(_to_cf(node.operand))
    if isinstance(node, BinOp):
        return cf.BinOp(node.op, _to_cf(node.left), _to_cf(node.right))
    if isinstance(node, Pow):
        return cf.Pow(_to_cf(node.base), node.exponent)
    raise EngineError(f"not a constant subtree: {node!r}")


def _rational_value(node: cf.Node):
    """Exact Fraction value of a rational-only closed form, else None."""
    if isinstance(node, cf.Lit):
        return node.value
    if isinstance(node, cf.Neg):
        v = _rational_value(node.operand)
        return None if v is None else -v
    if isinstance(node, cf.BinOp):
        lv = _rational_value(node.left)
        rv = _rational_value(node.right)
        if lv is None or rv is None:
            return None
        if node.op == "+":
            return lv + rv
        if node.op == "-":
            return lv - rv
        if node.op == "*":
            return lv * rv
        if rv == 0:
            return None  # let evaluation report the zero division
        return lv / rv
    if isinstance(node, cf.Pow):
        if node.exponent.denominator != 1:
            return None
        v = _rational_value(node.base)
        if v is None:
            return None
        p = node.exponent.numerator
        if p < 0 and v == 0:
            return None
        return v ** p
    return None  # Const, Exp


def _is_constant(node: Expr) -> bool:
    if isinstance(node, (Lit, ConstName, CFLeaf)):
        return True
    if isinstance(node, (Monomial, Call, PointRef, Diff)):
        return False
    if isinstance(node, (Neg, ExpCall)):
        return _is_constant(node.operand)
    if isinstance(node, BinOp):
        return _is_constant(node.left) and _is_constant(node.right)
    if isinstance(node, Pow):
        return _is_constant(node.base)
    raise EngineError(f"unknown node {node!r}")


def fold_constants(node: Expr) -> Expr:
    """Collapse constant subtrees to Lit (if rational) or CFLeaf."""
    if _is_constant(node):
        tree = _to_cf(node)
        rational = _rational_value(tree)
        if rational is not None:
            return Lit(rational)
        return CFLeaf(tree)
    if isinstance(node, (Monomial, Call, PointRef)):
        return node
    if isinstance(node, Neg):
        return Neg(fold_constants(node.operand))
    if isinstance(node, ExpCall):
        return ExpCall(fold_constants(node.operand))
    if isinstance(node, Diff):
        return Diff(fold_constants(node.operand))
    if isinstance(node, BinOp):
        return BinOp(node.op, fold_constants(node.left), fold_constants(node.right))
    if isinstance(node, Pow):
        return Pow(fold_constants(node.base), node.exponent)
    return node


# --- rendering -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _render_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e.numerator >= 0:
        return str(e.numerator)
    if e.denominator == 1:
        return f"({e.numerator})"
    return f"({e.numerator}/{e.denominator})"


def render(node: Expr, parent_prec: int = 0) -> str:
    if isinstance(node, Lit):
        v = node.value
        if v.denominator == 1:
            s = str(v.numerator)
            need = v.numerator < 0 and parent_prec > 0
        else:
            s = f"{v.numerator}/{v.denominator}"
            need = parent_prec > 2 or v.numerator < 0
        return f"({s})" if need else s
    if isinstance(node, ConstName):
        return node.name
    if isinstance(node, CFLeaf):
        return cf.render(node.tree, parent_prec)
    if isinstance(node, PointRef):
        return node.name
    if isinstance(node, Monomial):
        body = "q" if node.exponent == 1 else f"q^{_render_exponent(node.exponent)}"
        if node.sign < 0:
            return f"(-{body})" if parent_prec > 0 else f"-{body}"
        return body
    if isinstance(node, Call):
        m = node.arg
        body = "q" if m.exponent == 1 else f"q^{_render_exponent(m.exponent)}"
        return f"{node.fn}(-{body})" if m.sign < 0 else f"{node.fn}({body})"
    if isinstance(node, Neg):
        s = f"-{render(node.operand, 3)}"
        return f"({s})" if parent_prec > 0 else s
    if isinstance(node, ExpCall):
        return f"exp({render(node.operand)})"
    if isinstance(node, Diff):
        return f"diff({render(node.operand)})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        s = f"{render(node.left, prec)}{node.op}{render(node.right, prec + 1)}"
        return f"({s})" if prec < parent_prec else s
    if isinstance(node, Pow):
        e = node.exponent
        if e == Fraction(1, 2):
            return f"sqrt({render(node.base)})"
        if e == Fraction(1, 3):
            return f"cbrt({render(node.base)})"
        if e.numerator == 1 and e.denominator > 3:
            return f"root({e.denominator},{render(node.base)})"
        return f"{render(node.base, 4)}^{_render_exponent(e)}"
    raise EngineError(f"cannot render {node!r}")
