"""Verification engines: dispatch identity records to the exact series ring
or the high-precision numeric evaluators.

Series verification builds lhs - rhs with slack above the requested order
(quotients and Laurent terms eat validity), then demands every coefficient
through the requested order be exactly zero.  Numeric verification evaluates
both sides at every point of the record and compares against
10^(-digits) * max(1, |lhs|).
"""

from __future__ import annotations

import math
from fractions import Fraction
from time import perf_counter

from mpmath import mp, mpf

from .. import closedform as cf
from ..errors import CubicCFError, DomainError, EngineError, EvaluationError
from ..numkern import BigReal, precision_guard
from ..qseries import QSeries, cf_series, theta_series
from ..quadrature import rhs_2_1, rhs_2_2
from ..specfun import Q_ABS_CAP, V_cf_num, _theta_sum_raw
from . import ast
from .records import (AlphaBetaPoint, IdentityRecord, NumericKind, QPoint,
                      SeriesKind, VerificationReport)

_THETA_KIND = {"phi": "phi", "psi": "psi", "f": "f_minus", "chi": "chi_minus"}
# f and chi are defined through their minus-argument series: f(z) is the
# pentagonal series at -z, chi(z) the odd product at -z
_ARG_FLIP = {"f": -1, "chi": -1, "phi": 1, "psi": 1, "V": 1}


def _ceil_div(order: int, m: Fraction) -> int:
    need = Fraction(order) / m
    return max(1, -((-need.numerator) // need.denominator))


def _series_call(node: ast.Call, order: int) -> QSeries:
    sign, m = node.arg.sign, node.arg.exponent
    if node.fn in ast.NUMERIC_ONLY_FUNCTIONS:
        raise EngineError(f"{node.fn} is not series-evaluable")
    if m <= 0:
        raise EngineError(f"function argument must have positive exponent, got {m}")
    eff_sign = sign * _ARG_FLIP[node.fn]
    base_order = _ceil_div(order, m)
    if node.fn == "V":
        base = cf_series(base_order)
    else:
        base = theta_series(_THETA_KIND[node.fn], base_order)
    if eff_sign == 1 and m == 1:
        return base
    return base.substitute_monomial(eff_sign, m)


def eval_series(node: ast.Expr, order: int, memo: dict | None = None) -> QSeries:
    """Evaluate an expression in the exact series ring through q^order."""
    if memo is None:
        memo = {}
    key = ast.render(node)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(node, ast.Lit):
        result = QSeries.monomial(node.value, Fraction(0), order)
    elif isinstance(node, ast.Monomial):
        result = QSeries.monomial(node.sign, node.exponent, order)
    elif isinstance(node, ast.Call):
        result = _series_call(node, order)
    elif isinstance(node, ast.Neg):
        result = -eval_series(node.operand, order, memo)
    elif isinstance(node, ast.Diff):
        result = eval_series(node.operand, order, memo).derivative()
    elif isinstance(node, ast.BinOp):
        left = eval_series(node.left, order, memo)
        right = eval_series(node.right, order, memo)
        if node.op == "+":
            result = left.add(right)
        elif node.op == "-":
            result = left.sub(right)
        elif node.op == "*":
            result = left.mul(right)
        elif node.op == "/":
            result = left.mul(right.inverse())
        else:
            raise EngineError(f"unknown operator {node.op!r}")
    elif isinstance(node, ast.Pow):
        result = eval_series(node.base, order, memo).pow_rational(node.exponent)
    else:
        raise EngineError(f"{type(node).__name__} is not series-evaluable")
    memo[key] = result
    return result


def verify_series(rec: IdentityRecord, order: int | None = None) -> VerificationReport:
    if not isinstance(rec.kind, SeriesKind):
        raise EngineError(f"record {rec.id} is not a series record")
    target = order if order is not None else rec.kind.order
    t0 = perf_counter()
    try:
        diff = None
        for slack in (8, 20, 44):
            memo: dict = {}
            lhs = eval_series(rec.lhs, target + slack, memo)
            rhs = eval_series(rec.rhs, target + slack, memo)
            diff = lhs.sub(rhs)
            if diff.q_order() >= target:
                break
        else:
            raise EngineError(
                f"validity stalled at q^{diff.q_order()} below order {target}"
            )
        bad = diff.first_nonzero(through_order=Fraction(target))
        elapsed = int((perf_counter() - t0) * 1000)
        if bad is None:
            return VerificationReport(rec.id, "series", "pass",
                                      f"all coefficients zero through q^{target}",
                                      elapsed)
        exponent, coeff = bad
        return VerificationReport(
            rec.id, "series", "fail",
            f"first nonzero coefficient {coeff} at q^{exponent}", elapsed)
    except CubicCFError as exc:
        elapsed = int((perf_counter() - t0) * 1000)
        return VerificationReport(rec.id, "series", "error", str(exc), elapsed)


# --- numeric engine -----------------------------------------------------------


class _NumericContext:
    __slots__ = ("q", "alpha", "beta", "digits", "memo")

    def __init__(self, q, alpha, beta, digits):
        self.q = q
        self.alpha = alpha
        self.beta = beta
        self.digits = digits
        self.memo = {}


def _real_pow(x, exponent: Fraction):
    p, r = exponent.numerator, exponent.denominator
    if x == 0:
        if p < 0:
            raise EvaluationError("zero base with negative exponent")
        return mpf(0) if p else mpf(1)
    if x < 0:
        if r % 2 == 0:
            raise EvaluationError(f"even root of negative value {mp.nstr(x, 8)}")
        root = -mp.root(-x, r)
    else:
        root = mp.root(x, r)
    return root ** p


def _numeric_call(node: ast.Call, ctx: _NumericContext):
    if ctx.q is None:
        raise EngineError(f"{node.fn}() needs a bound q point")
    arg = node.arg.sign * _real_pow(ctx.q, node.arg.exponent)
    if node.fn in _THETA_KIND:
        theta_arg = arg * _ARG_FLIP[node.fn]
        if abs(theta_arg) > Q_ABS_CAP:
            raise DomainError(f"|argument| {mp.nstr(abs(theta_arg), 8)} exceeds 0.9")
        return _theta_sum_raw(_THETA_KIND[node.fn], theta_arg, ctx.digits)
    if node.fn == "V":
        if abs(arg) > Q_ABS_CAP:
            raise DomainError(f"|argument| {mp.nstr(abs(arg), 8)} exceeds 0.9")
        return V_cf_num(BigReal(arg, ctx.digits + 5), ctx.digits).value
    if node.fn == "intrep1":
        return rhs_2_1(BigReal(arg, ctx.digits + 5), ctx.digits).value
    if node.fn == "intrep2":
        return rhs_2_2(BigReal(arg, ctx.digits + 5), ctx.digits).value
    raise EngineError(f"unknown function {node.fn!r}")


def eval_numeric(node: ast.Expr, ctx: _NumericContext):
    """Evaluate under the ambient working precision; returns an mpf."""
    key = ast.render(node)
    hit = ctx.memo.get(key)
    if hit is not None:
        return hit
    if isinstance(node, ast.Lit):
        result = mpf(node.value.numerator) / node.value.denominator
    elif isinstance(node, ast.CFLeaf):
        result = cf._eval_raw(node.tree, 0)
    elif isinstance(node, ast.PointRef):
        bound = ctx.alpha if node.name == "alpha" else ctx.beta
        if bound is None:
            raise EngineError(f"{node.name} is not bound at this point")
        result = bound
    elif isinstance(node, ast.Monomial):
        if ctx.q is None:
            raise EngineError("expression references q but no q is bound")
        result = node.sign * _real_pow(ctx.q, node.exponent)
    elif isinstance(node, ast.Call):
        result = _numeric_call(node, ctx)
    elif isinstance(node, ast.Neg):
        result = -eval_numeric(node.operand, ctx)
    elif isinstance(node, ast.ExpCall):
        result = mp.exp(eval_numeric(node.operand, ctx))
    elif isinstance(node, ast.BinOp):
        lv = eval_numeric(node.left, ctx)
        rv = eval_numeric(node.right, ctx)
        if node.op == "+":
            result = lv + rv
        elif node.op == "-":
            result = lv - rv
        elif node.op == "*":
            result = lv * rv
        elif node.op == "/":
            if rv == 0:
                raise EvaluationError("division by zero")
            result = lv / rv
        else:
            raise EngineError(f"unknown operator {node.op!r}")
    elif isinstance(node, ast.Pow):
        result = _real_pow(eval_numeric(node.base, ctx), node.exponent)
    else:
        raise EngineError(f"{type(node).__name__} is not numeric-evaluable")
    ctx.memo[key] = result
    return result


def _point_contexts(point, digits: int):
    """(lhs context, rhs context, display text) for one evaluation point."""
    if isinstance(point, QPoint):
        qv = cf._eval_raw(point.q, 0)
        if abs(qv) >= 1:
            raise DomainError(f"|q| = {mp.nstr(abs(qv), 8)} not inside (-1, 1)")
        if abs(qv) > Q_ABS_CAP:
            raise DomainError(f"|q| = {mp.nstr(abs(qv), 8)} exceeds cap 0.9")
        ctx = _NumericContext(qv, None, None, digits)
        return ctx, ctx, f"q={cf.render(point.q)}"
    av = cf._eval_raw(point.alpha, 0)
    bv = cf._eval_raw(point.beta, 0)
    if av <= 0 or bv <= 0:
        raise DomainError("alpha and beta must be positive")
    lhs_ctx = _NumericContext(mp.exp(-av), av, bv, digits)
    rhs_ctx = _NumericContext(mp.exp(-bv), av, bv, digits)
    return lhs_ctx, rhs_ctx, \
        f"alpha={cf.render(point.alpha)} beta={cf.render(point.beta)}"


def verify_numeric(rec: IdentityRecord, digits: int | None = None) -> VerificationReport:
    if not isinstance(rec.kind, NumericKind):
        raise EngineError(f"record {rec.id} is not a numeric record")
    d = digits if digits is not None else rec.kind.digits
    t0 = perf_counter()
    current = "corpus point"
    try:
        max_residual = mpf(0)
        worst = ""
        passed = True
        with mp.workdps(d + precision_guard() + 5):
            tol_base = mpf(10) ** (-d)
            for point in rec.kind.points:
                lhs_ctx, rhs_ctx, label = _point_contexts(point, d)
                current = label
                lv = eval_numeric(rec.lhs, lhs_ctx)
                rv = eval_numeric(rec.rhs, rhs_ctx)
                residual = abs(lv - rv)
                if residual > tol_base * max(1, abs(lv)):
                    passed = False
                if residual > max_residual:
                    max_residual = residual
                    worst = label
            detail = f"max residual {mp.nstr(max_residual, 4)}"
            if not passed:
                detail += f" at {worst} exceeds 1e-{d} frame"
        elapsed = int((perf_counter() - t0) * 1000)
        return VerificationReport(rec.id, "numeric",
                                  "pass" if passed else "fail", detail, elapsed)
    except CubicCFError as exc:
        elapsed = int((perf_counter() - t0) * 1000)
        return VerificationReport(rec.id, "numeric", "error",
                                  f"{exc} [{current}]", elapsed)


def verify_record(rec: IdentityRecord, order: int | None = None,
                  digits: int | None = None) -> VerificationReport:
    if isinstance(rec.kind, SeriesKind):
        return verify_series(rec, order)
    return verify_numeric(rec, digits)


# --- mutation helpers (sensitivity checks) --------------------------------------


def _map_cf_literals(node: cf.Node, fn):
    if isinstance(node, cf.Lit):
        return cf.Lit(fn(node.value)) if node.value.denominator == 1 else node
    if isinstance(node, cf.Neg):
        return cf.Neg(_map_cf_literals(node.operand, fn))
    if isinstance(node, cf.Exp):
        return cf.Exp(_map_cf_literals(node.operand, fn))
    if isinstance(node, cf.BinOp):
        return cf.BinOp(node.op, _map_cf_literals(node.left, fn),
                        _map_cf_literals(node.right, fn))
    if isinstance(node, cf.Pow):
        return cf.Pow(_map_cf_literals(node.base, fn), node.exponent)
    return node


def _map_literals(node: ast.Expr, fn):
    if isinstance(node, ast.Lit):
        return ast.Lit(fn(node.value)) if node.value.denominator == 1 else node
    if isinstance(node, ast.CFLeaf):
        return ast.CFLeaf(_map_cf_literals(node.tree, fn))
    if isinstance(node, ast.Neg):
        return ast.Neg(_map_literals(node.operand, fn))
    if isinstance(node, ast.ExpCall):
        return ast.ExpCall(_map_literals(node.operand, fn))
    if isinstance(node, ast.Diff):
        return ast.Diff(_map_literals(node.operand, fn))
    if isinstance(node, ast.BinOp):
        return ast.BinOp(node.op, _map_literals(node.left, fn),
                         _map_literals(node.right, fn))
    if isinstance(node, ast.Pow):
        return ast.Pow(_map_literals(node.base, fn), node.exponent)
    return node


def integer_sites(rec: IdentityRecord) -> list:
    """Integer constants of both sides in deterministic traversal order."""
    sites = []

    def record_site(v):
        sites.append(v)
        return v

    _map_literals(rec.lhs, record_site)
    _map_literals(rec.rhs, record_site)
    return sites


def mutate_record(rec: IdentityRecord, site_index: int, delta: int = 1) -> IdentityRecord:
    """Return a copy of rec with one integer constant shifted by delta."""
    counter = [0]

    def bump(v):
        if counter[0] == site_index:
            counter[0] += 1
            return v + delta
        counter[0] += 1
        return v

    new_lhs = _map_literals(rec.lhs, bump)
    new_rhs = _map_literals(rec.rhs, bump)
    if counter[0] <= site_index:
        raise ValueError(f"record {rec.id} has only {counter[0]} integer sites")
    return IdentityRecord(id=rec.id + "-mutated", kind=rec.kind,
                          lhs=new_lhs, rhs=new_rhs, ref=rec.ref,
                          note="mutated for sensitivity check")
