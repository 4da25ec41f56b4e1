"""Tanh-sinh (double-exponential) quadrature and the integral representations
of the cubic continued fraction.

The node transform x = c + s*tanh((pi/2)*sinh(t)) pushes the trapezoid error
down double-exponentially; levels halve the mesh until two successive levels
agree to the requested tolerance, and the last inter-level difference is the
reported error estimate.  Node sums run in a fixed order, so results are
bit-stable for a given configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpf

from .errors import DomainError, EvaluationError, NoConvergence
from .numkern import BigReal, precision_guard
from .specfun import _theta_sum_raw

MAX_LEVEL = 14


@dataclass(frozen=True)
class Integrand:
    """An integrand on (0, 1) with declared endpoint behaviour.

    `evaluator` must return a finite BigReal everywhere strictly inside the
    interval; `singular_low`/`singular_high` declare whether the closed-form
    value at the endpoint is unavailable (the quadrature never evaluates at
    the endpoints themselves).
    """

    evaluator: Callable[[BigReal], BigReal]
    singular_low: bool = False
    singular_high: bool = False


def _tanh_sinh_raw(fv, a, b, tol, work_digits: int):
    """Core rule on mpf values; fv maps mpf -> mpf on the open interval."""
    c = (a + b) / 2
    s = (b - a) / 2
    half_pi = mp.pi / 2
    # largest |t|: beyond it the weight has decayed below the tolerance frame
    u_max = (work_digits * math.log(10) + 10) / 2
    t_max = math.asinh(2 * u_max / math.pi)

    def node(t):
        u = half_pi * mp.sinh(t)
        x = c + s * mp.tanh(u)
        w = half_pi * mp.cosh(t) / mp.cosh(u) ** 2
        return x, w

    def row_sum(ts):
        total = mpf(0)
        for t in ts:
            x, w = node(t)
            if x <= a or x >= b or w == 0:
                continue
            total += w * fv(x)
        return total

    h = mpf(1)
    ts0 = [0.0]
    k = 1
    while k * 1.0 <= t_max:
        ts0.extend((k * 1.0, -k * 1.0))
        k += 1
    total = row_sum(ts0)
    estimate = s * h * total
    last_diff = None
    for level in range(1, MAX_LEVEL + 1):
        h = h / 2
        step = float(h)
        ts = []
        t = step
        while t <= t_max:
            ts.extend((t, -t))
            t += 2 * step
        total = total + row_sum(ts)
        new_estimate = s * h * total
        last_diff = abs(new_estimate - estimate)
        estimate = new_estimate
        if level >= 2 and last_diff <= tol:
            return estimate, last_diff
    raise NoConvergence(
        f"tanh-sinh did not reach tol {mp.nstr(tol, 3)} by level {MAX_LEVEL}"
    )


def integrate_with_error(f: Integrand, a: BigReal, b: BigReal,
                         tol: BigReal) -> tuple[BigReal, BigReal]:
    """Integrate f over [a, b] in [0, 1]; returns (value, error estimate)."""
    av, bv = a.value, b.value
    if not (0 <= av <= bv <= 1):
        raise DomainError(f"integration interval [{av}, {bv}] not inside [0, 1]")
    if tol.value <= 0:
        raise DomainError("tolerance must be positive")
    if av == bv:
        return BigReal(0, a.precision), BigReal(0, a.precision)
    work_digits = max(15, int(-mp.log10(tol.value)) + 10)
    prec = min(a.precision, b.precision)
    with mp.workdps(work_digits + precision_guard()):
        def fv(x):
            res = f.evaluator(BigReal(x, work_digits))
            return res.value

        value, err = _tanh_sinh_raw(fv, av, bv, tol.value, work_digits)
        return BigReal(value, prec), BigReal(err, max(prec, 10))


def integrate(f: Integrand, a: BigReal, b: BigReal, tol: BigReal) -> BigReal:
    value, _ = integrate_with_error(f, a, b, tol)
    return value


# --- the two integral representations of V ----------------------------------


def _phi_minus_decayed(t, work: int) -> bool:
    """True when phi(-t)^2 * phi(-t^3)^2 / t is provably below 10^-(work+10).

    Uses phi(-e^(-eps)) <= 2.01*sqrt(pi/eps)*exp(-pi^2/(4 eps)), valid for
    eps <= 1; the factor phi(-t^3)^2 <= 1 is dropped.
    """
    eps = -math.log(float(t))
    if eps > 1.0:
        return False
    log10_bound = (math.log10(4.1 * math.pi / eps)
                   - (math.pi ** 2 / (2 * eps)) / math.log(10)
                   - math.log10(float(t)))
    return log10_bound < -(work + 10)


def _integrand_2_1(work: int) -> Integrand:
    def evaluator(tb: BigReal) -> BigReal:
        t = tb.value
        if t >= mpf("0.995") or _phi_minus_decayed(t, work):
            return BigReal(0, work)
        p1 = _theta_sum_raw("phi", -t, work)
        p3 = _theta_sum_raw("phi", -(t ** 3), work)
        return BigReal(p1 * p1 * p3 * p3 / t, work)

    return Integrand(evaluator, singular_low=False, singular_high=True)


def _integrand_2_2(work: int) -> Integrand:
    def evaluator(tb: BigReal) -> BigReal:
        t = tb.value
        p1 = _theta_sum_raw("psi", t, work)
        p3 = _theta_sum_raw("psi", t ** 3, work)
        return BigReal(p1 * p1 * p3 * p3, work)

    return Integrand(evaluator)


def rhs_2_1(q: BigReal, digits: int) -> BigReal:
    """V(q) from the log-derivative route: the phi^2*phi^2/t integral over
    [q, 1], exponentiated into 1/cbrt(-1 + 9*exp(integral))."""
    if not (0 < q.value < 1):
        raise DomainError("representation requires 0 < q < 1")
    work = digits + 10
    tol = _pow10(-(digits + 8), work)
    with mp.workdps(work + precision_guard()):
        integral, _ = integrate_with_error(
            _integrand_2_1(work), BigReal(q.value, work), BigReal(1, work), tol)
        base = -1 + 9 * mp.exp(integral.value)
        if base <= 0:
            raise EvaluationError("cube-root argument unexpectedly non-positive")
        return BigReal(1 / mp.cbrt(base), digits)


def rhs_2_2(q: BigReal, digits: int) -> BigReal:
    """V(q) from the psi^2*psi^2 integral over [0, q]:
    (1 - exp(-8*integral))^(1/3) / 2."""
    if not (0 < q.value < 1):
        raise DomainError("representation requires 0 < q < 1")
    work = digits + 10
    tol = _pow10(-(digits + 8), work)
    with mp.workdps(work + precision_guard()):
        integral, _ = integrate_with_error(
            _integrand_2_2(work), BigReal(0, work), BigReal(q.value, work), tol)
        inner = 1 - mp.exp(-8 * integral.value)
        if inner <= 0:
            raise EvaluationError("cube-root argument unexpectedly non-positive")
        return BigReal(mp.cbrt(inner) / 2, digits)


def _pow10(exponent: int, precision: int) -> BigReal:
    with mp.workdps(precision + precision_guard()):
        return BigReal(mpf(10) ** exponent, precision)
