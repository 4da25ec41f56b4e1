"""High-precision evaluation of phi, psi, f, chi and the cubic continued
fraction V at real points q in (-1, 1).

Each theta evaluator sums its defining series (or multiplies its defining
product) far enough that an explicit tail bound drops below 10^(-digits-5);
the bounds themselves are exposed for the soundness tests.  V comes in two
independent flavours: the continued fraction evaluated by backward recurrence
with depth doubling, and the closed combination of psi-quartics inverted for
V with a real cube root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import DomainError, EvaluationError, NoConvergence
from .numkern import BigReal, precision_guard

Q_ABS_CAP = mpf(9) / 10
# the raw summation stays accurate and fast well beyond the public cap;
# quadrature needs it on (0, 1) where the integrand has not yet decayed away
_RAW_CAP = mpf("0.995")

THETA_KINDS = ("phi", "psi", "f_minus", "chi_minus")


@dataclass(frozen=True)
class EvalPoint:
    """A numeric evaluation point q with an optional display label."""

    q: BigReal
    description: str = ""

    def __post_init__(self):
        if abs(self.q.value) > Q_ABS_CAP:
            raise DomainError(
                f"|q| = {mp.nstr(abs(self.q.value), 8)} exceeds cap 0.9"
            )


def _tail_exponent(kind: str, m: int) -> int:
    """Exponent of |q| in the first term omitted after index m."""
    n = m + 1
    if kind == "phi":
        return n * n
    if kind == "psi":
        return n * (n + 1) // 2
    if kind == "f_minus":
        return n * (3 * n - 1) // 2
    if kind == "chi_minus":
        return 2 * m + 3
    raise DomainError(f"unknown theta kind {kind!r}")


def _cutoff(kind: str, absq: float, eps_log10: float) -> int:
    """Smallest summation index whose tail bound is below 10^eps_log10."""
    lq = math.log10(absq)
    if kind == "chi_minus":
        # frame: 4/((1-|q|)(1-|q|^2)) and the partial-product magnitude,
        # both conservatively absorbed into the constant and the double log
        budget = eps_log10 - 4.0 + 2.0 * math.log10(1.0 - absq)
    else:
        budget = eps_log10 - 1.0 + math.log10(1.0 - absq)
    m = 0
    while _tail_exponent(kind, m) * lq > budget:
        m += 1
    return m


def theta_tail_bound(kind: str, q: BigReal, m: int, digits: int) -> BigReal:
    """Bound on |full sum - partial sum through index m| for theta_num."""
    with mp.workdps(digits + precision_guard()):
        absq = abs(q.value)
        e = _tail_exponent(kind, m)
        if kind == "chi_minus":
            scale = abs(_theta_sum_raw(kind, q.value, digits, cutoff=m))
            bound = scale * 4 * absq ** e / ((1 - absq) * (1 - absq ** 2))
        else:
            bound = 2 * absq ** e / (1 - absq)
        return BigReal(bound, max(digits, 10))


def _theta_sum_raw(kind: str, q, digits: int, cutoff: int | None = None):
    """Partial sum/product as a raw mpf under the caller's working precision."""
    absq = float(abs(q))
    if absq >= _RAW_CAP:
        raise DomainError(f"|q| = {absq} too close to 1 for direct summation")
    if absq == 0.0:
        return mpf(1)
    m = cutoff if cutoff is not None else _cutoff(kind, absq, -(digits + 5))
    if kind == "phi":
        total = mpf(1)
        pw = mpf(1)          # q^(n^2)
        step = q             # q^(2n-1)
        q2 = q * q
        for _ in range(1, m + 1):
            pw = pw * step
            step = step * q2
            total += 2 * pw
        return total
    if kind == "psi":
        total = mpf(1)
        pw = mpf(1)          # q^(n(n+1)/2)
        step = q             # q^n
        for _ in range(1, m + 1):
            pw = pw * step
            step = step * q
            total += pw
        return total
    if kind == "f_minus":
        total = mpf(1)
        sign = 1
        for n in range(1, m + 1):
            sign = -sign
            total += sign * (q ** (n * (3 * n - 1) // 2) + q ** (n * (3 * n + 1) // 2))
        return total
    if kind == "chi_minus":
        total = mpf(1)
        pw = q               # q^(2j+1)
        q2 = q * q
        for _ in range(0, m + 1):
            total *= (1 - pw)
            pw = pw * q2
        return total
    raise DomainError(f"unknown theta kind {kind!r}")


def theta_partial_sum(kind: str, q: BigReal, m: int, digits: int) -> BigReal:
    """Partial sum through index m (exposed for the tail-bound tests)."""
    with mp.workdps(digits + precision_guard()):
        return BigReal(_theta_sum_raw(kind, q.value, digits, cutoff=m), digits)


def theta_num(kind: str, q: BigReal, digits: int) -> BigReal:
    """phi/psi/f(-.)/chi(-.) at q, |q| <= 0.9, to `digits` digits."""
    if abs(q.value) > Q_ABS_CAP:
        raise DomainError(f"|q| = {mp.nstr(abs(q.value), 8)} exceeds cap 0.9")
    with mp.workdps(digits + precision_guard()):
        return BigReal(_theta_sum_raw(kind, q.value, digits), digits)


# --- the cubic continued fraction -------------------------------------------


def _real_cbrt(x):
    return -mp.cbrt(-x) if x < 0 else mp.cbrt(x)


def _cf_backward(q, depth: int):
    """Backward recurrence with unit tail: t_k = 1 + (q^k + q^(2k))/t_(k+1)."""
    powers = [mpf(1)] * (depth + 1)
    pw = mpf(1)
    for k in range(1, depth + 1):
        pw = pw * q
        powers[k] = pw
    t = mpf(1)
    for k in range(depth, 0, -1):
        pk = powers[k]
        numer = pk + pk * pk
        if t == 0:
            raise EvaluationError("continued fraction hit a zero denominator")
        t = 1 + numer / t
    if t == 0:
        raise EvaluationError("continued fraction hit a zero denominator")
    return _real_cbrt(q) / t


def V_cf_num(q: BigReal, digits: int) -> BigReal:
    """V(q) by its continued fraction; depth doubles until two successive
    evaluations agree to 10^(-digits-5)."""
    if q.value == 0:
        raise DomainError("V is undefined at q = 0")
    if abs(q.value) > Q_ABS_CAP:
        raise DomainError(f"|q| = {mp.nstr(abs(q.value), 8)} exceeds cap 0.9")
    eps = mpf(10) ** (-(digits + 5))
    with mp.workdps(digits + precision_guard() + 5):
        depth = 16
        prev = _cf_backward(q.value, depth)
        while depth <= 1_000_000:
            depth *= 2
            cur = _cf_backward(q.value, depth)
            if abs(cur - prev) <= eps:
                return BigReal(cur, digits)
            prev = cur
    raise NoConvergence(f"continued fraction did not settle by depth {depth}")


def V_theta_num(q: BigReal, digits: int) -> BigReal:
    """V(q) = (q*psi^4(q^3) / (psi^4(q) - q*psi^4(q^3)))^(1/3), real root."""
    if q.value == 0:
        raise DomainError("V is undefined at q = 0")
    if abs(q.value) > Q_ABS_CAP:
        raise DomainError(f"|q| = {mp.nstr(abs(q.value), 8)} exceeds cap 0.9")
    work = digits + 10
    with mp.workdps(work + precision_guard()):
        qv = q.value
        p1 = _theta_sum_raw("psi", qv, work)
        p3 = _theta_sum_raw("psi", qv ** 3, work)
        denom = p1 ** 4 - qv * p3 ** 4
        if denom == 0 or abs(denom) < mpf(10) ** (-(work + 5)):
            raise DomainError("psi^4(q) - q*psi^4(q^3) vanished unexpectedly")
        base = qv * p3 ** 4 / denom
        return BigReal(_real_cbrt(base), digits)
