"""Arbitrary-precision real arithmetic and the fundamental constants pi, Gamma(3/4).

Values are immutable `BigReal` wrappers around mpmath floats.  Every value
carries the number of decimal digits it is claimed to be good for; arithmetic
propagates the minimum of the operand precisions and computes with guard
digits on top, so downstream modules can reason in terms of requested digits
only.  The constant cache is a plain dict keyed by (name, precision); entries
are immutable, so concurrent readers are safe.
"""

from __future__ import annotations

import os
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DomainError, NoConvergence, PrecisionUnderflow

MIN_PRECISION = 10
_DEFAULT_GUARD = 10


def precision_guard() -> int:
    """Guard digits added on top of requested precision (env-overridable)."""
    raw = os.environ.get("CUBICCF_PRECISION_GUARD", "")
    try:
        guard = int(raw)
    except ValueError:
        return _DEFAULT_GUARD
    return guard if guard >= 0 else _DEFAULT_GUARD


def _require_precision(precision: int) -> None:
    if precision < MIN_PRECISION:
        raise PrecisionUnderflow(
            f"precision {precision} below minimum {MIN_PRECISION}"
        )


class BigReal:
    """A finite real number good to `precision` decimal digits."""

    __slots__ = ("value", "precision")

    def __init__(self, value, precision: int):
        _require_precision(precision)
        with mp.workdps(precision + precision_guard()):
            if isinstance(value, BigReal):
                v = value.value
            elif isinstance(value, Fraction):
                v = mpf(value.numerator) / mpf(value.denominator)
            elif isinstance(value, (int, str)):
                v = mpf(value)
            elif isinstance(value, float):
                # floats are accepted for convenience but carry only ~15 digits
                v = mpf(value)
            else:
                v = mpf(value)  # mpf passthrough
        if not mp.isfinite(v):
            raise DomainError(f"non-finite value {v!r}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, *args):
        raise AttributeError("BigReal is immutable")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "BigReal":
        if isinstance(other, BigReal):
            return other
        if isinstance(other, (int, Fraction)):
            return BigReal(other, self.precision)
        return NotImplemented

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.precision, other.precision)
        with mp.workdps(prec + precision_guard()):
            v = op(self.value, other.value)
        return _wrap(v, prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise DomainError("division by zero")
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise DomainError("division by zero")
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and self.value == 0:
            raise DomainError("zero raised to negative power")
        with mp.workdps(self.precision + precision_guard()):
            v = self.value ** n
        return _wrap(v, self.precision)

    def __neg__(self):
        # mpmath rounds unary ops to the ambient context, so set it explicitly
        with mp.workdps(self.precision + precision_guard()):
            return _wrap(-self.value, self.precision)

    def __abs__(self):
        with mp.workdps(self.precision + precision_guard()):
            return _wrap(abs(self.value), self.precision)

    # -- comparisons (on the underlying values) -----------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.value == other.value

    def __lt__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.value < other.value

    def __le__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.value <= other.value

    def __gt__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.value > other.value

    def __ge__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.value >= other.value

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"BigReal({self.to_str()}, precision={self.precision})"

    def to_str(self, digits: int | None = None) -> str:
        d = digits if digits is not None else self.precision
        with mp.workdps(self.precision + precision_guard()):
            return mp.nstr(self.value, d, strip_zeros=False)


def _wrap(v, precision: int) -> BigReal:
    if not mp.isfinite(v):
        raise DomainError(f"non-finite result {v!r}")
    b = object.__new__(BigReal)
    object.__setattr__(b, "value", v)
    object.__setattr__(b, "precision", precision)
    return b


def _workdps(x: BigReal):
    return mp.workdps(x.precision + precision_guard())


# --- elementary functions ---------------------------------------------------

def exp(x: BigReal) -> BigReal:
    with _workdps(x):
        return _wrap(mp.exp(x.value), x.precision)


def ln(x: BigReal) -> BigReal:
    if x.value <= 0:
        raise DomainError("ln of non-positive value")
    with _workdps(x):
        return _wrap(mp.log(x.value), x.precision)


def sqrt(x: BigReal) -> BigReal:
    if x.value < 0:
        raise DomainError("sqrt of negative value")
    with _workdps(x):
        return _wrap(mp.sqrt(x.value), x.precision)


def nth_root(n: int, x: BigReal) -> BigReal:
    """Real n-th root; odd n accepts negative x (real-root convention)."""
    if n <= 0:
        raise DomainError(f"root index must be positive, got {n}")
    if x.value < 0:
        if n % 2 == 0:
            raise DomainError("even root of negative value")
        with _workdps(x):
            return _wrap(-mp.root(-x.value, n), x.precision)
    with _workdps(x):
        return _wrap(mp.root(x.value, n), x.precision)


def pow_rational(exponent: Fraction, x: BigReal) -> BigReal:
    """x**(p/r) with the real-root convention for negative x and odd r."""
    exponent = Fraction(exponent)
    p, r = exponent.numerator, exponent.denominator
    if x.value == 0:
        if p < 0:
            raise DomainError("zero raised to negative power")
        return BigReal(0 if p else 1, x.precision)
    root = nth_root(r, x)
    return root ** p


_ELEMENTARY = {"exp": exp, "ln": ln, "sqrt": sqrt}


def elementary(kind: str, x: BigReal, n: int | None = None,
               exponent: Fraction | None = None) -> BigReal:
    """Dispatch exp/ln/sqrt/nth_root(n)/pow_rational(p/r) by name."""
    if kind in _ELEMENTARY:
        return _ELEMENTARY[kind](x)
    if kind == "nth_root":
        if n is None:
            raise ValueError("nth_root requires n")
        return nth_root(n, x)
    if kind == "pow_rational":
        if exponent is None:
            raise ValueError("pow_rational requires exponent")
        return pow_rational(exponent, x)
    raise ValueError(f"unknown elementary kind {kind!r}")


# --- AGM and constants ------------------------------------------------------

def agm(a: BigReal, b: BigReal) -> BigReal:
    """Arithmetic-geometric mean of positive a, b."""
    if a.value <= 0 or b.value <= 0:
        raise DomainError("agm requires positive operands")
    prec = min(a.precision, b.precision)
    stop = mpf(10) ** (-(prec + 5))
    with mp.workdps(prec + precision_guard() + 5):
        x, y = mpf(a.value), mpf(b.value)
        for _ in range(prec * 4 + 64):
            if abs(x - y) <= stop * x:
                return _wrap((x + y) / 2, prec)
            x, y = (x + y) / 2, mp.sqrt(x * y)
    raise NoConvergence("agm iteration did not converge")


_const_cache: dict[tuple[str, int], BigReal] = {}


def const_pi(precision: int) -> BigReal:
    """pi via the Gauss-Legendre (AGM) iteration."""
    _require_precision(precision)
    cached = _const_cache.get(("pi", precision))
    if cached is not None:
        return cached
    with mp.workdps(precision + precision_guard() + 10):
        a = mpf(1)
        b = 1 / mp.sqrt(2)
        t = mpf(1) / 4
        p = mpf(1)
        # digits double per step; a few extra steps absorb the guard digits
        steps = max(4, precision.bit_length() + 3)
        for _ in range(steps):
            an = (a + b) / 2
            b = mp.sqrt(a * b)
            t -= p * (a - an) ** 2
            p *= 2
            a = an
        value = (a + b) ** 2 / (4 * t)
    result = _wrap(value, precision)
    _const_cache[("pi", precision)] = result
    return result


def gamma_three_quarters(precision: int) -> BigReal:
    """Gamma(3/4) from Gamma(1/4) = sqrt(2*sqrt(2*pi)*pi / agm(1, sqrt(2)))
    and the reflection product Gamma(1/4)*Gamma(3/4) = pi*sqrt(2)."""
    _require_precision(precision)
    cached = _const_cache.get(("gamma34", precision))
    if cached is not None:
        return cached
    work = precision + 10
    pi = const_pi(work)
    with mp.workdps(work + precision_guard()):
        m = agm(BigReal(1, work), sqrt(BigReal(2, work)))
        g14 = mp.sqrt(2 * mp.sqrt(2 * pi.value) * pi.value / m.value)
        value = pi.value * mp.sqrt(2) / g14
    result = _wrap(value, precision)
    _const_cache[("gamma34", precision)] = result
    return result
