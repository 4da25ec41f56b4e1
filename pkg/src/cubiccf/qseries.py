"""Exact truncated Laurent series in x = q^(1/D) with rational coefficients.

A series knows its lattice D (the series variable is x = q^(1/D)), its lowest
exponent `low` (in x units, may be negative down to -4*D) and the highest
exponent `high` through which its coefficients are valid.  Coefficients are
exact Python ints or Fractions; nothing is ever rounded, so a verified
identity is verified exactly through the truncation order.

Binary operations unify lattices via lcm (bounded by LATTICE_BOUND) and
propagate validity honestly: a product is only claimed through the exponent
where the first unknown term of either factor could interfere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    ExponentRangeError,
    FractionalSignExponent,
    LatticeOverflow,
    NotInvertible,
    QSeriesError,
    RootNotExtractable,
)

LATTICE_BOUND = 24
NEG_Q_ORDER_BOUND = 4  # lowest representable exponent is q^(-4)


def _norm(c):
    """Collapse integral Fractions to plain ints (fast path for ring ops)."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _check_low(low: int, lattice: int) -> None:
    if low < -NEG_Q_ORDER_BOUND * lattice:
        raise ExponentRangeError(
            f"exponent q^({Fraction(low, lattice)}) below bound q^(-{NEG_Q_ORDER_BOUND})"
        )


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class QSeries:
    """Truncated Laurent series with exact coefficients on a q^(1/D) lattice."""

    __slots__ = ("lattice", "low", "high", "coeffs")

    def __init__(self, lattice: int, low: int, high: int, coeffs):
        if lattice < 1:
            raise QSeriesError(f"lattice must be positive, got {lattice}")
        if high < low:
            raise QSeriesError(f"empty truncation window [{low}, {high}]")
        if len(coeffs) != high - low + 1:
            raise QSeriesError(
                f"coefficient count {len(coeffs)} != window size {high - low + 1}"
            )
        _check_low(low, lattice)
        self.lattice = lattice
        self.low = low
        self.high = high
        self.coeffs = [_norm(c) for c in coeffs]

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, order: int, lattice: int = 1) -> "QSeries":
        return cls(lattice, 0, order * lattice, [0] * (order * lattice + 1))

    @classmethod
    def one(cls, order: int, lattice: int = 1) -> "QSeries":
        c = [0] * (order * lattice + 1)
        c[0] = 1
        return cls(lattice, 0, order * lattice, c)

    @classmethod
    def from_terms(cls, terms: dict, order: int, lattice: int = 1) -> "QSeries":
        """Series from {x-exponent: coefficient} valid through q^order."""
        high = order * lattice
        low = min((e for e in terms), default=0)
        low = min(low, 0)
        c = [0] * (high - low + 1)
        for e, v in terms.items():
            if e <= high:
                c[e - low] += v
        return cls(lattice, low, high, c)

    @classmethod
    def monomial(cls, coeff, q_exp: Fraction, order: int) -> "QSeries":
        """coeff * q^q_exp, valid through q^order."""
        q_exp = Fraction(q_exp)
        lattice = q_exp.denominator
        if lattice > LATTICE_BOUND:
            raise LatticeOverflow(
                f"monomial exponent {q_exp} needs lattice {lattice} > {LATTICE_BOUND}"
            )
        e = q_exp.numerator
        high = max(order * lattice, e)
        low = min(e, 0)
        c = [0] * (high - low + 1)
        c[e - low] = coeff
        return cls(lattice, low, high, c)

    # -- inspection -----------------------------------------------------------

    def q_order(self) -> Fraction:
        """Highest q-exponent through which coefficients are valid."""
        return Fraction(self.high, self.lattice)

    @property
    def order(self) -> int:
        return self.high // self.lattice

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, q_exp) -> Fraction:
        """Coefficient of q^q_exp; 0 below the window, error above validity."""
        q_exp = Fraction(q_exp)
        scaled = q_exp * self.lattice
        if scaled.denominator != 1:
            return Fraction(0)
        e = scaled.numerator
        if e > self.high:
            raise QSeriesError(f"coefficient of q^{q_exp} beyond validity")
        if e < self.low:
            return Fraction(0)
        return Fraction(self.coeffs[e - self.low])

    def terms(self):
        """Nonzero (q-exponent, coefficient) pairs in increasing order."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.low + i, self.lattice), c

    def first_nonzero(self, through_order=None):
        """First nonzero term, optionally restricted to q-exponent <= limit."""
        for e, c in self.terms():
            if through_order is not None and e > through_order:
                return None
            return e, c
        return None

    def leading(self):
        res = self.first_nonzero()
        if res is None:
            raise NotInvertible("zero series has no leading coefficient")
        return res

    def is_unit(self) -> bool:
        return self.first_nonzero() is not None

    # -- lattice management ----------------------------------------------------

    def to_lattice(self, new_lattice: int) -> "QSeries":
        """Embed onto a finer lattice (new_lattice must be a multiple of D)."""
        if new_lattice == self.lattice:
            return self
        if new_lattice % self.lattice:
            raise QSeriesError(
                f"cannot embed lattice {self.lattice} into {new_lattice}"
            )
        if new_lattice > LATTICE_BOUND:
            raise LatticeOverflow(f"lattice {new_lattice} exceeds bound {LATTICE_BOUND}")
        k = new_lattice // self.lattice
        low, high = self.low * k, self.high * k
        c = [0] * (high - low + 1)
        for i, v in enumerate(self.coeffs):
            if v:
                c[i * k] = v
        return QSeries(new_lattice, low, high, c)

    def reduce_lattice(self) -> "QSeries":
        """Drop to the coarsest lattice that loses neither terms nor validity."""
        g = gcd(self.lattice, self.high)
        for i, c in enumerate(self.coeffs):
            if c:
                g = gcd(g, self.low + i)
            if g == 1:
                return self
        if g == 1:
            return self
        low, high = self.low // g, self.high // g
        c = [0] * (high - low + 1)
        for i, v in enumerate(self.coeffs):
            if v:
                c[(self.low + i) // g - low] = v
        return QSeries(self.lattice // g, low, high, c)

    @staticmethod
    def unify(a: "QSeries", b: "QSeries"):
        if a.lattice == b.lattice:
            return a, b
        target = _lcm(a.lattice, b.lattice)
        if target > LATTICE_BOUND:
            raise LatticeOverflow(
                f"lcm({a.lattice}, {b.lattice}) = {target} exceeds bound {LATTICE_BOUND}"
            )
        return a.to_lattice(target), b.to_lattice(target)

    # -- ring operations ---------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.lattice, self.low, self.high, [-c for c in self.coeffs])

    def add(self, other: "QSeries") -> "QSeries":
        a, b = QSeries.unify(self, other)
        low = min(a.low, b.low)
        high = min(a.high, b.high)
        c = [0] * (high - low + 1)
        for src in (a, b):
            off = src.low - low
            for i, v in enumerate(src.coeffs):
                if v:
                    e = off + i
                    if e <= high - low:
                        c[e] += v
        return QSeries(a.lattice, low, high, c)

    def sub(self, other: "QSeries") -> "QSeries":
        return self.add(-other)

    def mul(self, other: "QSeries") -> "QSeries":
        a, b = QSeries.unify(self, other)
        low = a.low + b.low
        high = min(a.high + b.low, b.high + a.low)
        if high < low:
            raise QSeriesError("empty truncation window after multiplication")
        _check_low(low, a.lattice)
        size = high - low + 1
        res = [0] * size
        sa = [(i, v) for i, v in enumerate(a.coeffs) if v]
        sb = [(i, v) for i, v in enumerate(b.coeffs) if v]
        if len(sa) > len(sb):
            a, b, sa, sb = b, a, sb, sa
        bl = b.low
        bco = b.coeffs
        for i, va in sa:
            base = a.low + i + bl - low
            jmax = min(len(bco), size - base)
            if jmax <= 0:
                continue
            for j in range(jmax):
                vb = bco[j]
                if vb:
                    res[base + j] += va * vb
        return QSeries(a.lattice, low, high, res)

    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def scale(self, c) -> "QSeries":
        return QSeries(self.lattice, self.low, self.high,
                       [c * v for v in self.coeffs])

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient.

        The inverse of c0*x^l*(1 + u) is known through the same number of
        relative orders as the input, so high = old_high - 2*l.
        """
        lead = None
        for i, c in enumerate(self.coeffs):
            if c:
                lead = (i, c)
                break
        if lead is None:
            raise NotInvertible("cannot invert the zero series")
        i0, c0 = lead
        l = self.low + i0
        rel = self.high - l  # relative orders known
        a = self.coeffs[i0:i0 + rel + 1]
        unit_lead = c0 == 1 or c0 == -1
        inv0 = c0 if unit_lead else _norm(Fraction(1, 1) / c0)
        nz = [(j, aj) for j, aj in enumerate(a) if j and aj]
        b = [inv0] + [0] * rel
        for k in range(1, rel + 1):
            s = 0
            for j, aj in nz:
                if j > k:
                    break
                bj = b[k - j]
                if bj:
                    s += aj * bj
            if s:
                b[k] = -s * c0 if unit_lead else _norm(-s * inv0)
        low = -l
        _check_low(low, self.lattice)
        return QSeries(self.lattice, low, low + rel, b)

    def nth_root(self, n: int) -> "QSeries":
        """n-th root of a series with constant term 1 at exponent 0.

        Coefficient recursion from n*a*b' = a'*b (exact rational arithmetic):
        n*k*b_k = sum_j (k - (n+1)*j) * a_(k-j) * b_j over 0 <= j < k.
        """
        if n < 1:
            raise RootNotExtractable(f"root index must be positive, got {n}")
        if self.low > 0:
            raise RootNotExtractable("series has no constant term")
        for i in range(min(-self.low, len(self.coeffs))):
            if self.coeffs[i]:
                raise RootNotExtractable("series has terms below exponent 0")
        const = self.coeffs[-self.low] if -self.low < len(self.coeffs) else 0
        if const != 1:
            raise RootNotExtractable(f"constant term must be 1, got {const}")
        if n == 1:
            return self
        rel = self.high
        a = self.coeffs[-self.low:]
        nz = [(i, ai) for i, ai in enumerate(a) if i and ai]
        b = [1] + [0] * rel
        np1 = n + 1
        for k in range(1, rel + 1):
            s = 0
            for i, ai in nz:
                if i > k:
                    break
                bj = b[k - i]
                if bj:
                    s += (k - np1 * (k - i)) * ai * bj
            b[k] = _norm(Fraction(s, n * k)) if s else 0
        return QSeries(self.lattice, 0, rel, b)

    def pow_int(self, k: int) -> "QSeries":
        if k == 0:
            c = [0] * (self.high + 1) if self.high >= 0 else [0]
            high = max(self.high, 0)
            c = [0] * (high + 1)
            c[0] = 1
            return QSeries(self.lattice, 0, high, c)
        base = self if k > 0 else self.inverse()
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    def pow_rational(self, exponent: Fraction) -> "QSeries":
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            return self.pow_int(exponent.numerator)
        return self.nth_root(exponent.denominator).pow_int(exponent.numerator)

    def substitute_monomial(self, sign: int, m: Fraction) -> "QSeries":
        """Apply q -> sign * q^m exponent-wise (sign in {+1, -1}, m > 0)."""
        if sign not in (1, -1):
            raise QSeriesError(f"sign must be +1 or -1, got {sign}")
        m = Fraction(m)
        if m <= 0:
            raise QSeriesError(f"substitution exponent must be positive, got {m}")
        step = Fraction(m, self.lattice)  # q-exponent carried by one x step
        target = step.denominator
        if target > LATTICE_BOUND:
            raise LatticeOverflow(
                f"substitution needs lattice {target} > bound {LATTICE_BOUND}"
            )
        a = step.numerator  # old x-exponent e maps to new x-exponent e*a
        terms = {}
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.low + i
            if sign == -1:
                q_exp = e * step
                if q_exp.denominator != 1:
                    raise FractionalSignExponent(
                        f"q -> -q^{m} hits fractional exponent q^{q_exp}"
                    )
                if q_exp.numerator % 2:
                    c = -c
            terms[e * a] = c
        high = self.high * a
        low = min(min(terms, default=0), 0)
        _check_low(low, target)
        coeffs = [0] * (high - low + 1)
        for e, c in terms.items():
            if e <= high:
                coeffs[e - low] = c
        return QSeries(target, low, high, coeffs).reduce_lattice()

    def derivative(self) -> "QSeries":
        """Term-wise d/dq (rational exponents supported)."""
        D = self.lattice
        low, high = self.low - D, self.high - D
        _check_low(low, D)
        c = [0] * (high - low + 1)
        for i, v in enumerate(self.coeffs):
            if v:
                e = self.low + i
                c[i] = _norm(v * Fraction(e, D))
        return QSeries(D, low, high, c)

    # -- comparisons ------------------------------------------------------------

    def agrees_with(self, other: "QSeries", order) -> bool:
        """True iff self - other vanishes for every q-exponent <= order."""
        diff = self.sub(other)
        if diff.q_order() < Fraction(order):
            raise QSeriesError(
                f"validity q^{diff.q_order()} below requested order {order}"
            )
        return diff.first_nonzero(through_order=Fraction(order)) is None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries.unify(self, other)
        if a.high != b.high:
            return False
        lo = min(a.low, b.low)
        for e in range(lo, a.high + 1):
            ca = a.coeffs[e - a.low] if a.low <= e else 0
            cb = b.coeffs[e - b.low] if b.low <= e else 0
            if ca != cb:
                return False
        return True

    def __hash__(self):
        return hash((self.lattice, self.low, self.high,
                     tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self):
        parts = []
        for e, c in self.terms():
            parts.append(f"{c}*q^({e})")
            if len(parts) >= 6:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        return f"QSeries[D={self.lattice}, valid to q^{self.q_order()}]({body})"


# --- module-level operation surface -------------------------------------------

def ring_ops(a: QSeries, b, kind: str) -> QSeries:
    """add/sub/mul/neg dispatcher over the series ring."""
    if kind == "neg":
        return -a
    if kind == "add":
        return a.add(b)
    if kind == "sub":
        return a.sub(b)
    if kind == "mul":
        return a.mul(b)
    raise ValueError(f"unknown ring operation {kind!r}")


def inverse(a: QSeries) -> QSeries:
    return a.inverse()


def nth_root_series(a: QSeries, n: int) -> QSeries:
    return a.nth_root(n)


def substitute_monomial(a: QSeries, sign: int, m) -> QSeries:
    return a.substitute_monomial(sign, Fraction(m))


def derivative(a: QSeries) -> QSeries:
    return a.derivative()


def infinite_product(sign: int, r, s, power: int, order: int) -> QSeries:
    """(sign*q^r; q^s)_inf ** power, truncated to q^order.

    Only factors (1 - sign*q^(r+k*s)) with exponent <= order are multiplied;
    later factors cannot touch coefficients below the truncation.
    """
    if sign not in (1, -1):
        raise QSeriesError(f"sign must be +1 or -1, got {sign}")
    r, s = Fraction(r), Fraction(s)
    if r <= 0 or s <= 0:
        raise QSeriesError("product offsets r, s must be positive")
    lattice = _lcm(r.denominator, s.denominator)
    if lattice > LATTICE_BOUND:
        raise LatticeOverflow(f"product needs lattice {lattice} > {LATTICE_BOUND}")
    high = order * lattice
    coeffs = [0] * (high + 1)
    coeffs[0] = 1
    if power:
        reps = abs(power)
        k = 0
        while True:
            q_exp = r + k * s
            if q_exp > order:
                break
            e = int(q_exp * lattice)
            for _ in range(reps):
                # multiply in place by (1 - sign*x^e): new[i] -= sign*old[i-e]
                if sign == 1:
                    for i in range(high, e - 1, -1):
                        if coeffs[i - e]:
                            coeffs[i] -= coeffs[i - e]
                else:
                    for i in range(high, e - 1, -1):
                        if coeffs[i - e]:
                            coeffs[i] += coeffs[i - e]
            k += 1
    prod = QSeries(lattice, 0, high, coeffs)
    return prod.inverse() if power < 0 else prod


_theta_cache: dict = {}


def theta_series(kind: str, order: int) -> QSeries:
    """Series of phi(q), psi(q), f(-q) or chi(-q) through q^order.

    phi and psi come from their defining sums (squares / triangular numbers),
    f(-q) from the pentagonal-number sum, chi(-q) from its product
    (q; q^2)_inf.  The matching product forms live in theta_product for
    independent cross-checks.
    """
    key = (kind, order)
    cached = _theta_cache.get(key)
    if cached is not None:
        return cached
    if order < 1:
        raise QSeriesError(f"order must be >= 1, got {order}")
    terms: dict[int, int] = {}
    if kind == "phi":
        terms[0] = 1
        n = 1
        while n * n <= order:
            terms[n * n] = 2
            n += 1
        result = QSeries.from_terms(terms, order)
    elif kind == "psi":
        n = 0
        while n * (n + 1) // 2 <= order:
            terms[n * (n + 1) // 2] = 1
            n += 1
        result = QSeries.from_terms(terms, order)
    elif kind == "f_minus":
        terms[0] = 1
        n = 1
        while n * (3 * n - 1) // 2 <= order:
            sgn = -1 if n % 2 else 1
            terms[n * (3 * n - 1) // 2] = sgn
            e2 = n * (3 * n + 1) // 2
            if e2 <= order:
                terms[e2] = sgn
            n += 1
        result = QSeries.from_terms(terms, order)
    elif kind == "chi_minus":
        result = infinite_product(1, 1, 2, 1, order)
    else:
        raise QSeriesError(f"unknown theta kind {kind!r}")
    _theta_cache[key] = result
    return result


def theta_product(kind: str, order: int) -> QSeries:
    """Product-form counterparts of theta_series, used as independent oracles.

    phi via the triple-product shape (-q; q^2)^2 (q^2; q^2), psi via
    (q^2; q^2)/(q; q^2), f via (q; q)_inf, chi via the quotient
    f(-q)/f(-q^2) of two pentagonal sums.
    """
    if kind == "phi":
        return infinite_product(-1, 1, 2, 2, order).mul(
            infinite_product(1, 2, 2, 1, order))
    if kind == "psi":
        return infinite_product(1, 2, 2, 1, order).mul(
            infinite_product(1, 1, 2, -1, order))
    if kind == "f_minus":
        return infinite_product(1, 1, 1, 1, order)
    if kind == "chi_minus":
        f1 = theta_series("f_minus", order)
        f2 = theta_series("f_minus", order).substitute_monomial(1, Fraction(2))
        return f1.mul(f2.inverse())
    raise QSeriesError(f"unknown theta kind {kind!r}")


_cf_cache: dict = {}


def cf_series_at_depth(order: int, depth: int) -> QSeries:
    """V(q) series from the backward recurrence truncated at `depth`.

    t_k = 1 + (q^k + q^(2k))/t_(k+1) with unit tail, then q^(1/3)/t_1.
    The k-th partial numerator has q-valuation k, so any depth > order
    yields the same coefficients through q^order.
    """
    if order < 0:
        raise QSeriesError(f"order must be >= 0, got {order}")
    n = max(order, 1)
    t = QSeries.one(n)
    for k in range(min(depth, n), 0, -1):
        terms = {k: 1}
        if 2 * k <= n:
            terms[2 * k] = 1
        numer = QSeries.from_terms(terms, n)
        t = QSeries.one(n).add(numer.mul(t.inverse()))
    head = QSeries.monomial(1, Fraction(1, 3), n)
    v = head.mul(t.inverse().to_lattice(3))
    high = min(v.high, 3 * order + 1)
    return QSeries(3, v.low, high, v.coeffs[:high - v.low + 1])


def cf_series(order: int) -> QSeries:
    """Series of V(q) on lattice D = 3, at the sufficient depth order + 2."""
    cached = _cf_cache.get(order)
    if cached is not None:
        return cached
    result = cf_series_at_depth(order, order + 2)
    _cf_cache[order] = result
    return result
