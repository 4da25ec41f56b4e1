'''Built-in identity corpus.

The corpus is a DSL document (parsed on first use) so that the ground truth
being tested lives in one reviewable block of text.  Ids group as:

* S-*    exact series identities, verified coefficient-by-coefficient;
* N-1.*  transformation formulas, stated with pairs (alpha, beta) where the
         two sides evaluate at q = exp(-alpha) and q = exp(-beta);
* N-3.1  the psi(-e^-a) transformation;
* N-4.*  reciprocity products (rewritten as lhs(alpha) = C/lhs(beta));
* N-2.*  the two integral representations of V;
* T-5.*  explicit closed-form values;
* N-S1-* the four classical phi/psi values involving pi and Gamma(3/4).

Transformation constraints: the displayed formulas use parameters tied by
alpha*beta = pi or pi^2; here each record's points carry the equivalent
exponent pair (a, b) with a*b fixed (pi^2, 2pi^2, 4pi^2, pi^2/3 or 2pi^2/3),
so both sides are plain functions of their own exponent.

Records with "note: corrected ..." repair display misprints; in every case
the corrected reading is the unique one under which the check passes, and
the note says what was wrong.
'''

from __future__ import annotations

from .dsl import parse_corpus

BUILTIN_CORPUS = '''
# ----- exact series identities (order 150) -----

identity S-1.5 series order=150 lattice=3 ref "cube of V(q) as a rational function of V(q^3)"
lhs: V(q)^3
rhs: V(q^3)*(1-V(q^3)+V(q^3)^2)/(1+2*V(q^3)+4*V(q^3)^2)
note: corrected - the displayed cube relation repeats V^3(q) on both sides; this is the intended statement, consistent with the cube-root identity S-2.10

identity S-2.3d series order=150 ref "logarithmic q-derivative of psi^4(q)/(q psi^4(q^3))"
lhs: q*diff(psi(q)^4/(q*psi(q^3)^4))
rhs: -(psi(q)^4/(q*psi(q^3)^4))*phi(-q)^2*phi(-q^3)^2

identity S-2.4d series order=150 ref "logarithmic q-derivative of phi^4(-q)/phi^4(-q^3)"
lhs: diff(phi(-q)^4/phi(-q^3)^4)
rhs: -8*psi(q)^2*psi(q^3)^2*phi(-q)^4/phi(-q^3)^4

identity S-2.5 series order=150 lattice=3 ref "1-8V^3(q) as a theta quotient of moduli q, q^3"
lhs: 1-8*V(q)^3
rhs: phi(-q)^4/phi(-q^3)^4
note: corrected - the display prints psi quartics, which fail at order 1; the phi quartic quotient verifies and is what the surrounding derivation uses

identity S-2.7 series order=150 ref "1+1/V(q^3) as a psi quotient of moduli q, q^9"
lhs: 1+1/V(q^3)
rhs: psi(q)/(q*psi(q^9))

identity S-2.8 series order=150 lattice=3 ref "1+1/V^3(q) as a psi quartic quotient of moduli q, q^3"
lhs: 1+1/V(q)^3
rhs: psi(q)^4/(q*psi(q^3)^4)

identity S-2.9 series order=150 ref "cube-root identity linking the degree-9 and degree-3 psi quotients"
lhs: 1-3*q*psi(q^9)/psi(q)
rhs: (1-9*q*psi(q^3)^4/psi(q)^4)^(1/3)

identity S-2.10 series order=150 lattice=3 ref "cube-root identity in V(q) and V(q^3)"
lhs: 1-3*V(q^3)/(1+V(q^3))
rhs: (1-9*V(q)^3/(1+V(q)^3))^(1/3)

identity S-5.1 series order=150 lattice=4 ref "degree-3 modular equation Q^4+P^4Q^4 = 9+P^4"
lhs: (phi(q)/phi(q^3))^4+(psi(-q)/(q^(1/4)*psi(-q^3)))^4*(phi(q)/phi(q^3))^4
rhs: 9+(psi(-q)/(q^(1/4)*psi(-q^3)))^4

identity S-5.2 series order=150 ref "degree-9 modular equation Q+PQ = 3+P"
lhs: phi(q)/phi(q^9)+(psi(-q)/(q*psi(-q^9)))*(phi(q)/phi(q^9))
rhs: 3+psi(-q)/(q*psi(-q^9))

identity S-5.3 series order=150 lattice=2 ref "degree-5 modular equation Q^2+P^2Q^2 = 5+P^2"
lhs: (phi(q)/phi(q^5))^2+(psi(-q)/(q^(1/2)*psi(-q^5)))^2*(phi(q)/phi(q^5))^2
rhs: 5+(psi(-q)/(q^(1/2)*psi(-q^5)))^2

identity S-5.4 series order=150 ref "phi^2(-q)/phi^2(-q^5) = 1-4W with W a weighted eta-type product"
lhs: phi(-q)^2/phi(-q^5)^2
rhs: 1-4*q*chi(-q)*f(q^5)*f(-q^20)/phi(-q^5)^2
note: W keeps f(q^5) exactly as displayed; that sign verifies here and in S-5.6, while f(-q^5) fails at order 6

identity S-5.6 series order=150 ref "psi^2(q)/(q psi^2(q^5)) = 1+1/W with the same W as S-5.4"
lhs: psi(q)^2/(q*psi(q^5)^2)
rhs: 1+phi(-q^5)^2/(q*chi(-q)*f(q^5)*f(-q^20))

identity S-5.20 series order=150 lattice=2 ref "degree-15 psi modular equation, cleared by q^6"
lhs: (psi(-q)/psi(-q^5))^3*(psi(-q^3)/psi(-q^15))^3+5*q^4*(psi(-q)/psi(-q^5))*(psi(-q^3)/psi(-q^15))
rhs: (psi(-q^3)/psi(-q^15))^4-3*q*(psi(-q)/psi(-q^5))*(psi(-q^3)/psi(-q^15))^3-3*q^3*(psi(-q)/psi(-q^5))^3*(psi(-q^3)/psi(-q^15))-q^4*(psi(-q)/psi(-q^5))^4
note: multiplied through by q^6 so every term carries integral exponents

identity S-5.28 series order=150 lattice=4 ref "cubic relation between the degree-3 psi quotients at q and q^3"
lhs: (psi(-q^3)/(q^(3/4)*psi(-q^9)))^3-(psi(-q)/(q^(1/4)*psi(-q^3)))^3*(psi(-q^3)/(q^(3/4)*psi(-q^9)))^2-3*(psi(-q)/(q^(1/4)*psi(-q^3)))^2*(psi(-q^3)/(q^(3/4)*psi(-q^9)))-3*psi(-q)/(q^(1/4)*psi(-q^3))
rhs: 0
note: corrected - the displayed second quotient collapses to a bare monomial (psi(-q^3) over q^(3/4) psi(-q^3)); with psi(-q^9) in its denominator the relation verifies

# ----- transformation formulas -----

identity N-1.9 numeric digits=40 at alpha=1 beta=pi^2, alpha=2 beta=pi^2/2, alpha=4 beta=pi^2/4 ref "a^(1/4) phi(e^-a) is invariant under a -> pi^2/a"
lhs: root(4,alpha)*phi(q)
rhs: root(4,beta)*phi(q)

identity N-1.10 numeric digits=40 at alpha=2 beta=pi^2, alpha=3 beta=2*pi^2/3, alpha=5 beta=2*pi^2/5 ref "psi(e^-a) against phi(-e^-b) under a*b = 2 pi^2"
lhs: 2*root(4,alpha/2)*psi(q)
rhs: root(4,beta)*exp(alpha/8)*phi(-q)

identity N-1.11 numeric digits=40 at alpha=2 beta=2*pi^2, alpha=4 beta=pi^2, alpha=6 beta=2*pi^2/3 ref "weighted f(-e^-a) is invariant under a*b = 4 pi^2"
lhs: exp(-alpha/24)*root(4,alpha/2)*f(-q)
rhs: exp(-beta/24)*root(4,beta/2)*f(-q)
note: corrected - the display flips the sign of f's argument on the right side; the matched-sign form is what the eta transformation gives and the only one that verifies

identity N-1.12 numeric digits=40 at alpha=1 beta=pi^2, alpha=2 beta=pi^2/2, alpha=3 beta=pi^2/3 ref "weighted f(e^-a) is invariant under a*b = pi^2"
lhs: exp(-alpha/24)*root(4,alpha)*f(q)
rhs: exp(-beta/24)*root(4,beta)*f(q)

identity N-3.1 numeric digits=40 at alpha=1 beta=pi^2, alpha=2 beta=pi^2/2, alpha=5 beta=pi^2/5, alpha=1/3 beta=3*pi^2, alpha=pi beta=pi ref "a^(1/4) e^(-a/8) psi(-e^-a) is invariant under a -> pi^2/a (one deliberate symmetric pair)"
lhs: root(4,alpha)*exp(-alpha/8)*psi(-q)
rhs: root(4,beta)*exp(-beta/8)*psi(-q)

# ----- reciprocity products (written as lhs(alpha) = C / lhs(beta)) -----

identity N-4.1 numeric digits=40 at alpha=2*pi beta=pi/2, alpha=5*pi beta=pi/5 ref "[1+1/V(-e^-a)][1+1/V(-e^-b)] = 3 under a*b = pi^2"
lhs: 1+1/V(-q)
rhs: 3/(1+1/V(-q))

identity N-4.2 numeric digits=40 at alpha=pi beta=pi/3, alpha=pi/2 beta=2*pi/3 ref "[1+1/V^3(-e^-a)][1+1/V^3(-e^-b)] = 9 under a*b = pi^2/3"
lhs: 1+1/V(-q)^3
rhs: 9/(1+1/V(-q)^3)

identity N-4.3 numeric digits=40 at alpha=sqrt(2)*pi beta=sqrt(2)*pi/3, alpha=sqrt(2)*pi/2 beta=2*sqrt(2)*pi/3 ref "[1+1/V^3(e^-a)][1-8V^3(e^-b)] = 9 under a*b = 2 pi^2/3"
lhs: 1+1/V(q)^3
rhs: 9/(1-8*V(q)^3)
note: corrected - the display negates the argument of the first factor, which makes the product negative; the derivation and numerics both require the positive argument

# ----- integral representations -----

identity N-2.1 numeric digits=30 at q=1/20, q=1/10, q=3/10 ref "V(q) from the phi^2(-t)phi^2(-t^3)/t integral over [q,1]"
lhs: V(q)
rhs: intrep1(q)

identity N-2.2 numeric digits=30 at q=1/20, q=1/10, q=3/10 ref "V(q) from the psi^2(t)psi^2(t^3) integral over [0,q]"
lhs: V(q)
rhs: intrep2(q)

# ----- explicit psi-quotient values -----

identity T-5.4-i numeric digits=40 at q=exp(-pi/sqrt(5)) ref "degree-5 psi quotient at exp(-pi/sqrt(5))"
lhs: psi(-q)/(q^(1/2)*psi(-q^5))
rhs: root(4,5)

identity T-5.4-ii numeric digits=40 at q=exp(-3*pi/sqrt(5)) ref "degree-5 psi quotient at exp(-3 pi/sqrt(5))"
lhs: psi(-q)/(q^(1/2)*psi(-q^5))
rhs: root(4,5)*(sqrt(3)+1)*(sqrt(5)+sqrt(3))/2

identity T-5.4-iii numeric digits=40 at q=exp(-pi/(3*sqrt(5))) ref "degree-9 psi quotient at exp(-pi/(3 sqrt(5)))"
lhs: psi(-q)/(q*psi(-q^9))
rhs: sqrt(3)*(sqrt(3)-1)*(sqrt(5)-sqrt(3))/2

identity T-5.4-iv numeric digits=40 at q=exp(-pi/(3*sqrt(3))) ref "degree-3 psi quotient at exp(-pi/(3 sqrt(3)))"
lhs: psi(-q)/(q^(1/4)*psi(-q^3))
rhs: (cbrt(4)-1)/root(4,3)

identity T-5.4-v numeric digits=40 at q=exp(-pi) ref "degree-3 psi quotient at exp(-pi)"
lhs: psi(-q)/(q^(1/4)*psi(-q^3))
rhs: root(4,3*sqrt(3)*(2+sqrt(3)))

identity T-5.4-vi numeric digits=40 at q=exp(-pi/(3*sqrt(5))) ref "degree-5 psi quotient at exp(-pi/(3 sqrt(5)))"
lhs: psi(-q)/(q^(1/2)*psi(-q^5))
rhs: root(4,5)*(sqrt(3)-1)*(sqrt(5)-sqrt(3))/2

identity T-5.4-vii numeric digits=40 at q=exp(-sqrt(5)*pi/3) ref "degree-9 psi quotient at exp(-sqrt(5) pi/3)"
lhs: psi(-q)/(q*psi(-q^9))
rhs: sqrt(3)*(sqrt(3)+1)*(sqrt(5)+sqrt(3))/2

identity T-5.4-viii numeric digits=40 at q=exp(-pi/sqrt(3)) ref "degree-3 psi quotient at exp(-pi/sqrt(3))"
lhs: psi(-q)/(q^(1/4)*psi(-q^3))
rhs: root(4,3)

identity T-5.4-ix numeric digits=40 at q=exp(-sqrt(3)*pi) ref "degree-3 psi quotient at exp(-sqrt(3) pi)"
lhs: psi(-q)/(q^(1/4)*psi(-q^3))
rhs: root(4,27)/(cbrt(4)-1)

identity T-5.4-x numeric digits=40 at q=exp(-pi/3) ref "degree-9 psi quotient at exp(-pi/3)"
lhs: psi(-q)/(q*psi(-q^9))
rhs: sqrt(3)

identity T-5.4-xi numeric digits=40 at q=exp(-pi/3) ref "degree-3 psi quotient at exp(-pi/3)"
lhs: psi(-q)/(q^(1/4)*psi(-q^3))
rhs: root(4,sqrt(3)*(2-sqrt(3)))

identity T-5.4-xii numeric digits=40 at q=exp(-pi/sqrt(3)) ref "degree-9 psi quotient at exp(-pi/sqrt(3))"
lhs: psi(-q)/(q*psi(-q^9))
rhs: 3/(cbrt(4)-1)

identity T-5.4-xiii numeric digits=40 at q=exp(-pi/(3*sqrt(3))) ref "degree-9 psi quotient at exp(-pi/(3 sqrt(3)))"
lhs: psi(-q)/(q*psi(-q^9))
rhs: cbrt(4)-1

# ----- explicit phi-quotient values -----

identity T-5.5-i numeric digits=40 at q=exp(-pi/sqrt(5)) ref "degree-5 phi quotient at exp(-pi/sqrt(5))"
lhs: phi(q)/phi(q^5)
rhs: root(4,5)

identity T-5.5-ii numeric digits=40 at q=exp(-3*pi/sqrt(5)) ref "degree-5 phi quotient at exp(-3 pi/sqrt(5))"
lhs: phi(q)/phi(q^5)
rhs: sqrt((10+5*sqrt(3)+4*sqrt(5)+2*sqrt(15))/(8+5*sqrt(3)+4*sqrt(5)+2*sqrt(15)))

identity T-5.5-iii numeric digits=40 at q=exp(-pi/(3*sqrt(5))) ref "degree-9 phi quotient at exp(-pi/(3 sqrt(5)))"
lhs: phi(q)/phi(q^9)
rhs: (9-3*sqrt(3)+3*sqrt(5)-sqrt(15))/(5-3*sqrt(3)+3*sqrt(5)-sqrt(15))

identity T-5.5-iv numeric digits=40 at q=exp(-pi/(3*sqrt(3))) ref "degree-3 phi quotient at exp(-pi/(3 sqrt(3)))"
lhs: phi(q)/phi(q^3)
rhs: root(4,(27+(cbrt(4)-1)^4)/(3+(cbrt(4)-1)^4))

identity T-5.5-v numeric digits=40 at q=exp(-pi) ref "degree-3 phi quotient at exp(-pi)"
lhs: phi(q)/phi(q^3)
rhs: root(4,6*sqrt(3)-9)

identity T-5.5-vi numeric digits=40 at q=exp(-pi/(3*sqrt(5))) ref "degree-5 phi quotient at exp(-pi/(3 sqrt(5)))"
lhs: phi(q)/phi(q^5)
rhs: sqrt((10-5*sqrt(3)+4*sqrt(5)-2*sqrt(15))/(8-5*sqrt(3)+4*sqrt(5)-2*sqrt(15)))

identity T-5.5-vii numeric digits=40 at q=exp(-sqrt(5)*pi/3) ref "degree-9 phi quotient at exp(-sqrt(5) pi/3)"
lhs: phi(q)/phi(q^9)
rhs: (9+3*sqrt(3)+3*sqrt(5)+sqrt(15))/(5+3*sqrt(3)+3*sqrt(5)+sqrt(15))
note: the display carries a doubled equals sign; the right side is the displayed fraction

identity T-5.5-viii numeric digits=40 at q=exp(-pi/sqrt(3)) ref "degree-3 phi quotient at exp(-pi/sqrt(3))"
lhs: phi(q)/phi(q^3)
rhs: root(4,3)

identity T-5.5-ix numeric digits=40 at q=exp(-sqrt(3)*pi) ref "degree-3 phi quotient at exp(-sqrt(3) pi)"
lhs: phi(q)/phi(q^3)
rhs: root(4,(27+9*(cbrt(4)-1)^4)/(27+(cbrt(4)-1)^4))
note: corrected - the display reuses the argument exp(-pi/sqrt(3)) from another entry; this value is the degree-3 quotient at exp(-sqrt(3) pi), as its own modular equation forces

identity T-5.5-x numeric digits=40 at q=exp(-pi/3) ref "degree-9 phi quotient at exp(-pi/3)"
lhs: phi(q)/phi(q^9)
rhs: sqrt(3)

identity T-5.5-xi numeric digits=40 at q=exp(-pi/3) ref "degree-3 phi quotient at exp(-pi/3)"
lhs: phi(q)/phi(q^3)
rhs: root(4,3+2*sqrt(3))

identity T-5.5-xii numeric digits=40 at q=exp(-pi/sqrt(3)) ref "degree-9 phi quotient at exp(-pi/sqrt(3))"
lhs: phi(q)/phi(q^9)
rhs: 3*cbrt(4)/(2+cbrt(4))

identity T-5.5-xiii numeric digits=40 at q=exp(-pi/(3*sqrt(3))) ref "degree-9 phi quotient at exp(-pi/(3 sqrt(3)))"
lhs: phi(q)/phi(q^9)
rhs: (2+cbrt(4))/cbrt(4)

# ----- explicit values of the cubic continued fraction -----

identity T-5.6-1 numeric digits=40 at q=exp(-pi*sqrt(5)) ref "V(-exp(-pi sqrt(5)))"
lhs: V(-q)
rhs: (3-sqrt(5))*(sqrt(3)-sqrt(5))/4

identity T-5.6-2 numeric digits=40 at q=exp(-pi/sqrt(5)) ref "V(-exp(-pi/sqrt(5)))"
lhs: V(-q)
rhs: (sqrt(3)+sqrt(5))*(sqrt(5)-3)/4

identity T-5.6-3 numeric digits=40 at q=exp(-pi/sqrt(3)) ref "V(-exp(-pi/sqrt(3)))"
lhs: V(-q)
rhs: -1/cbrt(4)

identity T-5.6-4 numeric digits=40 at q=exp(-pi*sqrt(3)) ref "V(-exp(-pi sqrt(3)))"
lhs: V(-q)
rhs: (1-cbrt(4))/(2+cbrt(4))

identity T-5.6-5 numeric digits=40 at q=exp(-pi/(3*sqrt(3))) ref "V(-exp(-pi/(3 sqrt(3))))"
lhs: V(-q)
rhs: -1/cbrt((cbrt(4)-1)^4/3+1)

identity T-5.6-6 numeric digits=40 at q=exp(-pi) ref "V(-exp(-pi))"
lhs: V(-q)
rhs: (1-sqrt(3))/2

identity T-5.6-7 numeric digits=40 at q=exp(-pi/3) ref "V(-exp(-pi/3))"
lhs: V(-q)
rhs: -1/cbrt(2*(sqrt(3)-1))

# ----- classical explicit values with pi and Gamma(3/4) -----

identity N-S1-a numeric digits=40 at q=exp(-pi) ref "phi(exp(-pi)) in terms of pi and Gamma(3/4)"
lhs: phi(q)
rhs: pi^(1/4)/gamma34

identity N-S1-b numeric digits=40 at q=exp(-pi) ref "psi(exp(-pi)) in terms of pi and Gamma(3/4)"
lhs: psi(q)
rhs: exp(pi/8)*pi^(1/4)/(2^(5/8)*gamma34)

identity N-S1-c numeric digits=40 at q=exp(-pi) ref "phi(exp(-pi))/phi(exp(-3 pi))"
lhs: phi(q)/phi(q^3)
rhs: root(4,6*sqrt(3)-9)

identity N-S1-d numeric digits=40 at q=exp(-pi) ref "phi(exp(-pi))/phi(exp(-5 pi))"
lhs: phi(q)/phi(q^5)
rhs: sqrt(5*sqrt(5)-10)
'''

_cache = None


def builtin_corpus():
    """Parse (once) and return the built-in records."""
    global _cache
    if _cache is None:
        _cache = tuple(parse_corpus(BUILTIN_CORPUS))
    return list(_cache)


def table_records(which: str):
    """Records backing one of the explicit-value tables."""
    prefixes = {
        "5.4": "T-5.4-",
        "5.5": "T-5.5-",
        "5.6": "T-5.6-",
        "sec1": "N-S1-",
    }
    try:
        prefix = prefixes[which]
    except KeyError:
        raise ValueError(f"unknown table {which!r}; choose from {sorted(prefixes)}")
    return [r for r in builtin_corpus() if r.id.startswith(prefix)]
