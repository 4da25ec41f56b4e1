"""Exception types shared across the package."""


class CubicCFError(Exception):
    """Base class for all package errors."""


# --- numeric kernel -------------------------------------------------------

class DomainError(CubicCFError):
    """Argument outside the mathematical domain of an operation."""


class PrecisionUnderflow(CubicCFError):
    """Requested working precision is below the supported minimum."""


class NoConvergence(CubicCFError):
    """An iterative scheme exhausted its budget without converging."""


class EvaluationError(CubicCFError):
    """A numeric evaluation failed (propagated from a callback or kernel)."""


# --- exact series engine --------------------------------------------------

class QSeriesError(CubicCFError):
    """Base class for truncated-series errors."""


class LatticeOverflow(QSeriesError):
    """Exponent lattice unification exceeded the configured bound."""


class NotInvertible(QSeriesError):
    """Series has no invertible leading coefficient."""


class RootNotExtractable(QSeriesError):
    """Series root requires constant term 1 at exponent 0."""


class FractionalSignExponent(QSeriesError):
    """q -> -q substitution applied to a series with fractional exponents."""


class ExponentRangeError(QSeriesError):
    """Laurent tail dropped below the supported negative-exponent bound."""


# --- closed-form evaluation -----------------------------------------------

class ClosedFormError(CubicCFError):
    """Base class for closed-form evaluation errors."""


class NegativeEvenRoot(ClosedFormError):
    """Even root of a base that could not be certified positive."""


class DivisionByZero(ClosedFormError):
    """Division by an exactly-zero denominator."""


# --- identity corpus ------------------------------------------------------

class CorpusError(CubicCFError):
    """Base class for corpus/DSL errors."""


class DslSyntaxError(CorpusError):
    def __init__(self, line, col, expected, found=""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class DuplicateId(CorpusError):
    """Two corpus records share an id."""


class UnknownFunction(CorpusError):
    """Expression references a function outside the built-in set."""


class EngineError(CubicCFError):
    """Verification engine failed on a structurally valid record."""
