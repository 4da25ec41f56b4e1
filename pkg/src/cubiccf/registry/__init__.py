"""Identity corpus: DSL parser, built-in records and the verification engine."""

from .corpus import BUILTIN_CORPUS, builtin_corpus, table_records
from .dsl import (
    parse_constant,
    parse_corpus,
    parse_expression,
    serialize_corpus,
    serialize_record,
)
from .engine import (
    eval_numeric,
    eval_series,
    integer_sites,
    mutate_record,
    verify_numeric,
    verify_record,
    verify_series,
)
from .records import (
    AlphaBetaPoint,
    IdentityRecord,
    NumericKind,
    QPoint,
    SeriesKind,
    VerificationReport,
)

__all__ = [
    "AlphaBetaPoint",
    "BUILTIN_CORPUS",
    "IdentityRecord",
    "NumericKind",
    "QPoint",
    "SeriesKind",
    "VerificationReport",
    "builtin_corpus",
    "eval_numeric",
    "eval_series",
    "integer_sites",
    "mutate_record",
    "parse_constant",
    "parse_corpus",
    "parse_expression",
    "serialize_corpus",
    "serialize_record",
    "table_records",
    "verify_numeric",
    "verify_record",
    "verify_series",
]
