"""Record and report types for the identity corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .. import closedform as cf
from . import ast


@dataclass(frozen=True)
class SeriesKind:
    order: int
    lattice: int = 1


@dataclass(frozen=True)
class QPoint:
    q: cf.Node


@dataclass(frozen=True)
class AlphaBetaPoint:
    alpha: cf.Node
    beta: cf.Node


@dataclass(frozen=True)
class NumericKind:
    digits: int
    points: tuple


@dataclass(frozen=True)
class IdentityRecord:
    """One verifiable identity: exact series kind or high-precision numeric kind."""

    id: str
    kind: Union[SeriesKind, NumericKind]
    lhs: ast.Expr
    rhs: ast.Expr
    ref: str
    note: str = ""

    @property
    def corrected(self) -> bool:
        return self.note.startswith("corrected")

    @property
    def kind_name(self) -> str:
        return "series" if isinstance(self.kind, SeriesKind) else "numeric"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verifying a single record."""

    id: str
    kind: str
    status: str  # pass | fail | error
    detail: str
    elapsed_ms: int

    def __post_init__(self):
        if self.status == "fail" and not self.detail:
            raise ValueError("failing reports must carry detail")

    def to_dict(self) -> dict:
        # field order is part of the report contract
        return {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "detail": self.detail,
            "elapsed_ms": self.elapsed_ms,
        }
