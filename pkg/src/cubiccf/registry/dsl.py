"""Parser for the identity DSL.

One record per stanza::

    identity S-2.8 series order=150 lattice=3 ref "cubic CF cube vs psi quartic quotient"
    lhs: 1+1/V(q)^3
    rhs: psi(q)^4/(q*psi(q^3)^4)
    note: optional free text ("corrected ..." marks a corrected reading)

    identity T-5.6-6 numeric digits=40 at q=exp(-pi) ref "explicit value of V(-exp(-pi))"
    lhs: V(-q)
    rhs: (1-sqrt(3))/2

Lines are whitespace-insensitive internally; "#" starts a comment.  Numeric
points are either "q=<const expr>" or "alpha=<const expr> beta=<const expr>";
several points are comma-separated (commas inside parentheses bind to calls).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .. import closedform as cf
from ..errors import DslSyntaxError, DuplicateId, UnknownFunction
from . import ast
from .records import AlphaBetaPoint, IdentityRecord, NumericKind, QPoint, SeriesKind

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\^|\+|\-|\*|/|\(|\)|,|=))"
)

_KNOWN_ATOMS = {"q", "pi", "gamma34", "alpha", "beta"}
_FUNCTION_NAMES = set(ast.FUNCTIONS) | {"sqrt", "cbrt", "root", "exp", "diff"}


class _Tokens:
    """Token stream over a single line with position tracking."""

    def __init__(self, text: str, line_no: int, col_offset: int = 0):
        self.text = text
        self.line_no = line_no
        self.col_offset = col_offset
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise DslSyntaxError(line_no, col_offset + pos + 1,
                                     "a token", text[pos])
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise DslSyntaxError(self.line_no, self.col_offset + len(self.text),
                                 "more input", "end of line")
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            found = tok[1] if tok else "end of line"
            raise DslSyntaxError(self.line_no, self._col(tok), repr(op), found)
        return self.next()

    def at_op(self, op: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] == op

    def _col(self, tok):
        return self.col_offset + (tok[2] + 1 if tok else len(self.text))

    def error(self, expected: str):
        tok = self.peek()
        found = tok[1] if tok else "end of line"
        raise DslSyntaxError(self.line_no, self._col(tok), expected, found)


# --- expression parsing ------------------------------------------------------


def _parse_exponent(ts: _Tokens) -> Fraction:
    tok = ts.peek()
    if tok and tok[0] == "num":
        ts.next()
        return Fraction(int(tok[1]))
    ts.expect_op("(")
    sign = 1
    if ts.at_op("-"):
        ts.next()
        sign = -1
    tok = ts.peek()
    if tok is None or tok[0] != "num":
        ts.error("an integer exponent")
    ts.next()
    num = int(tok[1])
    den = 1
    if ts.at_op("/"):
        ts.next()
        tok = ts.peek()
        if tok is None or tok[0] != "num":
            ts.error("an integer denominator")
        ts.next()
        den = int(tok[1])
    ts.expect_op(")")
    return Fraction(sign * num, den)


def _parse_monomial_arg(ts: _Tokens) -> ast.Monomial:
    sign = 1
    if ts.at_op("-"):
        ts.next()
        sign = -1
    tok = ts.peek()
    if tok is None or tok[0] != "name" or tok[1] != "q":
        ts.error("a q-monomial argument")
    ts.next()
    exponent = Fraction(1)
    if ts.at_op("^"):
        ts.next()
        exponent = _parse_exponent(ts)
    return ast.Monomial(sign, exponent)


def _parse_atom(ts: _Tokens) -> ast.Expr:
    tok = ts.peek()
    if tok is None:
        ts.error("an operand")
    kind, value, _ = tok
    if kind == "num":
        ts.next()
        return ast.Lit(Fraction(int(value)))
    if kind == "op" and value == "(":
        ts.next()
        inner = _parse_expr(ts)
        ts.expect_op(")")
        return inner
    if kind == "name":
        ts.next()
        if value in ast.FUNCTIONS:
            ts.expect_op("(")
            arg = _parse_monomial_arg(ts)
            ts.expect_op(")")
            return ast.Call(value, arg)
        if value in ("sqrt", "cbrt"):
            ts.expect_op("(")
            inner = _parse_expr(ts)
            ts.expect_op(")")
            return ast.Pow(inner, Fraction(1, 2 if value == "sqrt" else 3))
        if value == "root":
            ts.expect_op("(")
            tok = ts.peek()
            if tok is None or tok[0] != "num":
                ts.error("a root index")
            ts.next()
            n = int(tok[1])
            ts.expect_op(",")
            inner = _parse_expr(ts)
            ts.expect_op(")")
            if n < 1:
                ts.error("a positive root index")
            return ast.Pow(inner, Fraction(1, n))
        if value == "exp":
            ts.expect_op("(")
            inner = _parse_expr(ts)
            ts.expect_op(")")
            return ast.ExpCall(inner)
        if value == "diff":
            ts.expect_op("(")
            inner = _parse_expr(ts)
            ts.expect_op(")")
            return ast.Diff(inner)
        if value == "q":
            exponent = Fraction(1)
            if ts.at_op("^"):
                ts.next()
                exponent = _parse_exponent(ts)
            return ast.Monomial(1, exponent)
        if value == "pi" or value == "gamma34":
            return ast.ConstName(value)
        if value in ("alpha", "beta"):
            return ast.PointRef(value)
        raise UnknownFunction(
            f"line {ts.line_no}: unknown function or constant {value!r}"
        )
    ts.error("an operand")


def _parse_power(ts: _Tokens) -> ast.Expr:
    base = _parse_atom(ts)
    if ts.at_op("^"):
        ts.next()
        exponent = _parse_exponent(ts)
        if isinstance(base, ast.Monomial) and base.sign > 0:
            return ast.Monomial(1, base.exponent * exponent)  # (q^a)^b = q^(ab)
        return ast.Pow(base, exponent)
    return base


def _parse_factor(ts: _Tokens) -> ast.Expr:
    if ts.at_op("-"):
        ts.next()
        return ast.Neg(_parse_factor(ts))
    return _parse_power(ts)


def _parse_term(ts: _Tokens) -> ast.Expr:
    node = _parse_factor(ts)
    while ts.at_op("*") or ts.at_op("/"):
        op = ts.next()[1]
        node = ast.BinOp(op, node, _parse_factor(ts))
    return node


def _parse_expr(ts: _Tokens) -> ast.Expr:
    node = _parse_term(ts)
    while ts.at_op("+") or ts.at_op("-"):
        op = ts.next()[1]
        node = ast.BinOp(op, node, _parse_term(ts))
    return node


def parse_expression(text: str, line_no: int = 1, col_offset: int = 0) -> ast.Expr:
    """Parse a complete expression line into a folded AST."""
    ts = _Tokens(text, line_no, col_offset)
    node = _parse_expr(ts)
    if ts.peek() is not None:
        ts.error("end of expression")
    return ast.fold_constants(node)


def parse_constant(text: str, line_no: int = 1, col_offset: int = 0) -> cf.Node:
    """Parse a point expression; must fold to a closed-form constant."""
    node = parse_expression(text, line_no, col_offset)
    if isinstance(node, ast.Lit):
        return cf.Lit(node.value)
    if isinstance(node, ast.CFLeaf):
        return node.tree
    raise DslSyntaxError(line_no, col_offset + 1,
                         "a constant expression", text.strip())


# --- record and corpus parsing --------------------------------------------------


def _split_top_level(text: str, sep: str):
    """Split on `sep` at parenthesis depth 0, keeping offsets."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


_POINT_Q_RE = re.compile(r"^\s*q\s*=")
_POINT_AB_RE = re.compile(r"^\s*alpha\s*=")
_BETA_RE = re.compile(r"\bbeta\s*=")


def _parse_point(text: str, line_no: int, col_offset: int):
    m = _POINT_Q_RE.match(text)
    if m:
        expr = text[m.end():]
        return QPoint(parse_constant(expr, line_no, col_offset + m.end()))
    m = _POINT_AB_RE.match(text)
    if m:
        b = _BETA_RE.search(text)
        if b is None or b.start() < m.end():
            raise DslSyntaxError(line_no, col_offset + 1,
                                 "'beta=' after 'alpha='", text.strip())
        alpha_text = text[m.end():b.start()]
        beta_text = text[b.end():]
        return AlphaBetaPoint(
            parse_constant(alpha_text, line_no, col_offset + m.end()),
            parse_constant(beta_text, line_no, col_offset + b.end()),
        )
    raise DslSyntaxError(line_no, col_offset + 1,
                         "'q=' or 'alpha=' point", text.strip())


_HEADER_RE = re.compile(
    r"^identity\s+(?P<id>[A-Za-z0-9][A-Za-z0-9.\-]*)\s+(?P<rest>.*)$"
)
_SERIES_RE = re.compile(
    r"^series\s+order\s*=\s*(?P<order>\d+)(?:\s+lattice\s*=\s*(?P<lattice>\d+))?"
    r"\s+ref\s+\"(?P<ref>[^\"]*)\"\s*$"
)
_NUMERIC_RE = re.compile(
    r"^numeric\s+digits\s*=\s*(?P<digits>\d+)\s+at\s+(?P<points>.*?)"
    r"\s+ref\s+\"(?P<ref>[^\"]*)\"\s*$"
)


def _parse_header(line: str, line_no: int):
    m = _HEADER_RE.match(line)
    if m is None:
        raise DslSyntaxError(line_no, 1, "'identity ID kindspec ref \"...\"'",
                             line[:40])
    rec_id = m.group("id")
    rest = m.group("rest")
    sm = _SERIES_RE.match(rest)
    if sm:
        lattice = int(sm.group("lattice")) if sm.group("lattice") else 1
        kind = SeriesKind(order=int(sm.group("order")), lattice=lattice)
        return rec_id, kind, sm.group("ref")
    nm = _NUMERIC_RE.match(rest)
    if nm:
        points_text = nm.group("points")
        offset = m.start("rest") + nm.start("points")
        points = []
        for part, part_off in _split_top_level(points_text, ","):
            points.append(_parse_point(part, line_no, offset + part_off))
        kind = NumericKind(digits=int(nm.group("digits")), points=tuple(points))
        return rec_id, kind, nm.group("ref")
    raise DslSyntaxError(line_no, 1, "series/numeric kind specification",
                         rest[:40])


def _strip_comment(line: str) -> str:
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def parse_corpus(text: str):
    """Parse a DSL document into IdentityRecords (all or nothing)."""
    records = []
    seen = set()
    pending = None  # (id, kind, ref, lhs, line_no)
    state = "header"

    def finish(rhs, note):
        rec_id, kind, ref, lhs, line_no = pending
        rec = IdentityRecord(id=rec_id, kind=kind, lhs=lhs, rhs=rhs,
                             ref=ref, note=note or "")
        _validate_record(rec, line_no)
        records.append(rec)

    lines = text.splitlines()
    i = 0
    note_buffer = None
    rhs_buffer = None
    while i < len(lines):
        raw = lines[i]
        line_no = i + 1
        line = _strip_comment(raw).strip()
        i += 1
        if not line:
            continue
        if state == "header":
            rec_id, kind, ref = _parse_header(line, line_no)
            if rec_id in seen:
                raise DuplicateId(f"line {line_no}: duplicate id {rec_id!r}")
            seen.add(rec_id)
            pending = (rec_id, kind, ref, None, line_no)
            state = "lhs"
        elif state == "lhs":
            if not line.startswith("lhs:"):
                raise DslSyntaxError(line_no, 1, "'lhs:'", line[:20])
            lhs = parse_expression(line[4:], line_no, 4)
            pending = pending[:3] + (lhs,) + pending[4:]
            state = "rhs"
        elif state == "rhs":
            if not line.startswith("rhs:"):
                raise DslSyntaxError(line_no, 1, "'rhs:'", line[:20])
            rhs_buffer = parse_expression(line[4:], line_no, 4)
            # an optional note line may follow; look ahead past blanks
            note_buffer = None
            j = i
            while j < len(lines):
                peek = _strip_comment(lines[j]).strip()
                if peek:
                    if peek.startswith("note:"):
                        note_buffer = peek[5:].strip()
                        i = j + 1
                    break
                j += 1
            finish(rhs_buffer, note_buffer)
            state = "header"
    if state != "header":
        raise DslSyntaxError(len(lines), 1, "complete record", "end of document")
    return records


def _contains(node, kinds) -> bool:
    if isinstance(node, kinds):
        return True
    if isinstance(node, (ast.Neg, ast.ExpCall, ast.Diff)):
        return _contains(node.operand, kinds)
    if isinstance(node, ast.BinOp):
        return _contains(node.left, kinds) or _contains(node.right, kinds)
    if isinstance(node, ast.Pow):
        return _contains(node.base, kinds)
    return False


def _calls(node):
    if isinstance(node, ast.Call):
        yield node
    elif isinstance(node, (ast.Neg, ast.ExpCall, ast.Diff)):
        yield from _calls(node.operand)
    elif isinstance(node, ast.BinOp):
        yield from _calls(node.left)
        yield from _calls(node.right)
    elif isinstance(node, ast.Pow):
        yield from _calls(node.base)


def _validate_record(rec: IdentityRecord, line_no: int) -> None:
    has_ab = isinstance(rec.kind, NumericKind) and any(
        isinstance(p, AlphaBetaPoint) for p in rec.kind.points)
    for side_name, side in (("lhs", rec.lhs), ("rhs", rec.rhs)):
        if isinstance(rec.kind, SeriesKind):
            if _contains(side, (ast.CFLeaf, ast.ExpCall, ast.ConstName)):
                raise DslSyntaxError(
                    line_no, 1, f"series {side_name} without closed-form leaves",
                    rec.id)
            if _contains(side, ast.PointRef):
                raise DslSyntaxError(
                    line_no, 1, f"series {side_name} without alpha/beta", rec.id)
            for call in _calls(side):
                if call.fn in ast.NUMERIC_ONLY_FUNCTIONS:
                    raise DslSyntaxError(
                        line_no, 1,
                        f"series {side_name} without {call.fn}", rec.id)
        else:
            if _contains(side, ast.Diff):
                raise DslSyntaxError(
                    line_no, 1, f"numeric {side_name} without diff()", rec.id)
            if not has_ab and _contains(side, ast.PointRef):
                raise DslSyntaxError(
                    line_no, 1,
                    f"{side_name} references alpha/beta but points bind only q",
                    rec.id)


# --- serialization ---------------------------------------------------------------


def serialize_record(rec: IdentityRecord) -> str:
    if isinstance(rec.kind, SeriesKind):
        spec = f"series order={rec.kind.order}"
        if rec.kind.lattice != 1:
            spec += f" lattice={rec.kind.lattice}"
    else:
        pts = []
        for p in rec.kind.points:
            if isinstance(p, QPoint):
                pts.append(f"q={cf.render(p.q)}")
            else:
                pts.append(f"alpha={cf.render(p.alpha)} beta={cf.render(p.beta)}")
        spec = f"numeric digits={rec.kind.digits} at {', '.join(pts)}"
    lines = [
        f'identity {rec.id} {spec} ref "{rec.ref}"',
        f"lhs: {ast.render(rec.lhs)}",
        f"rhs: {ast.render(rec.rhs)}",
    ]
    if rec.note:
        lines.append(f"note: {rec.note}")
    return "\n".join(lines)


def serialize_corpus(records) -> str:
    return "\n\n".join(serialize_record(r) for r in records) + "\n"
