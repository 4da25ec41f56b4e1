"""Command-line front end: list the corpus, verify it, evaluate expressions,
and reproduce the explicit-value tables.

Exit codes: 0 all good, 1 at least one record failed, 2 usage/parse problem
(bad corpus, unknown id, malformed expression), 3 engine error during
verification.  The environment variable CUBICCF_PRECISION_GUARD (default 10)
sets the guard digits added to every working precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from mpmath import mp

from . import closedform as cf
from .closedform import eval_closedform
from .errors import CorpusError, CubicCFError, DslSyntaxError
from .numkern import precision_guard
from .registry import ast as rast
from .registry import (
    NumericKind,
    QPoint,
    SeriesKind,
    builtin_corpus,
    parse_corpus,
    table_records,
    verify_record,
)
from .registry.dsl import _parse_point, parse_expression
from .registry.engine import _NumericContext, eval_numeric

DIGITS_RANGE = (15, 200)
ORDER_RANGE = (10, 400)


@dataclass
class CliConfig:
    command: str
    order: int | None = None
    digits: int | None = None
    ids: list[str] | None = None
    format: str = "markdown"
    corpus_path: str | None = None
    parallel: bool = False
    argument: str | None = None  # eval expression / table name

    def __post_init__(self):
        if self.digits is not None and not (DIGITS_RANGE[0] <= self.digits <= DIGITS_RANGE[1]):
            raise ValueError(f"digits must lie in {DIGITS_RANGE}, got {self.digits}")
        if self.order is not None and not (ORDER_RANGE[0] <= self.order <= ORDER_RANGE[1]):
            raise ValueError(f"order must lie in {ORDER_RANGE}, got {self.order}")


def _load_corpus(config: CliConfig):
    if config.corpus_path is None:
        return builtin_corpus()
    with open(config.corpus_path, "r", encoding="utf-8") as fh:
        return parse_corpus(fh.read())


def _select(records, ids):
    if not ids:
        return records
    by_id = {r.id: r for r in records}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise CorpusError(f"unknown record ids: {', '.join(missing)}")
    return [by_id[i] for i in ids]


def _verify_worker(args):
    rec, order, digits = args
    return verify_record(rec, order=order, digits=digits)


def cmd_list(config: CliConfig) -> int:
    records = _load_corpus(config)
    if config.format == "json":
        payload = []
        for r in records:
            entry = {"id": r.id, "kind": r.kind_name, "ref": r.ref}
            if isinstance(r.kind, SeriesKind):
                entry["order"] = r.kind.order
                entry["lattice"] = r.kind.lattice
            else:
                entry["digits"] = r.kind.digits
                entry["points"] = len(r.kind.points)
            payload.append(entry)
        print(json.dumps(payload, indent=2))
    else:
        print(f"| id | kind | parameters | ref |")
        print(f"|----|------|------------|-----|")
        for r in records:
            if isinstance(r.kind, SeriesKind):
                params = f"order={r.kind.order}, lattice={r.kind.lattice}"
            else:
                params = f"digits={r.kind.digits}, points={len(r.kind.points)}"
            print(f"| {r.id} | {r.kind_name} | {params} | {r.ref} |")
    return 0


def cmd_verify(config: CliConfig) -> int:
    records = _select(_load_corpus(config), config.ids)
    jobs = [(r, config.order, config.digits) for r in records]
    if config.parallel and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=os.cpu_count()) as pool:
            reports = list(pool.map(_verify_worker, jobs))
    else:
        reports = [_verify_worker(j) for j in jobs]
    if config.format == "json":
        print(json.dumps([rep.to_dict() for rep in reports], indent=2))
    else:
        print("| id | kind | status | detail | elapsed_ms |")
        print("|----|------|--------|--------|------------|")
        for rep in reports:
            print(f"| {rep.id} | {rep.kind} | {rep.status} | {rep.detail} "
                  f"| {rep.elapsed_ms} |")
        npass = sum(1 for r in reports if r.status == "pass")
        print(f"\n{npass}/{len(reports)} records pass")
    if any(r.status == "error" for r in reports):
        return 3
    if any(r.status == "fail" for r in reports):
        return 1
    return 0


def _split_at_clause(text: str):
    """Split 'EXPR at POINT' on the word 'at' at parenthesis depth 0."""
    depth = 0
    i = 0
    while i < len(text) - 1:
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text[i:i + 2] == "at":
            before = i == 0 or not (text[i - 1].isalnum() or text[i - 1] == "_")
            after = i + 2 >= len(text) or not (text[i + 2].isalnum() or text[i + 2] == "_")
            if before and after:
                return text[:i], text[i + 2:]
        i += 1
    return text, None


def cmd_eval(config: CliConfig) -> int:
    digits = config.digits if config.digits is not None else 40
    expr_text, point_text = _split_at_clause(config.argument or "")
    try:
        expr = parse_expression(expr_text.strip())
        qv = None
        if point_text is not None:
            point = _parse_point(point_text.strip(), 1, 0)
            if not isinstance(point, QPoint):
                raise DslSyntaxError(1, 1, "a 'q=' point for eval", point_text.strip())
            with mp.workdps(digits + precision_guard() + 5):
                qv = cf._eval_raw(point.q, 0)
        with mp.workdps(digits + precision_guard() + 5):
            ctx = _NumericContext(qv, None, None, digits)
            value = eval_numeric(expr, ctx)
            print(f"{mp.nstr(value, digits, strip_zeros=False)}  ({digits} digits)")
        return 0
    except CubicCFError as exc:
        print(f"eval error: {exc}", file=sys.stderr)
        return 2


def cmd_table(config: CliConfig) -> int:
    digits = config.digits if config.digits is not None else 40
    try:
        records = table_records(config.argument or "")
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    rows = []
    with mp.workdps(digits + precision_guard() + 5):
        threshold = mp.mpf(10) ** (-digits)
        for rec in records:
            point = rec.kind.points[0]
            qv = cf._eval_raw(point.q, 0)
            ctx = _NumericContext(qv, None, None, digits)
            lhs_val = eval_numeric(rec.lhs, ctx)
            rhs_text = rast.render(rec.rhs)
            rhs_val = eval_numeric(rec.rhs, _NumericContext(qv, None, None, digits))
            diff = abs(lhs_val - rhs_val)
            ok = diff <= threshold * max(1, abs(lhs_val))
            rows.append({
                "id": rec.id,
                "closed_form": rhs_text,
                "closed_form_value": mp.nstr(rhs_val, digits, strip_zeros=False),
                "computed_value": mp.nstr(lhs_val, digits, strip_zeros=False),
                "abs_difference": mp.nstr(diff, 3),
                "status": "pass" if ok else "fail",
            })
    if config.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print("| id | closed form | closed-form value | computed value "
              "| |difference| | status |")
        print("|----|-------------|-------------------|----------------"
              "|--------------|--------|")
        for row in rows:
            print(f"| {row['id']} | {row['closed_form']} | {row['closed_form_value']} "
                  f"| {row['computed_value']} | {row['abs_difference']} "
                  f"| {row['status']} |")
    return 0 if all(r["status"] == "pass" for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubiccf",
        description="Verify theta-function and cubic continued fraction "
                    "identities, exactly (series) or to many digits (numeric).",
        epilog="CUBICCF_PRECISION_GUARD sets guard digits (default 10).",
    )
    parser.add_argument("command", choices=["list", "verify", "eval", "table"])
    parser.add_argument("argument", nargs="?",
                        help="eval: expression ['at' point]; table: 5.4|5.5|5.6|sec1")
    parser.add_argument("--order", type=int, default=None,
                        help=f"series truncation order {ORDER_RANGE}")
    parser.add_argument("--digits", type=int, default=None,
                        help=f"numeric working digits {DIGITS_RANGE}")
    parser.add_argument("--ids", type=str, default=None,
                        help="comma-separated record ids to verify")
    parser.add_argument("--format", choices=["json", "markdown"], default="markdown")
    parser.add_argument("--corpus", type=str, default=None,
                        help="path to an external corpus DSL file")
    parser.add_argument("--parallel", action="store_true",
                        help="verify records on a process pool")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig(
            command=args.command,
            order=args.order,
            digits=args.digits,
            ids=[s.strip() for s in args.ids.split(",")] if args.ids else None,
            format=args.format,
            corpus_path=args.corpus,
            parallel=args.parallel,
            argument=args.argument,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    try:
        if config.command == "list":
            return cmd_list(config)
        if config.command == "verify":
            return cmd_verify(config)
        if config.command == "eval":
            return cmd_eval(config)
        return cmd_table(config)
    except (CorpusError, OSError) as exc:
        print(f"corpus error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
