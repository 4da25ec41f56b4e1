"""Corpus DSL parsing, serialization round-trips, verification dispatch and
mutation sensitivity."""

import random
from fractions import Fraction as F

import pytest

from cubiccf.errors import DslSyntaxError, DuplicateId, UnknownFunction
from cubiccf.registry import (
    BUILTIN_CORPUS,
    NumericKind,
    SeriesKind,
    builtin_corpus,
    integer_sites,
    mutate_record,
    parse_corpus,
    parse_expression,
    serialize_corpus,
    serialize_record,
    table_records,
    verify_numeric,
    verify_record,
    verify_series,
)
from cubiccf.registry import ast as rast

SERIES_IDS = {
    "S-1.5", "S-2.3d", "S-2.4d", "S-2.5", "S-2.7", "S-2.8", "S-2.9",
    "S-2.10", "S-5.1", "S-5.2", "S-5.3", "S-5.4", "S-5.6", "S-5.20", "S-5.28",
}


class TestParsing:
    def test_empty_document(self):
        assert parse_corpus("") == []
        assert parse_corpus("# just a comment\n\n") == []

    def test_unknown_function(self):
        doc = ('identity X numeric digits=20 at q=1/10 ref "r"\n'
               "lhs: rho(q)\nrhs: 1\n")
        with pytest.raises(UnknownFunction):
            parse_corpus(doc)

    def test_duplicate_id(self):
        rec = ('identity X series order=20 ref "r"\nlhs: phi(q)\nrhs: phi(q)\n')
        with pytest.raises(DuplicateId):
            parse_corpus(rec + "\n" + rec)

    def test_syntax_error_carries_position(self):
        doc = ('identity X series order=20 ref "r"\n'
               "lhs: phi(q)++1\nrhs: 1\n")
        with pytest.raises(DslSyntaxError) as err:
            parse_corpus(doc)
        assert err.value.line == 2
        assert err.value.col > 4

    def test_series_side_rejects_closed_forms(self):
        doc = ('identity X series order=20 ref "r"\n'
               "lhs: phi(q)\nrhs: sqrt(3)\n")
        with pytest.raises(DslSyntaxError):
            parse_corpus(doc)

    def test_numeric_side_rejects_diff(self):
        doc = ('identity X numeric digits=20 at q=1/10 ref "r"\n'
               "lhs: diff(phi(q))\nrhs: 1\n")
        with pytest.raises(DslSyntaxError):
            parse_corpus(doc)

    def test_alpha_requires_alpha_points(self):
        doc = ('identity X numeric digits=20 at q=1/10 ref "r"\n'
               "lhs: alpha*phi(q)\nrhs: 1\n")
        with pytest.raises(DslSyntaxError):
            parse_corpus(doc)

    def test_constant_folding(self):
        expr = parse_expression("9+(1/2)*4")
        assert expr == rast.Lit(F(11))
        leaf = parse_expression("(1-sqrt(3))/2")
        assert isinstance(leaf, rast.CFLeaf)

    def test_monomial_power_collapses(self):
        expr = parse_expression("q^(1/4)*phi(q)")
        assert isinstance(expr, rast.BinOp)
        assert expr.left == rast.Monomial(1, F(1, 4))


class TestBuiltinCorpus:
    def test_counts(self):
        recs = builtin_corpus()
        series = [r for r in recs if r.kind_name == "series"]
        numeric = [r for r in recs if r.kind_name == "numeric"]
        assert len(series) == 15
        assert len(numeric) == 47
        assert {r.id for r in series} == SERIES_IDS

    def test_numeric_families(self):
        recs = {r.id: r for r in builtin_corpus()}
        assert len([i for i in recs if i.startswith("T-5.4-")]) == 13
        assert len([i for i in recs if i.startswith("T-5.5-")]) == 13
        assert len([i for i in recs if i.startswith("T-5.6-")]) == 7
        assert len([i for i in recs if i.startswith("N-S1-")]) == 4
        assert len(recs["N-3.1"].kind.points) == 5
        for rid in ("N-1.9", "N-1.10", "N-1.11", "N-1.12"):
            assert len(recs[rid].kind.points) == 3
        for rid in ("N-4.1", "N-4.2", "N-4.3"):
            assert len(recs[rid].kind.points) == 2
        for rid in ("N-2.1", "N-2.2"):
            assert len(recs[rid].kind.points) == 3
            assert recs[rid].kind.digits == 30

    def test_refs_nonempty(self):
        assert all(r.ref.strip() for r in builtin_corpus())

    def test_corrected_annotations(self):
        corrected = {r.id for r in builtin_corpus() if r.corrected}
        assert corrected == {"S-1.5", "S-2.5", "S-5.28", "N-1.11", "N-4.3",
                             "T-5.5-ix"}

    def test_round_trip(self):
        first = builtin_corpus()
        text = serialize_corpus(first)
        second = parse_corpus(text)
        assert first == second
        assert serialize_corpus(second) == text

    def test_table_groups(self):
        assert len(table_records("5.6")) == 7
        assert len(table_records("sec1")) == 4
        with pytest.raises(ValueError):
            table_records("9.9")


class TestVerification:
    def test_series_pass_example(self):
        recs = {r.id: r for r in builtin_corpus()}
        rep = verify_series(recs["S-2.5"], order=60)
        assert rep.status == "pass"
        rep = verify_series(recs["S-2.7"], order=60)
        assert rep.status == "pass"

    def test_perturbed_record_fails_early(self):
        recs = {r.id: r for r in builtin_corpus()}
        mutated = mutate_record(recs["S-5.1"], 0, delta=-1)  # 9 -> 8
        rep = verify_series(mutated, order=30)
        assert rep.status == "fail"
        assert "q^0" in rep.detail or "q^1" in rep.detail

    def test_order_monotonicity_spot_check(self):
        recs = {r.id: r for r in builtin_corpus()}
        for order in (30, 80):
            assert verify_series(recs["S-2.8"], order=order).status == "pass"

    def test_digit_monotonicity_spot_check(self):
        recs = {r.id: r for r in builtin_corpus()}
        for digits in (40, 30):
            assert verify_numeric(recs["T-5.6-6"], digits=digits).status == "pass"

    def test_symmetric_pair_passes(self):
        recs = {r.id: r for r in builtin_corpus()}
        rep = verify_numeric(recs["N-3.1"], digits=30)
        assert rep.status == "pass"

    def test_verify_record_dispatch(self):
        recs = {r.id: r for r in builtin_corpus()}
        assert verify_record(recs["S-5.2"], order=25).kind == "series"
        assert verify_record(recs["N-S1-a"], digits=25).kind == "numeric"

    def test_report_shape(self):
        recs = {r.id: r for r in builtin_corpus()}
        rep = verify_numeric(recs["T-5.4-i"], digits=25)
        d = rep.to_dict()
        assert list(d) == ["id", "kind", "status", "detail", "elapsed_ms"]


class TestMutationSensitivity:
    def test_modular_equation_constants(self):
        recs = {r.id: r for r in builtin_corpus()}
        for rid in ("S-5.1", "S-5.2", "S-5.3"):
            rec = recs[rid]
            for site in range(len(integer_sites(rec))):
                rep = verify_series(mutate_record(rec, site), order=30)
                assert rep.status == "fail", f"{rid} site {site}"

    def test_ten_random_mutations_fail(self):
        rng = random.Random(2024)
        recs = [r for r in builtin_corpus() if integer_sites(r)]
        hits = 0
        while hits < 10:
            rec = rng.choice(recs)
            sites = integer_sites(rec)
            site = rng.randrange(len(sites))
            mutated = mutate_record(rec, site, delta=rng.choice([1, -1]))
            if isinstance(rec.kind, SeriesKind):
                rep = verify_series(mutated, order=25)
            else:
                rep = verify_numeric(mutated, digits=20)
            assert rep.status == "fail", f"{rec.id} site {site}: {rep.detail}"
            hits += 1
