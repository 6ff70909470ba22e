from __future__ import annotations

import csv
import io
from fractions import Fraction

import pytest

from canalyzer.canalization import profile
from canalyzer.core import TruthTable, and_function, parity_function, threshold_function
from canalyzer.errors import ArityCapError
from canalyzer.parser import parse_to_table
from canalyzer.sweep import (
    FIG2A_FIELDS,
    FIG2B_FIELDS,
    RECORD_FIELDS,
    SWEEP_ARITY_CAP,
    enumerate_all,
    figure2_aggregate,
    record_for,
    records_csv,
    run_sweep,
    symmetry_groups,
    write_sweep,
)


class TestSymmetryGroups:
    def test_fully_symmetric(self):
        assert symmetry_groups(and_function(4)).groups == ((1, 2, 3, 4),)
        assert symmetry_groups(parity_function(3)).groups == ((1, 2, 3),)
        assert symmetry_groups(threshold_function(4, 2)).count == 1

    def test_mixed_groups(self):
        f = parse_to_table("x1 & (x2 | x3)")
        assert symmetry_groups(f).groups == ((1,), (2, 3))

    def test_no_symmetry(self):
        f = parse_to_table("x1 & (x2 | !x3)")
        assert symmetry_groups(f).count == 3

    def test_constant_is_one_group(self):
        assert symmetry_groups(TruthTable(3, 0)).count == 1


class TestRecords:
    def test_record_fields(self):
        f = parse_to_table("x1 & (x2 | x3)")
        rec = record_for(f)
        assert rec.id == f.bits
        assert rec.arity == 3
        assert rec.depth == 3
        assert rec.symmetry_groups == 2
        assert rec.strength == profile(f).strength
        assert rec.essential_count == 3
        assert not rec.constant
        assert rec.table() == f

    def test_constant_record(self):
        rec = record_for(TruthTable(2, 0))
        assert rec.constant
        assert rec.depth == 0
        assert rec.strength is None

    def test_enumerate_n2(self):
        records = list(enumerate_all(2))
        assert len(records) == 16
        assert [r.id for r in records] == list(range(16))
        by_depth = {}
        for r in records:
            by_depth[r.depth] = by_depth.get(r.depth, 0) + 1
        # 2 constants + XOR + XNOR at depth 0; the four single-variable
        # functions at depth 1; the eight AND/OR-like functions at depth 2.
        assert by_depth == {0: 4, 1: 4, 2: 8}

    def test_enumerate_filters(self):
        nonconstant = list(enumerate_all(2, nonconstant_only=True))
        assert len(nonconstant) == 14
        essential = list(enumerate_all(2, essential_only=True))
        assert all(r.essential_count == 2 for r in essential)
        assert len(essential) == 10

    def test_xor_strength_zero(self):
        records = {r.id: r for r in enumerate_all(2)}
        assert records[parity_function(2).bits].strength == 0
        assert records[and_function(2).bits].strength == 1

    def test_exactly_two_arity3_functions_with_p2_zero(self):
        # Only parity and its complement have no 2-set canalizing inputs.
        zero = [
            r.id
            for r in enumerate_all(3, nonconstant_only=True)
            if r.strength is not None and profile(TruthTable(3, r.id)).pks[2] == 0
        ]
        assert sorted(zero) == sorted(
            [parity_function(3).bits, parity_function(3, offset=1).bits]
        )

    def test_arity_cap(self):
        with pytest.raises(ArityCapError):
            list(enumerate_all(SWEEP_ARITY_CAP + 1))


class TestAggregation:
    def test_aggregate_excludes_constants(self):
        records = list(enumerate_all(2))
        by_depth, by_symmetry = figure2_aggregate(records)
        assert sum(count for *_, count in by_depth) == 14
        assert sum(count for *_, count in by_symmetry) == 14

    def test_aggregate_rows_sorted_and_sane(self):
        by_depth, by_symmetry = figure2_aggregate(list(enumerate_all(3)))
        assert [row[0] for row in by_depth] == sorted(row[0] for row in by_depth)
        for _, lo, mean, hi, count in by_depth + by_symmetry:
            assert 0 <= lo <= mean <= hi <= 1
            assert count > 0
            assert isinstance(mean, Fraction)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            figure2_aggregate([])


class TestCsv:
    def test_headers_and_rows(self):
        payloads = run_sweep(2)
        assert set(payloads) == {"sweep_records.csv", "fig2a.csv", "fig2b.csv"}
        reader = csv.reader(io.StringIO(payloads["sweep_records.csv"]))
        rows = list(reader)
        assert tuple(rows[0]) == RECORD_FIELDS
        assert len(rows) == 17
        # Constants leave the strength columns empty.
        assert rows[1][4:7] == ["", "", ""]
        fig2a = list(csv.reader(io.StringIO(payloads["fig2a.csv"])))
        assert tuple(fig2a[0]) == FIG2A_FIELDS
        fig2b = list(csv.reader(io.StringIO(payloads["fig2b.csv"])))
        assert tuple(fig2b[0]) == FIG2B_FIELDS

    def test_byte_identical_across_runs(self):
        assert run_sweep(3) == run_sweep(3)

    def test_decimal_rendering_in_records(self):
        payload = records_csv([record_for(and_function(2))])
        row = list(csv.reader(io.StringIO(payload)))[1]
        assert row[RECORD_FIELDS.index("strength_num")] == "1"
        assert row[RECORD_FIELDS.index("strength_den")] == "1"
        assert row[RECORD_FIELDS.index("strength")] == "1"

    def test_write_sweep(self, tmp_path):
        written = write_sweep(2, tmp_path / "out")
        for name, path in written.items():
            assert path.read_text(encoding="utf-8") == run_sweep(2)[name]
        assert (tmp_path / "out" / "fig2a.csv").exists()
