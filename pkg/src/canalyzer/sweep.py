"""Exhaustive sweeps over all Boolean functions of small arity.

Emits one record per function id (the packed table integer), aggregates
strength distributions by canalizing depth and by symmetry-group count, and
writes the documented CSV files.  Output ordering is fixed by id, so two
runs produce byte-identical files.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .canalization import layer_structure, profile
from .core import TruthTable
from .errors import ArityCapError
from .formats import render_decimal
from .sensitivity import average_sensitivity

SWEEP_ARITY_CAP = 4

RECORD_FIELDS = (
    "id",
    "n",
    "depth",
    "symmetry_groups",
    "strength_num",
    "strength_den",
    "strength",
    "sensitivity",
    "essential_count",
    "constant",
)
FIG2A_FIELDS = ("depth", "min", "mean", "max", "count")
FIG2B_FIELDS = ("symmetry_groups", "min", "mean", "max", "count")


@dataclass(frozen=True)
class SymmetryPartition:
    """Variables grouped by transposition invariance (connected components)."""

    groups: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.groups)


def symmetry_groups(f: TruthTable) -> SymmetryPartition:
    """Partition the variables into maximal interchangeable groups.

    An edge joins i and j when swapping x_i and x_j leaves f unchanged;
    transpositions generate the full symmetric group on each connected
    component, so component membership means full permutation invariance.
    """
    n = f.arity
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if f.invariant_under_swap(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    buckets: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        buckets.setdefault(find(v), []).append(v)
    groups = tuple(tuple(sorted(g)) for g in sorted(buckets.values()))
    return SymmetryPartition(groups)


@dataclass(frozen=True)
class SweepRecord:
    id: int
    arity: int
    depth: int
    symmetry_groups: int
    strength: Optional[Fraction]   # absent for constants
    sensitivity: Fraction          # normalized
    essential_count: int
    constant: bool

    def table(self) -> TruthTable:
        return TruthTable(self.arity, self.id)


def record_for(f: TruthTable) -> SweepRecord:
    prof = profile(f)
    constant = prof.constant is not None
    depth = 0 if constant else layer_structure(f).depth
    return SweepRecord(
        id=f.bits,
        arity=f.arity,
        depth=depth,
        symmetry_groups=symmetry_groups(f).count,
        strength=prof.strength,
        sensitivity=average_sensitivity(f, normalized=True),
        essential_count=len(f.essential_variables()),
        constant=constant,
    )


def enumerate_all(
    n: int,
    nonconstant_only: bool = False,
    essential_only: bool = False,
) -> Iterator[SweepRecord]:
    """One record per function id 0 .. 2^(2^n) - 1, ascending."""
    if n > SWEEP_ARITY_CAP:
        raise ArityCapError(
            f"exhaustive sweeps are capped at arity {SWEEP_ARITY_CAP} "
            f"(2^(2^{n}) functions is out of desk scale)"
        )
    for fid in range(1 << (1 << n)):
        f = TruthTable(n, fid)
        rec = record_for(f)
        if nonconstant_only and rec.constant:
            continue
        if essential_only and rec.essential_count < n:
            continue
        yield rec


def _aggregate(records: list[SweepRecord], key) -> list[tuple[int, Fraction, Fraction, Fraction, int]]:
    buckets: dict[int, list[Fraction]] = {}
    for rec in records:
        if rec.strength is None:
            continue  # constants carry no strength
        buckets.setdefault(key(rec), []).append(rec.strength)
    rows = []
    for bucket in sorted(buckets):
        values = buckets[bucket]
        rows.append(
            (bucket, min(values), sum(values) / len(values), max(values), len(values))
        )
    return rows


def figure2_aggregate(records: Iterable[SweepRecord]):
    """Strength min/mean/max per canalizing depth and per symmetry-group count."""
    records = list(records)
    if not records:
        raise ValueError("no records to aggregate")
    by_depth = _aggregate(records, lambda r: r.depth)
    by_symmetry = _aggregate(records, lambda r: r.symmetry_groups)
    return by_depth, by_symmetry


# -- CSV emission ------------------------------------------------------------


def records_csv(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for rec in records:
        if rec.strength is None:
            num = den = dec = ""
        else:
            num, den = rec.strength.numerator, rec.strength.denominator
            dec = render_decimal(rec.strength)
        writer.writerow(
            [
                rec.id,
                rec.arity,
                rec.depth,
                rec.symmetry_groups,
                num,
                den,
                dec,
                render_decimal(rec.sensitivity),
                rec.essential_count,
                int(rec.constant),
            ]
        )
    return buf.getvalue()


def aggregate_csv(rows, fields) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for bucket, lo, mean, hi, count in rows:
        writer.writerow(
            [bucket, render_decimal(lo), render_decimal(mean), render_decimal(hi), count]
        )
    return buf.getvalue()


def run_sweep(n: int) -> dict[str, str]:
    """Full sweep returning the three CSV payloads keyed by file name."""
    records = list(enumerate_all(n))
    by_depth, by_symmetry = figure2_aggregate(records)
    return {
        "sweep_records.csv": records_csv(records),
        "fig2a.csv": aggregate_csv(by_depth, FIG2A_FIELDS),
        "fig2b.csv": aggregate_csv(by_symmetry, FIG2B_FIELDS),
    }


def write_sweep(n: int, out_dir: Path) -> dict[str, Path]:
    payloads = run_sweep(n)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    for name, payload in payloads.items():
        path = out_dir / name
        path.write_text(payload, encoding="utf-8")
        written[name] = path
    return written
