"""Render figure panels from canalyzer CSV outputs.

This package is a pure consumer of the CSV files; it never recomputes any
quantity.  Expected inputs:

- fig1a / fig1b: the expected-proportion grid with header
  ``bias,n,k,expected_pk``.
- fig2a: ``sweep_records.csv`` (per-function records) plus ``fig2a.csv``
  (per-depth min/mean/max aggregates).
- fig2b: ``sweep_records.csv`` plus ``fig2b.csv`` (per-symmetry-group
  aggregates).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

PANELS = ("fig1a", "fig1b", "fig2a", "fig2b")


class FigureError(Exception):
    """Bad panel name, missing columns, or empty data."""


@dataclass(frozen=True)
class FigureSpec:
    panel: str
    inputs: tuple[Path, ...]
    output: Path

    def __post_init__(self):
        if self.panel not in PANELS:
            raise FigureError(f"unknown panel {self.panel!r}; choose from {PANELS}")
        if not self.inputs:
            raise FigureError("at least one input CSV is required")


def _read_csv(path: Path, required: Sequence[str]) -> list[dict[str, str]]:
    if not path.exists():
        raise FigureError(f"input file {path} does not exist")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [col for col in required if col not in header]
        if missing:
            raise FigureError(f"{path} is missing columns {missing} (found {header})")
        rows = list(reader)
    if not rows:
        raise FigureError(f"{path} contains a header but no data rows")
    return rows


def _find_input(inputs: Sequence[Path], required: Sequence[str]) -> list[dict[str, str]]:
    """Return rows of the first input whose header covers `required`."""
    errors = []
    for path in inputs:
        try:
            return _read_csv(path, required)
        except FigureError as exc:
            errors.append(str(exc))
    raise FigureError(
        f"no input provides columns {list(required)}: " + "; ".join(errors)
    )


# -- figure 1: expected proportions over the bias grid -----------------------


def _render_fig1(spec: FigureSpec, group_by_n: bool):
    rows = _find_input(spec.inputs, ("bias", "n", "k", "expected_pk"))
    parsed = [
        (float(r["bias"]), int(r["n"]), int(r["k"]), float(r["expected_pk"]))
        for r in rows
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    if group_by_n:
        # One curve per arity, using each arity's largest k in the data.
        by_n: dict[int, int] = {}
        for _, n, k, _ in parsed:
            by_n[n] = max(by_n.get(n, 0), k)
        for n in sorted(by_n):
            pts = sorted((b, v) for b, nn, k, v in parsed if nn == n and k == by_n[n])
            ax.plot([p for p, _ in pts], [v for _, v in pts], label=f"n={n}, k={by_n[n]}")
    else:
        # One curve per k at the largest arity present.
        top_n = max(n for _, n, _, _ in parsed)
        ks = sorted({k for _, n, k, _ in parsed if n == top_n})
        for k in ks:
            pts = sorted((b, v) for b, n, kk, v in parsed if n == top_n and kk == k)
            ax.plot([p for p, _ in pts], [v for _, v in pts], label=f"k={k}")
        ax.set_title(f"n = {top_n}")
    ax.set_xlabel("bias p")
    ax.set_ylabel("expected k-set canalizing proportion")
    ax.legend(fontsize=8)
    return fig


# -- figure 2: strength distributions with min/mean/max markers --------------


def _render_fig2(spec: FigureSpec, bucket_column: str, aggregate_fields: Sequence[str]):
    records = _find_input(
        spec.inputs, ("id", "n", "depth", "symmetry_groups", "strength", "constant")
    )
    aggregates = _find_input(spec.inputs, aggregate_fields)
    strengths: dict[int, list[float]] = {}
    for row in records:
        if row["strength"] == "":
            continue  # constants carry no strength
        strengths.setdefault(int(row[bucket_column]), []).append(float(row["strength"]))
    if not strengths:
        raise FigureError("no non-constant records to plot")
    buckets = sorted(strengths)
    fig, ax = plt.subplots(figsize=(6, 4))
    parts = ax.violinplot(
        [strengths[b] for b in buckets],
        positions=range(len(buckets)),
        showextrema=False,
        widths=0.8,
    )
    for body in parts["bodies"]:
        body.set_alpha(0.4)
    # Mandatory min / mean / max markers, read from the aggregate CSV.
    marks = {int(r[aggregate_fields[0]]): r for r in aggregates}
    for pos, bucket in enumerate(buckets):
        if bucket not in marks:
            raise FigureError(
                f"aggregate CSV lacks a row for {aggregate_fields[0]}={bucket}"
            )
        row = marks[bucket]
        for column, style in (("min", ":"), ("mean", "-"), ("max", "--")):
            ax.hlines(
                float(row[column]), pos - 0.35, pos + 0.35,
                linestyles=style, colors="black", linewidth=1.2,
            )
    ax.set_xticks(range(len(buckets)), [str(b) for b in buckets])
    label = "canalizing depth" if bucket_column == "depth" else "symmetry groups"
    ax.set_xlabel(label)
    ax.set_ylabel("canalizing strength")
    return fig


def render(spec: FigureSpec) -> Path:
    """Render the panel and write the image; returns the output path."""
    if spec.panel == "fig1a":
        fig = _render_fig1(spec, group_by_n=False)
    elif spec.panel == "fig1b":
        fig = _render_fig1(spec, group_by_n=True)
    elif spec.panel == "fig2a":
        fig = _render_fig2(spec, "depth", ("depth", "min", "mean", "max", "count"))
    else:
        fig = _render_fig2(
            spec, "symmetry_groups", ("symmetry_groups", "min", "mean", "max", "count")
        )
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return spec.output
