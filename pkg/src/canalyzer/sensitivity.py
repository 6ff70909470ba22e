"""Pointwise, average and normalized average sensitivity, plus bound checks
tying the normalized sensitivity to the k-set canalizing proportions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .canalization import pk
from .core import TruthTable, _value_mask


def sensitivity_at(f: TruthTable, x: Sequence[int]) -> int:
    """Number of Hamming neighbors of x whose output differs from f(x)."""
    if len(x) != f.arity:
        raise ValueError(f"expected {f.arity} input bits, got {len(x)}")
    index = 0
    for j, bit in enumerate(x):
        index |= (bit & 1) << j
    base = (f.bits >> index) & 1
    return sum(
        1 for j in range(f.arity) if ((f.bits >> (index ^ (1 << j))) & 1) != base
    )


def nonconstant_edge_count(f: TruthTable) -> int:
    """Number of hypercube edges whose endpoints map to different outputs."""
    n = f.arity
    total = 0
    for j in range(n):
        diff = (f.bits ^ (f.bits >> (1 << j))) & _value_mask(n, j, 0)
        total += diff.bit_count()
    return total


def average_sensitivity(f: TruthTable, normalized: bool = False) -> Fraction:
    """Exact mean of the pointwise sensitivity; equals twice the non-constant
    edge count over 2^n, or that count over n * 2^(n-1) when normalized."""
    n = f.arity
    if n == 0:
        if normalized:
            raise ValueError("normalized sensitivity is undefined for arity 0")
        return Fraction(0)
    edges = nonconstant_edge_count(f)
    if normalized:
        return Fraction(edges, n << (n - 1))
    return Fraction(2 * edges, 1 << n)


@dataclass(frozen=True)
class BoundCheck:
    k: int
    p_n_minus_k: Fraction
    lower: Fraction          # 2^-(k-1) * (1 - P_{n-k}), exact
    upper: float             # 1 - P_{n-k}^(1/k), real k-th root
    holds: bool


@dataclass(frozen=True)
class SensitivityReport:
    arity: int
    average: Fraction
    normalized: Fraction
    checks: tuple[BoundCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)


# Tolerance for the irrational upper bound; the lower bound stays exact.
UPPER_BOUND_TOL = 1e-12


def check_sensitivity_bounds(f: TruthTable, ks: Sequence[int]) -> SensitivityReport:
    """Evaluate 2^-(k-1)(1 - P_{n-k}) <= s(f) <= 1 - P_{n-k}^(1/k) per k."""
    n = f.arity
    s = average_sensitivity(f, normalized=True)
    checks = []
    for k in sorted(set(ks)):
        if not 1 <= k <= n:
            raise ValueError(f"k must be in 1..{n}, got {k}")
        p = pk(f, n - k)
        lower = Fraction(1, 1 << (k - 1)) * (1 - p)
        upper = 1.0 - float(p) ** (1.0 / k)
        holds = s >= lower and float(s) <= upper + UPPER_BOUND_TOL
        checks.append(BoundCheck(k, p, lower, upper, holds))
    return SensitivityReport(n, average_sensitivity(f), s, tuple(checks))
