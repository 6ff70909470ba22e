"""Random p-biased Boolean functions and the closed-form expectations of
their k-set canalizing proportions and strength."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .canalization import pk
from .core import MAX_EXACT_ARITY, TruthTable


@dataclass(frozen=True)
class BiasSpec:
    """Sampling plan: `count` functions of the given arity, each truth-table
    entry 1 with probability `bias`, reproducible from `seed`."""

    arity: int
    bias: float
    seed: int
    count: int

    def __post_init__(self):
        if not 0.0 < self.bias < 1.0:
            raise ValueError(f"bias must lie strictly inside (0, 1), got {self.bias}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not 0 <= self.arity <= MAX_EXACT_ARITY:
            raise ValueError(f"arity outside 0..{MAX_EXACT_ARITY}")


def sample_biased(spec: BiasSpec) -> Iterator[TruthTable]:
    """Stream `count` independent p-biased tables.

    Function index j is drawn from numpy's PCG64 seeded with
    SeedSequence((seed, j)), so any index can be regenerated independently
    and partitioned runs reproduce the single-threaded stream.
    """
    size = 1 << spec.arity
    for index in range(spec.count):
        rng = np.random.default_rng(np.random.SeedSequence((spec.seed, index)))
        draws = rng.random(size) < spec.bias
        packed = np.packbits(draws, bitorder="little").tobytes()
        yield TruthTable(spec.arity, int.from_bytes(packed, "little"))


def expected_pk(n: int, k: int, p: float) -> float:
    """Closed form E[P_k] = (1-p)^(2^(n-k)) + p^(2^(n-k)) for bias p.

    Evaluated in the log domain so large exponents underflow to 0.0 instead
    of overflowing intermediate powers.
    """
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"bias must lie strictly inside (0, 1), got {p}")
    e = 1 << (n - k)
    return math.exp(e * math.log1p(-p)) + math.exp(e * math.log(p))


def expected_strength(n: int, p: float) -> float:
    """Closed-form E[c(f)] via linearity over the expected proportions."""
    if n < 2:
        raise ValueError("expected strength needs n >= 2")
    acc = 0.0
    for k in range(1, n):
        acc += (1 << k) / ((1 << k) - 1) * expected_pk(n, k, p)
    return acc / (n - 1)


def empirical_expectation(
    n: int, k: int, p: float, count: int, seed: int
) -> tuple[float, float]:
    """Mean exact P_k over sampled functions, with its standard error."""
    values = [
        float(pk(f, k)) for f in sample_biased(BiasSpec(n, p, seed, count))
    ]
    mean = sum(values) / count
    if count == 1:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(var / count)


def probability_positive_pk(
    n: int, k: int, p: float, count: int, seed: int
) -> tuple[float, float]:
    """Sampled Pr(P_k > 0) with standard error; finite-n evidence only."""
    hits = sum(
        1 for f in sample_biased(BiasSpec(n, p, seed, count)) if pk(f, k) > 0
    )
    q = hits / count
    return q, math.sqrt(q * (1 - q) / count)


def figure1_rows(
    ns: Sequence[int],
    ks_per_n,
    p_start: float = 0.01,
    p_stop: float = 0.99,
    p_step: float = 0.01,
) -> list[tuple[float, int, int, float]]:
    """Grid of (bias, n, k, expected_pk) rows.

    `ks_per_n` maps an arity to the k values to emit for it (a callable or a
    fixed sequence used for every n).
    """
    steps = int(round((p_stop - p_start) / p_step))
    biases = [round(p_start + i * p_step, 10) for i in range(steps + 1)]
    rows = []
    for n in ns:
        ks = ks_per_n(n) if callable(ks_per_n) else ks_per_n
        for k in ks:
            for p in biases:
                rows.append((p, n, k, expected_pk(n, k, p)))
    return rows
