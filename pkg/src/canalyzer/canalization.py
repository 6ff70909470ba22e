"""Canalizing variables, layer decomposition, and k-set canalizing proportions.

All proportions are exact rationals obtained by integer counting; floating
point only ever appears in display code and in Monte Carlo estimates.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from itertools import combinations

from .core import PartialAssignment, TruthTable, _full_mask, _value_mask, compose_layers
from .errors import ArityCapError, ConstantFunctionError

# Exact subset enumeration is capped so the worst case stays near 10^8 word
# operations; beyond this callers are pointed at estimate_pk.
EXACT_SUBSET_ARITY = 14


@dataclass(frozen=True, order=True)
class CanalizingComponent:
    """A variable/input pair forcing a constant output: f == output when x_variable == input."""

    variable: int
    input: int
    output: int


def canalizing_components(f: TruthTable) -> frozenset[CanalizingComponent]:
    """All (variable, input, output) triples whose single restriction is constant.

    Constant restrictions are allowed even when the residual function is
    constant, so a constant f is canalized by every variable and input.
    """
    n = f.arity
    out = []
    for j in range(n):
        for a in (0, 1):
            sub = _value_mask(n, j, a)
            masked = f.bits & sub
            if masked == 0:
                out.append(CanalizingComponent(j + 1, a, 0))
            elif masked == sub:
                out.append(CanalizingComponent(j + 1, a, 1))
    return frozenset(out)


@dataclass(frozen=True)
class LayerStructure:
    """Unique layer decomposition of a non-constant function.

    `layers` holds (variable, input) pairs per layer, ascending by variable;
    the stored input is the value that defers evaluation to deeper layers
    (the complement of the variable's canalizing value).  `core` is the core
    polynomial on the leftover variables, re-indexed densely;
    `core_variables` maps its positions back to original indices.
    """

    arity: int
    sign: int
    layers: tuple[tuple[tuple[int, int], ...], ...]
    core: TruthTable
    core_variables: tuple[int, ...]

    @property
    def depth(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    def to_table(self) -> TruthTable:
        return compose_layers(self.arity, self.sign, self.layers, self.core, self.core_variables)


def layer_structure(f: TruthTable) -> LayerStructure:
    """Peel simultaneously canalizing variables into layers until a core remains."""
    if f.is_constant() is not None:
        raise ConstantFunctionError("constant functions have no standard monomial form")
    n = f.arity
    remaining = list(range(1, n + 1))
    g = f
    layers: list[tuple[tuple[int, int], ...]] = []
    sign: Optional[int] = None
    while True:
        comps = canalizing_components(g)
        if not comps:
            break
        by_var: dict[int, list[CanalizingComponent]] = {}
        for c in comps:
            by_var.setdefault(c.variable, []).append(c)
        if any(len(v) > 1 for v in by_var.values()):
            # g depends on a single variable; both inputs canalize.  The
            # canonical form fixes the layer output: 0 for the first layer
            # (sign bit 0), alternating afterwards.
            wanted = 0 if sign is None else sign ^ (len(layers) & 1)
            chosen = [c for c in comps if c.output == wanted]
        else:
            outputs = {c.output for c in comps}
            assert len(outputs) == 1, "mixed outputs within one layer"
            chosen = sorted(comps)
        if sign is None:
            sign = chosen[0].output
        layer = tuple(
            sorted((remaining[c.variable - 1], c.input ^ 1) for c in chosen)
        )
        layers.append(layer)
        local = PartialAssignment(tuple((c.variable, c.input ^ 1) for c in chosen))
        peeled = {c.variable for c in chosen}
        g = g.restrict(local)
        remaining = [v for pos, v in enumerate(remaining) if pos + 1 not in peeled]
        if g.is_constant() is not None:
            break
    r = len(layers)
    if r == 0:
        return LayerStructure(n, 0, (), f, tuple(remaining))
    flip = sign ^ ((r - 1) & 1)
    core = TruthTable(g.arity, g.bits ^ (_full_mask(g.arity) if flip else 0))
    return LayerStructure(n, sign, tuple(layers), core, tuple(remaining))


def canalizing_depth(f: TruthTable) -> int:
    return layer_structure(f).depth


def is_ncf_single_layer(f: TruthTable) -> bool:
    """True iff f is nested canalizing with a single layer spanning all variables."""
    if f.is_constant() is not None:
        return False
    ls = layer_structure(f)
    return ls.num_layers == 1 and ls.layer_sizes[0] == f.arity


# -- exact k-set counting ----------------------------------------------------


def k_set_count(f: TruthTable, k: int) -> tuple[int, int]:
    """Exact (canalizing count, total count) over all size-k input sets.

    The total is C(n,k) * 2^k.  Faces are checked by AND/OR folding of the
    packed table over the free variables of each subset.
    """
    n = f.arity
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    if n > EXACT_SUBSET_ARITY:
        raise ArityCapError(
            f"exact k-set counting is capped at arity {EXACT_SUBSET_ARITY}; "
            "use estimate_pk for larger functions"
        )
    total = math.comb(n, k) << k
    full = _full_mask(n)
    count = 0
    for subset in combinations(range(n), k):
        fixed = 0
        for j in subset:
            fixed |= 1 << j
        andv = orv = f.bits
        for j in range(n):
            if (fixed >> j) & 1:
                continue
            sh = 1 << j
            m = _value_mask(n, j, 0)
            andv = andv & (andv >> sh) & m
            orv = (orv | (orv >> sh)) & m
        const = andv | (full & ~orv)
        sub = fixed
        while True:
            count += (const >> sub) & 1
            if sub == 0:
                break
            sub = (sub - 1) & fixed
    return count, total


def pk(f: TruthTable, k: int) -> Fraction:
    count, total = k_set_count(f, k)
    return Fraction(count, total)


def pk_vector(f: TruthTable) -> tuple[Fraction, ...]:
    return tuple(pk(f, k) for k in range(f.arity + 1))


def strength_from_pks(pks: Sequence[Fraction]) -> Fraction:
    """Weighted strength (1/(n-1)) * sum_k 2^k/(2^k - 1) * P_k over 0 < k < n."""
    n = len(pks) - 1
    if n < 2:
        raise ValueError("canalizing strength needs arity >= 2")
    acc = Fraction(0)
    for k in range(1, n):
        acc += Fraction(1 << k, (1 << k) - 1) * pks[k]
    return acc / (n - 1)


@dataclass(frozen=True)
class CanalizationProfile:
    """Exact canalizing counts, proportions and strength of one function."""

    arity: int
    counts: tuple[tuple[int, int], ...]  # (canalizing, total) for k = 0..n
    constant: Optional[int]
    strength: Optional[Fraction]

    @property
    def pks(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, t) for c, t in self.counts)


def profile(f: TruthTable) -> CanalizationProfile:
    """All P_k plus the canalizing strength.

    Strength is omitted for constant functions (the weighted sum exceeds 1
    there, so the profile carries a constant flag instead) and for arity < 2.
    """
    counts = tuple(k_set_count(f, k) for k in range(f.arity + 1))
    const = f.is_constant()
    strength = None
    if const is None and f.arity >= 2:
        strength = strength_from_pks([Fraction(c, t) for c, t in counts])
    return CanalizationProfile(f.arity, counts, const, strength)


# -- Monte Carlo estimation --------------------------------------------------


@dataclass(frozen=True)
class PkEstimate:
    arity: int
    k: int
    samples: int
    hits: int
    seed: int
    estimate: float
    wilson_low: float
    wilson_high: float


def _wilson_interval(hits: int, samples: int, z: float = 1.959963984540054) -> tuple[float, float]:
    p = hits / samples
    z2 = z * z
    denom = 1.0 + z2 / samples
    center = (p + z2 / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z2 / (4 * samples * samples)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def estimate_pk(f: TruthTable, k: int, samples: int, seed: int) -> PkEstimate:
    """Estimate P_k by sampling size-k input sets uniformly.

    Sampling is uniform over all C(n,k) * 2^k assignments (subset uniform,
    values uniform), matching the definition of the proportion; the result
    is deterministic for a given seed and carries a Wilson 95% interval.
    """
    n = f.arity
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    hits = 0
    variables = range(1, n + 1)
    for _ in range(samples):
        subset = rng.sample(variables, k)
        pairs = tuple((var, rng.getrandbits(1)) for var in subset)
        if f.subcube_is_constant(pairs) is not None:
            hits += 1
    low, high = _wilson_interval(hits, samples)
    return PkEstimate(n, k, samples, hits, seed, hits / samples, low, high)
