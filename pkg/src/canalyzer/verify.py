"""On-demand verification suites for the structural inequalities.

Each suite checks one family of claims over an exhaustive range of small
functions (arity <= 3, or <= 4 where the claim is stated that widely) and a
seeded random sample at larger arities.  All comparisons are exact rational
arithmetic except the k-th-root upper sensitivity bound, which uses the
documented 1e-12 tolerance.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .canalization import is_ncf_single_layer, layer_structure, pk_vector
from .core import TruthTable
from .sensitivity import average_sensitivity, check_sensitivity_bounds

SUITES = ("thm31", "cor32", "thm33", "thm45", "cor46")

# Arities covered exhaustively per suite; beyond these, sampling.
_EXHAUSTIVE_CAP = {"thm31": 3, "cor32": 4, "thm33": 4, "thm45": 3, "cor46": 4}


@dataclass
class SuiteResult:
    suite: str
    arity: int
    exhaustive: bool
    checked: int
    seed: int | None
    violations: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations


def _all_functions(n: int) -> Iterator[TruthTable]:
    for fid in range(1 << (1 << n)):
        yield TruthTable(n, fid)


def _random_functions(n: int, samples: int, seed: int) -> Iterator[TruthTable]:
    rng = random.Random(seed)
    for _ in range(samples):
        yield TruthTable(n, rng.getrandbits(1 << n))


def _check_thm31(f: TruthTable) -> Iterable[str]:
    pks = pk_vector(f)
    for k in range(1, f.arity):
        if not (pks[k - 1] <= pks[k] <= Fraction(1 + pks[k - 1], 2)):
            yield f"id={f.bits}: chain violated at k={k}: {pks[k-1]} vs {pks[k]}"


def _check_cor32(f: TruthTable) -> Iterable[str]:
    pks = pk_vector(f)
    if f.is_constant() is not None:
        if any(p != 1 for p in pks):
            yield f"id={f.bits}: constant function with P != 1"
        return
    for k in range(f.arity):
        if pks[k] > 1 - Fraction(1, 1 << k):
            yield f"id={f.bits}: P_{k}={pks[k]} exceeds 1 - 2^-{k}"


def _check_thm33(f: TruthTable) -> Iterable[str]:
    if f.is_constant() is not None:
        return
    pks = pk_vector(f)
    extremal = any(
        pks[k] == 1 - Fraction(1, 1 << k) for k in range(1, f.arity)
    )
    single = is_ncf_single_layer(f)
    if extremal != single:
        yield f"id={f.bits}: extremal P_k {extremal} but single-layer NCF {single}"


def _check_thm45(f: TruthTable) -> Iterable[str]:
    report = check_sensitivity_bounds(f, range(1, f.arity + 1))
    for check in report.checks:
        if not check.holds:
            yield (
                f"id={f.bits}: k={check.k} bounds "
                f"[{check.lower}, {check.upper}] miss s={report.normalized}"
            )


def _check_cor46(f: TruthTable) -> Iterable[str]:
    s = average_sensitivity(f, normalized=True)
    p = pk_vector(f)[f.arity - 1]
    if s != 1 - p:
        yield f"id={f.bits}: s={s} but 1 - P_(n-1) = {1 - p}"


_CHECKS: dict[str, Callable[[TruthTable], Iterable[str]]] = {
    "thm31": _check_thm31,
    "cor32": _check_cor32,
    "thm33": _check_thm33,
    "thm45": _check_thm45,
    "cor46": _check_cor46,
}

# Extra claims that only make sense exhaustively and are worth surfacing.
_MIN_ARITY = {"thm31": 1, "cor32": 1, "thm33": 3, "thm45": 1, "cor46": 1}


def run_suite(suite: str, n: int, samples: int = 1000, seed: int = 0) -> SuiteResult:
    if suite not in _CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES} or 'all'")
    if n < _MIN_ARITY[suite]:
        raise ValueError(f"suite {suite} needs arity >= {_MIN_ARITY[suite]}")
    exhaustive = n <= _EXHAUSTIVE_CAP[suite]
    functions = _all_functions(n) if exhaustive else _random_functions(n, samples, seed)
    check = _CHECKS[suite]
    start = time.perf_counter()
    result = SuiteResult(suite, n, exhaustive, 0, None if exhaustive else seed)
    for f in functions:
        result.checked += 1
        result.violations.extend(check(f))
    result.elapsed_ms = (time.perf_counter() - start) * 1000
    return result


def run_suites(suite: str, n: int, samples: int = 1000, seed: int = 0) -> list[SuiteResult]:
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        if suite == "all" and n < _MIN_ARITY[name]:
            continue
        results.append(run_suite(name, n, samples, seed))
    return results
