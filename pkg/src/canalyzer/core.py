"""Bit-packed truth tables of Boolean functions.

A function f on n variables is stored as a single integer whose bit i is
f(i), where the row index i encodes the input vector with x1 as the least
significant bit.  Tables are immutable value objects; every operation
returns a new table.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ArityCapError

# Storage cap: 2^20 table entries (1 Mi).  Subset-enumeration operations
# declare tighter caps of their own (see canalization.EXACT_SUBSET_ARITY).
MAX_EXACT_ARITY = 20

AssignmentLike = Union["PartialAssignment", Mapping[int, int], Iterable[tuple[int, int]]]


@lru_cache(maxsize=None)
def _value_mask(n: int, var0: int, value: int) -> int:
    """Mask with bit i set exactly when bit `var0` of the row index i is `value`."""
    block = (1 << (1 << var0)) - 1
    period = 1 << (var0 + 1)
    m = 0
    start = (1 << var0) if value else 0
    for base in range(start, 1 << n, period):
        m |= block << base
    return m


@lru_cache(maxsize=None)
def _full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@dataclass(frozen=True, order=True)
class PartialAssignment:
    """A set of (variable, value) pairs; variables are 1-based and distinct."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for var, value in self.pairs:
            if var < 1:
                raise ValueError(f"variable index must be >= 1, got {var}")
            if value not in (0, 1):
                raise ValueError(f"assignment value must be 0 or 1, got {value}")
            if var in seen:
                raise ValueError(f"variable x{var} assigned twice")
            seen.add(var)
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @classmethod
    def coerce(cls, assignment: AssignmentLike) -> "PartialAssignment":
        if isinstance(assignment, PartialAssignment):
            return assignment
        if isinstance(assignment, Mapping):
            return cls(tuple(assignment.items()))
        return cls(tuple(assignment))

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(var for var, _ in self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class TruthTable:
    """Lookup table of f: {0,1}^n -> {0,1} with x1 as the LSB of the row index."""

    arity: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_EXACT_ARITY:
            raise ArityCapError(
                f"arity {self.arity} outside supported range 0..{MAX_EXACT_ARITY}"
            )
        if not 0 <= self.bits <= _full_mask(self.arity):
            raise ValueError("bits outside the 2^(2^n) range for this arity")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_bits(cls, arity: int, encoding: str) -> "TruthTable":
        """Build a table from a binary string f(0) f(1) ... f(2^n - 1)."""
        size = 1 << arity
        if len(encoding) != size:
            raise ValueError(
                f"expected {size} bits for arity {arity}, got {len(encoding)}"
            )
        bits = 0
        for i, ch in enumerate(encoding):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"non-binary character {ch!r} in bit string")
        return cls(arity, bits)

    @classmethod
    def from_hex(cls, arity: int, encoding: str) -> "TruthTable":
        """Build a table from the hex form of the bit stream (4 bits per digit)."""
        size = 1 << arity
        digits = max(1, -(-size // 4))
        if len(encoding) != digits:
            raise ValueError(
                f"expected {digits} hex digits for arity {arity}, got {len(encoding)}"
            )
        try:
            stream = int(encoding, 16)
        except ValueError:
            raise ValueError(f"non-hex characters in {encoding!r}") from None
        width = digits * 4
        if stream >> size:
            raise ValueError("hex padding bits must be zero")
        # The stream reads f(0) first; our packed integer keeps f(0) at bit 0.
        bits = 0
        for i in range(size):
            if (stream >> (size - 1 - i)) & 1:
                bits |= 1 << i
        return cls(arity, bits)

    # -- serialization -----------------------------------------------------

    def to_bit_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.size))

    def to_hex_string(self) -> str:
        digits = max(1, -(-self.size // 4))
        stream = int(self.to_bit_string(), 2) if self.bits else 0
        return format(stream, f"0{digits}x")

    # -- basic queries -----------------------------------------------------

    @property
    def size(self) -> int:
        return 1 << self.arity

    def value(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise IndexError(f"row index {index} out of range for arity {self.arity}")
        return (self.bits >> index) & 1

    def evaluate(self, x: Sequence[int]) -> int:
        if len(x) != self.arity:
            raise ValueError(f"expected {self.arity} input bits, got {len(x)}")
        index = 0
        for j, bit in enumerate(x):
            if bit not in (0, 1):
                raise ValueError("input bits must be 0 or 1")
            index |= bit << j
        return (self.bits >> index) & 1

    def is_constant(self) -> Optional[int]:
        if self.bits == 0:
            return 0
        if self.bits == _full_mask(self.arity):
            return 1
        return None

    def complement(self) -> "TruthTable":
        return TruthTable(self.arity, self.bits ^ _full_mask(self.arity))

    # -- restriction -------------------------------------------------------

    def cofactor(self, variable: int, value: int) -> "TruthTable":
        """Restrict a single variable (1-based); remaining variables re-index densely."""
        if not 1 <= variable <= self.arity:
            raise ValueError(f"variable x{variable} out of range for arity {self.arity}")
        v = variable - 1
        w = 1 << v
        mask = (1 << w) - 1
        out = 0
        pos = 0
        for base in range((value * w), 1 << self.arity, 2 * w):
            out |= ((self.bits >> base) & mask) << pos
            pos += w
        return TruthTable(self.arity - 1, out)

    def restrict(self, assignment: AssignmentLike) -> "TruthTable":
        pa = PartialAssignment.coerce(assignment)
        if pa.pairs and pa.pairs[-1][0] > self.arity:
            raise ValueError(
                f"variable x{pa.pairs[-1][0]} out of range for arity {self.arity}"
            )
        table = self
        # Fix highest variables first so lower indices stay in place.
        for var, value in reversed(pa.pairs):
            table = table.cofactor(var, value)
        return table

    def subcube_is_constant(self, assignment: AssignmentLike) -> Optional[int]:
        """Constancy of the face selected by `assignment`, with early exit."""
        pa = PartialAssignment.coerce(assignment)
        if pa.pairs and pa.pairs[-1][0] > self.arity:
            raise ValueError("assignment variable out of range")
        fixed = 0
        base = 0
        for var, value in pa.pairs:
            fixed |= 1 << (var - 1)
            base |= value << (var - 1)
        free = [j for j in range(self.arity) if not (fixed >> j) & 1]
        first = (self.bits >> base) & 1
        for r in range(1, 1 << len(free)):
            i = base
            rr = r
            for j in free:
                i |= (rr & 1) << j
                rr >>= 1
            if (self.bits >> i) & 1 != first:
                return None
        return first

    # -- structure ---------------------------------------------------------

    def essential_variables(self) -> frozenset[int]:
        n = self.arity
        out = []
        for j in range(n):
            diff = self.bits ^ (self.bits >> (1 << j))
            if diff & _value_mask(n, j, 0):
                out.append(j + 1)
        return frozenset(out)

    def swap_variables(self, i: int, j: int) -> "TruthTable":
        """Table of f with variables x_i and x_j exchanged (1-based)."""
        if i == j:
            return self
        a, b = sorted((i - 1, j - 1))
        if not 0 <= a < b < self.arity:
            raise ValueError("variables out of range")
        shift = (1 << b) - (1 << a)
        m01 = _value_mask(self.arity, a, 0) & _value_mask(self.arity, b, 1)
        m10 = _value_mask(self.arity, a, 1) & _value_mask(self.arity, b, 0)
        keep = self.bits & ~(m01 | m10)
        moved = ((self.bits & m01) >> shift) | ((self.bits & m10) << shift)
        return TruthTable(self.arity, keep | moved)

    def invariant_under_swap(self, i: int, j: int) -> bool:
        if i == j:
            return True
        a, b = sorted((i - 1, j - 1))
        shift = (1 << b) - (1 << a)
        m01 = _value_mask(self.arity, a, 0) & _value_mask(self.arity, b, 1)
        return ((self.bits ^ (self.bits << shift)) & m01) == 0


# -- generators ------------------------------------------------------------


def constant_function(arity: int, value: int) -> TruthTable:
    if value not in (0, 1):
        raise ValueError("constant value must be 0 or 1")
    return TruthTable(arity, _full_mask(arity) if value else 0)


def and_function(arity: int) -> TruthTable:
    return TruthTable(arity, 1 << ((1 << arity) - 1))


def or_function(arity: int) -> TruthTable:
    return TruthTable(arity, _full_mask(arity) ^ 1)


def parity_function(arity: int, offset: int = 0) -> TruthTable:
    bits = 0
    for i in range(1 << arity):
        if (i.bit_count() + offset) & 1:
            bits |= 1 << i
    return TruthTable(arity, bits)


def threshold_function(arity: int, threshold: int) -> TruthTable:
    """f(x) = 1 iff at least `threshold` inputs are 1."""
    if not 1 <= threshold <= arity:
        raise ValueError(f"threshold must be in 1..{arity}, got {threshold}")
    bits = 0
    for i in range(1 << arity):
        if i.bit_count() >= threshold:
            bits |= 1 << i
    return TruthTable(arity, bits)


LayerSpec = Sequence[Sequence[tuple[int, int]]]


def compose_layers(
    arity: int,
    sign: int,
    layers: LayerSpec,
    core: TruthTable,
    core_variables: Sequence[int],
) -> TruthTable:
    """Assemble a table from its layer decomposition.

    Each layer lists (variable, input) pairs; the layer's extended monomial
    is 1 exactly when every listed variable equals its input.  The nesting is
    sign XOR M1(M2(... (Mr * core XOR 1) ...) XOR 1).
    """
    if core.arity != len(core_variables):
        raise ValueError("core arity does not match the leftover variable list")
    layer_masks = []
    for layer in layers:
        want = 0
        sel = 0
        for var, inp in layer:
            sel |= 1 << (var - 1)
            want |= inp << (var - 1)
        layer_masks.append((sel, want))
    core_pos = [var - 1 for var in core_variables]
    bits = 0
    for i in range(1 << arity):
        ci = 0
        for pos, src in enumerate(core_pos):
            ci |= ((i >> src) & 1) << pos
        val = (core.bits >> ci) & 1
        first = True
        for sel, want in reversed(layer_masks):
            m = 1 if (i & sel) == want else 0
            val = (m & val) if first else (m & (val ^ 1))
            first = False
        if val ^ sign:
            bits |= 1 << i
    return TruthTable(arity, bits)


def ncf_function(arity: int, layers: LayerSpec, sign: int = 0) -> TruthTable:
    """Build a function from a layer spec over a subset of the variables.

    The core polynomial is the constant 1.  The canonical-form exceptional
    cases are enforced: with r > 1 layers the last layer needs at least two
    variables, and a single singleton layer forces sign 0.
    """
    if sign not in (0, 1):
        raise ValueError("sign must be 0 or 1")
    if not layers or any(len(layer) == 0 for layer in layers):
        raise ValueError("layers must be non-empty")
    seen: set[int] = set()
    for layer in layers:
        for var, inp in layer:
            if not 1 <= var <= arity:
                raise ValueError(f"variable x{var} out of range for arity {arity}")
            if inp not in (0, 1):
                raise ValueError("layer inputs must be 0 or 1")
            if var in seen:
                raise ValueError(f"variable x{var} appears in two layers")
            seen.add(var)
    if len(layers) > 1 and len(layers[-1]) < 2:
        raise ValueError("with more than one layer the last layer needs >= 2 variables")
    if len(layers) == 1 and len(layers[0]) == 1 and sign != 0:
        raise ValueError("a single singleton layer over core 1 requires sign 0")
    leftover = [v for v in range(1, arity + 1) if v not in seen]
    core = constant_function(len(leftover), 1)
    return compose_layers(arity, sign, layers, core, leftover)


def generate(kind: str, arity: int, **params) -> TruthTable:
    """Named generator dispatch: constant, and, or, parity, threshold, ncf."""
    if kind == "constant":
        return constant_function(arity, params.get("value", 0))
    if kind == "and":
        return and_function(arity)
    if kind == "or":
        return or_function(arity)
    if kind == "parity":
        return parity_function(arity, params.get("offset", 0))
    if kind == "threshold":
        return threshold_function(arity, params["threshold"])
    if kind == "ncf":
        return ncf_function(arity, params["layers"], params.get("sign", 0))
    raise ValueError(f"unknown generator kind {kind!r}")
