"""Pydantic request/response models for the HTTP service.

Every exact rational travels as a "num/den" string plus a 6-significant-digit
decimal rendering; stochastic responses always echo their seed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..formats import render_decimal, render_fraction


class Rational(BaseModel):
    fraction: str
    decimal: str

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Rational":
        return cls(fraction=render_fraction(value), decimal=render_decimal(value))


class FunctionSource(BaseModel):
    """Exactly one of expr / bits / hex; n is required for hex and optional
    (inferred from length) for bits."""

    expr: Optional[str] = None
    bits: Optional[str] = None
    hex: Optional[str] = None
    n: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _one_source(self):
        given = [s for s in (self.expr, self.bits, self.hex) if s is not None]
        if len(given) != 1:
            raise ValueError("provide exactly one of expr, bits, hex")
        if self.hex is not None and self.n is None:
            raise ValueError("hex input requires n")
        return self


class AnalyzeRequest(FunctionSource):
    bound_ks: Optional[list[int]] = None  # defaults to 1..n


class ComponentOut(BaseModel):
    variable: int
    input: int
    output: int


class LayerOut(BaseModel):
    variables: list[int]
    inputs: list[int]


class BoundOut(BaseModel):
    k: int
    p_n_minus_k: Rational
    lower: Rational
    upper: float
    holds: bool


class PkOut(BaseModel):
    k: int
    canalizing: int
    total: int
    proportion: Rational


class AnalyzeResponse(BaseModel):
    version: str
    elapsed_ms: float
    arity: int
    bits: str
    hex: str
    essential_variables: list[int]
    constant: Optional[int]
    components: list[ComponentOut]
    depth: Optional[int]
    num_layers: Optional[int]
    layer_sizes: Optional[list[int]]
    layers: Optional[list[LayerOut]]
    sign: Optional[int]
    p_vector: list[PkOut]
    strength: Optional[Rational]
    average_sensitivity: Rational
    normalized_sensitivity: Rational
    bounds: list[BoundOut]


class EstimateRequest(FunctionSource):
    k: int
    samples: int = Field(default=10000, ge=1)
    seed: int = 0


class EstimateResponse(BaseModel):
    version: str
    elapsed_ms: float
    arity: int
    k: int
    samples: int
    hits: int
    seed: int
    estimate: float
    wilson_low: float
    wilson_high: float


class SweepRequest(BaseModel):
    n: int = Field(ge=0)


class SweepSummary(BaseModel):
    n: int
    functions: int
    constants: int
    by_depth: dict[int, int]
    by_symmetry_groups: dict[int, int]


class SweepResponse(BaseModel):
    version: str
    elapsed_ms: float
    summary: SweepSummary
    files: dict[str, str]  # file name -> CSV payload


class ExpectedRequest(BaseModel):
    n: int = Field(ge=2)
    k: Optional[list[int]] = None       # defaults to n-4..n-1 clamped to 1..n
    p: Optional[list[float]] = None     # explicit biases; overrides the grid
    p_step: float = Field(default=0.01, gt=0, lt=1)


class ExpectedResponse(BaseModel):
    version: str
    elapsed_ms: float
    csv: str  # columns: bias, n, k, expected_pk


class VerifyRequest(BaseModel):
    suite: Literal["thm31", "cor32", "thm33", "thm45", "cor46", "all"]
    n: int = Field(ge=1)
    samples: int = Field(default=1000, ge=1)
    seed: int = 0


class SuiteOut(BaseModel):
    suite: str
    arity: int
    exhaustive: bool
    checked: int
    seed: Optional[int]
    passed: bool
    violations: list[str]
    elapsed_ms: float


class VerifyResponse(BaseModel):
    version: str
    elapsed_ms: float
    passed: bool
    suites: list[SuiteOut]


class ErrorDetail(BaseModel):
    code: Literal["usage", "arity-cap", "parse"]
    message: str
    position: Optional[int] = None
