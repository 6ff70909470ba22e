"""FastAPI service exposing the analysis operations over HTTP."""
from __future__ import annotations

import csv
import io
import time
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..canalization import (
    canalizing_components,
    estimate_pk,
    k_set_count,
    layer_structure,
    profile,
)
from ..core import TruthTable
from ..ensemble import expected_pk
from ..errors import ArityCapError, CanalyzerError, ParseError
from ..parser import parse_to_table
from ..sensitivity import average_sensitivity, check_sensitivity_bounds
from ..sweep import enumerate_all, figure2_aggregate, aggregate_csv, records_csv, FIG2A_FIELDS, FIG2B_FIELDS
from . import schemas as s


def resolve_function(source: s.FunctionSource) -> TruthTable:
    try:
        if source.expr is not None:
            return parse_to_table(source.expr, source.n)
        if source.bits is not None:
            n = source.n
            if n is None:
                size = len(source.bits)
                n = size.bit_length() - 1
                if size != 1 << n:
                    raise ValueError(
                        f"bit string length {size} is not a power of two; pass n"
                    )
            return TruthTable.from_bits(n, source.bits)
        assert source.hex is not None and source.n is not None
        return TruthTable.from_hex(source.n, source.hex)
    except ParseError as exc:
        raise HTTPException(
            status_code=400,
            detail=s.ErrorDetail(code="parse", message=str(exc), position=exc.position).model_dump(),
        ) from exc
    except (ValueError, ArityCapError) as exc:
        raise HTTPException(
            status_code=400,
            detail=s.ErrorDetail(code="usage", message=str(exc)).model_dump(),
        ) from exc


def _cap(exc: ArityCapError) -> HTTPException:
    return HTTPException(
        status_code=400,
        detail=s.ErrorDetail(code="arity-cap", message=str(exc)).model_dump(),
    )


def _usage(exc: Exception) -> HTTPException:
    return HTTPException(
        status_code=400,
        detail=s.ErrorDetail(code="usage", message=str(exc)).model_dump(),
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="canalyzer",
        version=__version__,
        description="Collective canalization analysis of Boolean functions",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=s.AnalyzeResponse)
    def analyze(request: s.AnalyzeRequest) -> s.AnalyzeResponse:
        start = time.perf_counter()
        f = resolve_function(request)
        try:
            prof = profile(f)
        except ArityCapError as exc:
            raise _cap(
                ArityCapError(f"{exc}; use /estimate for sampled proportions")
            ) from exc
        constant = prof.constant
        if constant is None:
            ls = layer_structure(f)
            depth, num_layers = ls.depth, ls.num_layers
            layer_sizes = list(ls.layer_sizes)
            layers = [
                s.LayerOut(
                    variables=[v for v, _ in layer], inputs=[a for _, a in layer]
                )
                for layer in ls.layers
            ]
            sign = ls.sign
        else:
            depth = num_layers = layer_sizes = layers = sign = None
        ks = request.bound_ks or list(range(1, f.arity + 1))
        try:
            report = check_sensitivity_bounds(f, ks) if f.arity else None
        except ValueError as exc:
            raise _usage(exc) from exc
        return s.AnalyzeResponse(
            version=__version__,
            elapsed_ms=(time.perf_counter() - start) * 1000,
            arity=f.arity,
            bits=f.to_bit_string(),
            hex=f.to_hex_string(),
            essential_variables=sorted(f.essential_variables()),
            constant=constant,
            components=[
                s.ComponentOut(variable=c.variable, input=c.input, output=c.output)
                for c in sorted(canalizing_components(f))
            ],
            depth=depth,
            num_layers=num_layers,
            layer_sizes=layer_sizes,
            layers=layers,
            sign=sign,
            p_vector=[
                s.PkOut(
                    k=k,
                    canalizing=c,
                    total=t,
                    proportion=s.Rational.from_fraction(Fraction(c, t)),
                )
                for k, (c, t) in enumerate(prof.counts)
            ],
            strength=(
                s.Rational.from_fraction(prof.strength)
                if prof.strength is not None
                else None
            ),
            average_sensitivity=s.Rational.from_fraction(average_sensitivity(f)),
            normalized_sensitivity=s.Rational.from_fraction(
                average_sensitivity(f, normalized=True) if f.arity else Fraction(0)
            ),
            bounds=[
                s.BoundOut(
                    k=c.k,
                    p_n_minus_k=s.Rational.from_fraction(c.p_n_minus_k),
                    lower=s.Rational.from_fraction(c.lower),
                    upper=c.upper,
                    holds=c.holds,
                )
                for c in (report.checks if report else ())
            ],
        )

    @app.post("/estimate", response_model=s.EstimateResponse)
    def estimate(request: s.EstimateRequest) -> s.EstimateResponse:
        start = time.perf_counter()
        f = resolve_function(request)
        try:
            est = estimate_pk(f, request.k, request.samples, request.seed)
        except ValueError as exc:
            raise _usage(exc) from exc
        return s.EstimateResponse(
            version=__version__,
            elapsed_ms=(time.perf_counter() - start) * 1000,
            arity=est.arity,
            k=est.k,
            samples=est.samples,
            hits=est.hits,
            seed=est.seed,
            estimate=est.estimate,
            wilson_low=est.wilson_low,
            wilson_high=est.wilson_high,
        )

    @app.post("/sweep", response_model=s.SweepResponse)
    def sweep(request: s.SweepRequest) -> s.SweepResponse:
        start = time.perf_counter()
        try:
            records = list(enumerate_all(request.n))
        except ArityCapError as exc:
            raise _cap(exc) from exc
        by_depth, by_symmetry = figure2_aggregate(records)
        files = {
            "sweep_records.csv": records_csv(records),
            "fig2a.csv": aggregate_csv(by_depth, FIG2A_FIELDS),
            "fig2b.csv": aggregate_csv(by_symmetry, FIG2B_FIELDS),
        }
        depth_counts: dict[int, int] = {}
        sym_counts: dict[int, int] = {}
        constants = 0
        for rec in records:
            depth_counts[rec.depth] = depth_counts.get(rec.depth, 0) + 1
            sym_counts[rec.symmetry_groups] = sym_counts.get(rec.symmetry_groups, 0) + 1
            constants += rec.constant
        return s.SweepResponse(
            version=__version__,
            elapsed_ms=(time.perf_counter() - start) * 1000,
            summary=s.SweepSummary(
                n=request.n,
                functions=len(records),
                constants=constants,
                by_depth=depth_counts,
                by_symmetry_groups=sym_counts,
            ),
            files=files,
        )

    @app.post("/expected", response_model=s.ExpectedResponse)
    def expected(request: s.ExpectedRequest) -> s.ExpectedResponse:
        start = time.perf_counter()
        n = request.n
        ks = request.k if request.k else [k for k in range(n - 4, n) if 1 <= k <= n]
        if any(not 0 <= k <= n for k in ks):
            raise _usage(ValueError(f"k values must lie in 0..{n}"))
        if request.p is not None:
            biases = request.p
        else:
            steps = int(round(0.98 / request.p_step))
            biases = [round(0.01 + i * request.p_step, 10) for i in range(steps + 1)]
            biases = [p for p in biases if 0.0 < p < 1.0]
        if any(not 0.0 < p < 1.0 for p in biases):
            raise _usage(ValueError("biases must lie strictly inside (0, 1)"))
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bias", "n", "k", "expected_pk"])
        for k in ks:
            for p in biases:
                writer.writerow([p, n, k, repr(expected_pk(n, k, p))])
        return s.ExpectedResponse(
            version=__version__,
            elapsed_ms=(time.perf_counter() - start) * 1000,
            csv=buf.getvalue(),
        )

    @app.post("/verify", response_model=s.VerifyResponse)
    def verify(request: s.VerifyRequest) -> s.VerifyResponse:
        from ..verify import run_suites

        start = time.perf_counter()
        try:
            results = run_suites(request.suite, request.n, request.samples, request.seed)
        except ArityCapError as exc:
            raise _cap(exc) from exc
        except (ValueError, CanalyzerError) as exc:
            raise _usage(exc) from exc
        return s.VerifyResponse(
            version=__version__,
            elapsed_ms=(time.perf_counter() - start) * 1000,
            passed=all(r.passed for r in results),
            suites=[
                s.SuiteOut(
                    suite=r.suite,
                    arity=r.arity,
                    exhaustive=r.exhaustive,
                    checked=r.checked,
                    seed=r.seed,
                    passed=r.passed,
                    violations=r.violations[:50],
                    elapsed_ms=r.elapsed_ms,
                )
                for r in results
            ],
        )

    return app


app = create_app()
