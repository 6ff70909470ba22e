"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
FastAPI app in-process (no socket), and with --server it talks to a running
instance instead.  Exit codes: 0 success, 1 usage error, 2 verification
failure, 3 arity cap exceeded.
"""
from __future__ import annotations

import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

import click
import httpx

from . import __version__

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_CAP = 3


class RemoteError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ServiceClient:
    """HTTP client; without a server URL the app runs in-process over ASGI."""

    def __init__(self, server: Optional[str] = None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

                from .service import create_app

                self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code >= 400:
            detail = response.json().get("detail")
            if isinstance(detail, dict) and "code" in detail:
                raise RemoteError(detail["code"], detail["message"])
            raise RemoteError("usage", json.dumps(detail))
        return response.json()

    def close(self):
        self._client.close()


def _envelope(command: str, arguments: dict, payload: dict, started: float, seed=None) -> dict:
    return {
        "version": __version__,
        "command": command,
        "arguments": arguments,
        "seed": seed,
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
        "payload": payload,
    }


def _threads_option(ctx_value: Optional[int]) -> int:
    # Worker bound; all library computations are deterministic regardless.
    value = ctx_value if ctx_value is not None else int(os.environ.get("CANALYZER_THREADS", "1"))
    if value < 1:
        raise click.UsageError("--threads must be >= 1")
    return value


def _function_payload(expr, bits, hexstr, n) -> dict:
    given = [s for s in (expr, bits, hexstr) if s is not None]
    if len(given) != 1:
        raise click.UsageError("provide exactly one of --expr, --bits, --hex")
    payload = {"expr": expr, "bits": bits, "hex": hexstr}
    if n is not None:
        payload["n"] = n
    return payload


@click.group()
@click.version_option(__version__)
@click.option("--server", default=None, help="URL of a running service; default runs in-process.")
@click.option("--threads", type=int, default=None, help="Worker bound (CANALYZER_THREADS fallback).")
@click.pass_context
def cli(ctx, server, threads):
    """Collective canalization analysis of Boolean functions."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = ServiceClient(server)
    ctx.obj["threads"] = _threads_option(threads)


def _emit(fmt: str, envelope: dict, text_renderer):
    if fmt == "json":
        click.echo(json.dumps(envelope, indent=2))
    else:
        text_renderer(envelope["payload"])


@cli.command()
@click.option("--expr", default=None, help="Boolean expression, e.g. 'x1 & (x2 | x3)'.")
@click.option("--bits", default=None, help="Binary truth table string f(0)..f(2^n-1).")
@click.option("--hex", "hexstr", default=None, help="Hex form of the truth table bit stream.")
@click.option("--n", type=int, default=None, help="Declared arity.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.pass_context
def analyze(ctx, expr, bits, hexstr, n, fmt):
    """Full exact report: canalizing structure, P-vector, strength, sensitivity."""
    started = time.perf_counter()
    payload = ctx.obj["client"].post("/analyze", _function_payload(expr, bits, hexstr, n))

    def render(p):
        click.echo(f"arity: {p['arity']}   table: {p['bits']} (hex {p['hex']})")
        const = p["constant"]
        click.echo(f"essential variables: {p['essential_variables']}")
        comps = ", ".join(
            f"(x{c['variable']}={c['input']} -> {c['output']})" for c in p["components"]
        )
        click.echo(f"canalizing components: {comps or 'none'}")
        if const is not None:
            click.echo(f"constant function: {const} (no layer structure, no strength)")
        else:
            click.echo(
                f"canalizing depth: {p['depth']}   layer sizes: {tuple(p['layer_sizes'])}   sign: {p['sign']}"
            )
        pks = "  ".join(
            f"P_{row['k']}={row['proportion']['fraction']} ({row['proportion']['decimal']})"
            for row in p["p_vector"]
        )
        click.echo(f"k-set canalizing proportions: {pks}")
        if p["strength"] is not None:
            click.echo(
                f"canalizing strength: {p['strength']['fraction']} = {p['strength']['decimal']}"
            )
        click.echo(
            "normalized average sensitivity: "
            f"{p['normalized_sensitivity']['fraction']} = {p['normalized_sensitivity']['decimal']}"
        )
        for b in p["bounds"]:
            click.echo(
                f"  k={b['k']}: {b['lower']['decimal']} <= s <= {b['upper']:.6g}"
                f" (P_(n-k)={b['p_n_minus_k']['fraction']})"
                f" {'ok' if b['holds'] else 'VIOLATED'}"
            )

    _emit(fmt, _envelope("analyze", {"expr": expr, "bits": bits, "hex": hexstr, "n": n}, payload, started), render)


@cli.command()
@click.option("--expr", default=None)
@click.option("--bits", default=None)
@click.option("--hex", "hexstr", default=None)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.pass_context
def estimate(ctx, expr, bits, hexstr, n, k, samples, seed, fmt):
    """Monte Carlo estimate of P_k with a Wilson 95% interval."""
    started = time.perf_counter()
    body = _function_payload(expr, bits, hexstr, n)
    body.update({"k": k, "samples": samples, "seed": seed})
    payload = ctx.obj["client"].post("/estimate", body)

    def render(p):
        click.echo(
            f"P_{p['k']} estimate: {p['estimate']:.6g} "
            f"(95% Wilson [{p['wilson_low']:.6g}, {p['wilson_high']:.6g}], "
            f"{p['hits']}/{p['samples']} hits, seed {p['seed']})"
        )

    _emit(fmt, _envelope("estimate", body, payload, started, seed=seed), render)


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.pass_context
def sweep(ctx, n, out, fmt):
    """Exhaustive sweep over all functions of arity n; writes the three CSVs."""
    started = time.perf_counter()
    payload = ctx.obj["client"].post("/sweep", {"n": n})
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in payload["files"].items():
        (out / name).write_text(content, encoding="utf-8")
        written.append(str(out / name))
    summary = payload["summary"]
    envelope = _envelope(
        "sweep", {"n": n, "out": str(out)}, {"summary": summary, "files": written}, started
    )

    def render(p):
        click.echo(
            f"swept {summary['functions']} functions of arity {n} "
            f"({summary['constants']} constants)"
        )
        click.echo(f"records by depth: {summary['by_depth']}")
        click.echo(f"records by symmetry groups: {summary['by_symmetry_groups']}")
        for path in written:
            click.echo(f"wrote {path}")

    _emit(fmt, envelope, render)


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",")]


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--k", default=None, help="k value, list 'a,b,c' or range 'a..b'; default n-4..n-1.")
@click.option("--p", default=None, help="bias value or list; default grid 0.01..0.99.")
@click.option("--p-step", type=float, default=0.01, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.pass_context
def expected(ctx, n, k, p, p_step, out, fmt):
    """Closed-form expected P_k over a bias grid (figure-1 data)."""
    started = time.perf_counter()
    body: dict = {"n": n, "p_step": p_step}
    if k is not None:
        body["k"] = _parse_range(k)
    if p is not None:
        body["p"] = [float(part) for part in p.split(",")]
    payload = ctx.obj["client"].post("/expected", body)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(payload["csv"], encoding="utf-8")

    def render(pl):
        if out is not None:
            click.echo(f"wrote {out} ({pl['csv'].count(chr(10)) - 1} rows)")
        else:
            click.echo(pl["csv"], nl=False)

    _emit(fmt, _envelope("expected", body, payload, started), render)


@cli.command()
@click.option(
    "--suite",
    type=click.Choice(["thm31", "cor32", "thm33", "thm45", "cor46", "all"]),
    required=True,
)
@click.option("--n", type=int, required=True)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.pass_context
def verify(ctx, suite, n, samples, seed, fmt):
    """Run inequality suites; exits 2 on any violation."""
    started = time.perf_counter()
    payload = ctx.obj["client"].post(
        "/verify", {"suite": suite, "n": n, "samples": samples, "seed": seed}
    )

    def render(p):
        for result in p["suites"]:
            mode = "exhaustive" if result["exhaustive"] else f"sampled(seed={result['seed']})"
            status = "pass" if result["passed"] else "FAIL"
            click.echo(
                f"{result['suite']} n={result['arity']} {mode} "
                f"checked={result['checked']}: {status}"
            )
            for violation in result["violations"]:
                click.echo(f"  {violation}")

    _emit(fmt, _envelope("verify", {"suite": suite, "n": n, "samples": samples, "seed": seed}, payload, started, seed=seed), render)
    if not payload["passed"]:
        sys.exit(EXIT_VERIFICATION)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


def entry(argv=None) -> int:
    """Entry point mapping errors onto the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
        return EXIT_OK
    except SystemExit as exc:  # verify propagates its own code
        return int(exc.code or 0)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except RemoteError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CAP if exc.code == "arity-cap" else EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE


def main():  # console_scripts shim
    sys.exit(entry())


if __name__ == "__main__":
    main()
