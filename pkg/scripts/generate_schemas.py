#!/usr/bin/env python3
"""Regenerate the JSON Schema files in docs/schemas from the service models.

Run from the repository root after changing any request/response model:

    python3 scripts/generate_schemas.py

The test suite fails if the committed files drift from the models.
"""
from __future__ import annotations

import json
from pathlib import Path

from canalyzer.service import schemas

MODELS = [
    schemas.AnalyzeRequest,
    schemas.AnalyzeResponse,
    schemas.EstimateRequest,
    schemas.EstimateResponse,
    schemas.SweepRequest,
    schemas.SweepResponse,
    schemas.ExpectedRequest,
    schemas.ExpectedResponse,
    schemas.VerifyRequest,
    schemas.VerifyResponse,
    schemas.ErrorDetail,
]

# The CLI wraps every payload in this envelope (see canalyzer.cli).
CLI_ENVELOPE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CliEnvelope",
    "type": "object",
    "properties": {
        "version": {"type": "string"},
        "command": {"type": "string"},
        "arguments": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "elapsed_ms": {"type": "number"},
        "payload": {"type": "object"},
    },
    "required": ["version", "command", "arguments", "seed", "elapsed_ms", "payload"],
    "additionalProperties": False,
}


def generated() -> dict[str, dict]:
    out = {f"{model.__name__}.json": model.model_json_schema() for model in MODELS}
    out["CliEnvelope.json"] = CLI_ENVELOPE
    return out


def main():
    target = Path(__file__).resolve().parent.parent / "docs" / "schemas"
    target.mkdir(parents=True, exist_ok=True)
    for name, schema in generated().items():
        path = target / name
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
