"""The committed schema files must match what the models generate."""
from __future__ import annotations

import importlib.util
import json
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
SCHEMA_DIR = REPO / "docs" / "schemas"


def _load_generator():
    spec = importlib.util.spec_from_file_location(
        "generate_schemas", REPO / "scripts" / "generate_schemas.py"
    )
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_schema_files_are_current():
    module = _load_generator()
    expected = module.generated()
    on_disk = {p.name: json.loads(p.read_text(encoding="utf-8")) for p in SCHEMA_DIR.glob("*.json")}
    assert set(on_disk) == set(expected), "run scripts/generate_schemas.py"
    for name, schema in expected.items():
        assert on_disk[name] == schema, f"{name} is stale; run scripts/generate_schemas.py"


def test_schemas_mention_key_fields():
    analyze = json.loads((SCHEMA_DIR / "AnalyzeResponse.json").read_text(encoding="utf-8"))
    assert "p_vector" in analyze["properties"]
    assert "strength" in analyze["properties"]
    envelope = json.loads((SCHEMA_DIR / "CliEnvelope.json").read_text(encoding="utf-8"))
    assert envelope["required"] == [
        "version",
        "command",
        "arguments",
        "seed",
        "elapsed_ms",
        "payload",
    ]
