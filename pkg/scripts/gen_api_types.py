#!/usr/bin/env python3
"""Emit TypeScript interfaces for the review console from the shared
JSON schema (schema/api.schema.json -> frontend/src/api-types.ts)."""

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
SCHEMA = ROOT / "schema" / "api.schema.json"
OUT = ROOT / "frontend" / "src" / "api-types.ts"


def ts_type(schema: dict) -> str:
    if "$ref" in schema:
        return schema["$ref"].split("/")[-1]
    if "anyOf" in schema:
        return " | ".join(sorted(ts_type(s) for s in schema["anyOf"]))
    stype = schema.get("type")
    if isinstance(stype, list):
        return " | ".join(sorted(_scalar(t, schema) for t in stype))
    return _scalar(stype, schema)


def _scalar(stype: str, schema: dict) -> str:
    if stype == "string":
        if "enum" in schema:
            return " | ".join(json.dumps(v) for v in schema["enum"])
        return "string"
    if stype in ("number", "integer"):
        return "number"
    if stype == "boolean":
        return "boolean"
    if stype == "null":
        return "null"
    if stype == "array":
        if "prefixItems" in schema:
            inner = ", ".join(ts_type(s) for s in schema["prefixItems"])
            return f"[{inner}]"
        return f"{ts_type(schema.get('items', {}))}[]"
    if stype == "object":
        extra = schema.get("additionalProperties")
        if isinstance(extra, dict):
            return f"Record<string, {ts_type(extra)}>"
        if not schema.get("properties"):
            return "Record<string, unknown>"
        return _inline_object(schema)
    return "unknown"


def _inline_object(schema: dict) -> str:
    required = set(schema.get("required", []))
    fields = []
    for name, sub in schema["properties"].items():
        optional = "" if name in required else "?"
        fields.append(f"  {name}{optional}: {ts_type(sub)};")
    return "{\n" + "\n".join(fields) + "\n}"


def main() -> None:
    schema = json.loads(SCHEMA.read_text(encoding="utf-8"))
    parts = [
        "// Generated from schema/api.schema.json by scripts/gen_api_types.py.",
        "// Do not edit by hand; rerun the generator instead.",
        "",
    ]
    for name, definition in schema["$defs"].items():
        if definition.get("type") == "object" and "properties" in definition:
            parts.append(f"export interface {name} {_inline_object(definition)}")
        else:
            parts.append(f"export type {name} = {ts_type(definition)};")
        parts.append("")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(parts), encoding="utf-8")
    print(f"wrote {OUT.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
