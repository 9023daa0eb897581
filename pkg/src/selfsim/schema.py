"""Bundled JSON Schemas for every export and wire format, plus validation."""

from __future__ import annotations

import json
from functools import cache
from importlib import resources

SCHEMA_NAMES = (
    "ifs",
    "graph",
    "neighborhoods",
    "summary",
    "zoom-state",
    "session",
    "requests",
    "search",
)


@cache
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}; have {', '.join(SCHEMA_NAMES)}")
    path = resources.files("selfsim") / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text())


@cache
def _registry():
    from referencing import Registry, Resource

    resources_list = [
        (f"selfsim/{name}.schema.json", Resource.from_contents(load_schema(name)))
        for name in SCHEMA_NAMES
    ]
    registry = Registry().with_resources(resources_list)
    # bare relative references like "summary.schema.json" resolve too
    registry = registry.with_resources(
        [(f"{name}.schema.json", Resource.from_contents(load_schema(name)))
         for name in SCHEMA_NAMES]
    )
    return registry


def validate(payload, schema_name: str, fragment: str | None = None) -> None:
    """Raise jsonschema.ValidationError when payload does not match.

    ``fragment`` selects an entry of the schema's ``$defs``, e.g.
    validate(body, "requests", "zoom").
    """
    import jsonschema

    schema = load_schema(schema_name)
    if fragment is not None:
        schema = {**schema["$defs"][fragment], "$defs": schema.get("$defs", {})}
    jsonschema.validate(payload, schema, registry=_registry())
