"""Bundled example systems, loadable by name."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import IfsParseError
from .exact import IfsSpec, parse_ifs


def _bundled() -> resources.abc.Traversable:
    return resources.files(__package__) / "presets"


def list_presets(preset_dir: str | Path | None = None) -> list[str]:
    names = {
        entry.name[: -len(".json")]
        for entry in _bundled().iterdir()
        if entry.name.endswith(".json")
    }
    if preset_dir is not None:
        names.update(p.stem for p in Path(preset_dir).glob("*.json"))
    return sorted(names)


def load_preset(name: str, preset_dir: str | Path | None = None) -> IfsSpec:
    """Load a preset by name; ``preset_dir`` files shadow bundled ones."""
    if preset_dir is not None:
        candidate = Path(preset_dir) / f"{name}.json"
        if candidate.is_file():
            return parse_ifs(candidate.read_text())
    entry = _bundled() / f"{name}.json"
    try:
        text = entry.read_text()
    except (FileNotFoundError, OSError):
        raise IfsParseError(
            f"unknown preset {name!r}; available: {', '.join(list_presets(preset_dir))}"
        ) from None
    return parse_ifs(json.loads(text))
