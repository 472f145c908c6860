"""The bundled example corpus and ``corpus:<name>`` references."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .serialize import AlgebraFile, FormatError, load, loads

PREFIX = "corpus:"


def _root():
    return resources.files("lquadri").joinpath("data/corpus")


def names() -> list[str]:
    """Names of the bundled examples, sorted."""
    return sorted(p.name[:-5] for p in _root().iterdir() if p.name.endswith(".json"))


def text(name: str) -> str:
    entry = _root().joinpath(f"{name}.json")
    if not entry.is_file():
        raise FormatError(f"unknown corpus entry {name!r}; known: {', '.join(names())}")
    return entry.read_text(encoding="utf-8")


def get(name: str) -> AlgebraFile:
    try:
        return loads(text(name))
    except FormatError as exc:
        raise FormatError(f"{PREFIX}{name}: {exc}") from None


def all_files() -> dict[str, AlgebraFile]:
    return {n: get(n) for n in names()}


def resolve(ref: str | Path) -> AlgebraFile:
    """Load ``corpus:<name>`` from the bundle, anything else from disk."""
    ref = str(ref)
    if ref.startswith(PREFIX):
        return get(ref[len(PREFIX):])
    return load(ref)
