"""File helpers shared by the loaders and the CLI."""

from __future__ import annotations

import os
import tempfile
from importlib import resources
from pathlib import Path


class ResourceError(ValueError):
    """A resource file is malformed."""


def resource_path(name: str) -> Path:
    return Path(str(resources.files("arabstop") / "resources" / name))


def _content_lines(path: str | Path):
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def load_tsv(path: str | Path) -> dict[str, str]:
    """key TAB value per line; ``#`` comments; later duplicates are an error."""
    out: dict[str, str] = {}
    for lineno, line in _content_lines(path):
        if "\t" not in line:
            raise ResourceError(f"{path}:{lineno}: expected key<TAB>value")
        key, value = line.split("\t", 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ResourceError(f"{path}:{lineno}: empty key or value")
        if key in out:
            raise ResourceError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def load_tsv_rows(path: str | Path) -> list[tuple[int, list[str]]]:
    return [(lineno, line.split("\t")) for lineno, line in _content_lines(path)]


def load_word_lines(path: str | Path) -> list[tuple[int, str]]:
    return [(lineno, line.strip()) for lineno, line in _content_lines(path)]


def atomic_write(path: str | Path, text: str) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
