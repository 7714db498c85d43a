"""Loading curve entries (name, citation, polynomial) from a directory of JSON files."""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .heights import poly_height
from .poly import parse_poly, squarefree_check


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    text: str
    poly: object
    expected: dict = field(default_factory=dict)

    def summary(self):
        f = self.poly
        return {"name": self.name, "source": self.source, "poly": str(f), "degree": f.degree,
                "degree_x": f.degree_x, "degree_y": f.degree_y,
                "height": poly_height(f).to_json()}


@dataclass(frozen=True)
class CorpusError:
    file: str
    reason: str

    def to_json(self):
        return {"file": self.file, "reason": self.reason}


def bundled_corpus_dir():
    return Path(str(resources.files("tangent_slopes") / "corpus"))


def load_entry(path):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    for key in ("name", "source", "poly"):
        if not isinstance(data.get(key), str):
            raise ValueError(f"missing or non-string field {key!r}")
    f = parse_poly(data["poly"])
    if f.is_constant():
        raise ValueError("polynomial is constant")
    if not squarefree_check(f):
        raise ValueError("polynomial is not squarefree")
    expected = data.get("expected") or {}
    for key in ("degree", "degree_x", "degree_y"):
        if key in expected and expected[key] != getattr(f, key):
            raise ValueError(f"{key} is {getattr(f, key)}, entry expects {expected[key]}")
    return CorpusEntry(data["name"], data["source"], data["poly"], f, expected)


def ingest_corpus(path=None):
    """Valid entries and per-file errors, both sorted by file name."""
    root = Path(path) if path is not None else bundled_corpus_dir()
    if not root.is_dir():
        raise FileNotFoundError(f"{root} is not a directory")
    entries, errors = [], []
    for p in sorted(root.glob("*.json")):
        try:
            entries.append(load_entry(p))
        except (ValueError, json.JSONDecodeError) as exc:
            errors.append(CorpusError(p.name, str(exc)))
    return entries, errors
