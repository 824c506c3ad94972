"""On-disk formats: algebra files, subuniverse files, corpus directories.

Algebra file (JSON): {"arity": n, "size": m, "table": [...], "labels": [...]?}
with the flat row-major entry layout; values 0-based; labels display-only.
Subuniverse file: {"elements": [sorted 0-based indices]}.
Corpus directory: corpus.json metadata plus one algebra file per table.
"""

from __future__ import annotations

import json
import os
from typing import Iterable

from .core import NaryTable, Subuniverse
from .generate import GENERATOR_NAME, GenSpec

CORPUS_FORMAT = "absorb-corpus/1"
CORPUS_META = "corpus.json"


def save_algebra(path: str, table: NaryTable, labels: list[str] | None = None) -> None:
    doc: dict = {"arity": table.arity, "size": table.size, "table": list(table.entries)}
    if labels is not None:
        doc["labels"] = list(labels)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, sort_keys=True)
        f.write("\n")


def load_algebra(path: str) -> tuple[NaryTable, list[str] | None]:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    for key in ("arity", "size", "table"):
        if key not in doc:
            raise ValueError(f"{path}: missing required field {key!r}")
    if not isinstance(doc["arity"], int) or not isinstance(doc["size"], int):
        raise ValueError(f"{path}: arity and size must be integers")
    if not isinstance(doc["table"], list):
        raise ValueError(f"{path}: table must be a flat integer array")
    try:
        table = NaryTable(doc["arity"], doc["size"], tuple(doc["table"]))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != table.size:
            raise ValueError(f"{path}: labels must list one string per element")
        labels = [str(x) for x in labels]
    return table, labels


def save_subuniverse(path: str, sub: Subuniverse) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"elements": list(sub.elements)}, f, sort_keys=True)
        f.write("\n")


def load_subuniverse(path: str, carrier_size: int) -> Subuniverse:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    if "elements" not in doc or not isinstance(doc["elements"], list):
        raise ValueError(f"{path}: missing 'elements' integer array")
    try:
        return Subuniverse(carrier_size, frozenset(doc["elements"]))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: {exc}") from exc


def write_corpus_dir(dirpath: str, spec: GenSpec, tables: Iterable[NaryTable]) -> dict:
    """Write one algebra file per table plus corpus.json; returns the metadata."""
    os.makedirs(dirpath, exist_ok=True)
    files = []
    for i, table in enumerate(tables):
        name = f"table_{i:06d}.json"
        save_algebra(os.path.join(dirpath, name), table)
        files.append(name)
    meta = {
        "format": CORPUS_FORMAT,
        "genspec": spec.to_dict(),
        "generator": GENERATOR_NAME,
        "count": len(files),
        "files": files,
    }
    with open(os.path.join(dirpath, CORPUS_META), "w", encoding="utf-8") as f:
        json.dump(meta, f, sort_keys=True, indent=1)
        f.write("\n")
    return meta


def read_corpus_dir(dirpath: str) -> tuple[list[NaryTable], dict]:
    """Load the tables of a corpus directory in its recorded (or sorted) order."""
    meta_path = os.path.join(dirpath, CORPUS_META)
    if os.path.exists(meta_path):
        with open(meta_path, encoding="utf-8") as f:
            meta = json.load(f)
        files = meta.get("files")
        if files is None:
            raise ValueError(f"{meta_path}: missing 'files' list")
    else:
        meta = {}
        files = sorted(
            name
            for name in os.listdir(dirpath)
            if name.endswith(".json") and name != CORPUS_META
        )
    tables = [load_algebra(os.path.join(dirpath, name))[0] for name in files]
    return tables, meta
