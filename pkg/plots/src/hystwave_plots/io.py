"""Readers for the hystwave CLI file formats.

CSV files carry ``# key=value`` metadata lines before the column
header; JSON files are plain documents.  All schema problems are
reported as SchemaMismatch naming the offending column or key.
"""

import json
from dataclasses import dataclass
from typing import Dict, List

import numpy as np


class SchemaMismatch(Exception):
    """An input file does not match the published CLI schema."""

    def __init__(self, path: str, column: str):
        self.path = path
        self.column = column
        super().__init__(f"{path}: missing or malformed column {column!r}")


@dataclass(frozen=True)
class Table:
    """One parsed CSV artifact: header metadata plus named columns."""

    path: str
    meta: Dict[str, str]
    columns: List[str]
    data: Dict[str, object]  # float ndarray, or list[str] for text columns

    def need(self, *names: str) -> None:
        """Raise SchemaMismatch for the first absent column."""
        for name in names:
            if name not in self.data:
                raise SchemaMismatch(self.path, name)

    def floats(self, name: str) -> np.ndarray:
        self.need(name)
        col = self.data[name]
        if not isinstance(col, np.ndarray):
            raise SchemaMismatch(self.path, name)
        return col


def read_csv(path: str) -> Table:
    """Parse a CLI CSV file: meta lines, column header, data rows.

    Columns that parse as floats throughout become float arrays; any
    other column is kept as a list of strings.
    """
    meta: Dict[str, str] = {}
    columns: List[str] = []
    raw: List[List[str]] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, val = body.split("=", 1)
                    meta[key.strip()] = val.strip()
                continue
            if not columns:
                columns = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(columns):
                raise SchemaMismatch(path, f"row with {len(cells)} cells")
            raw.append(cells)

    if not columns:
        raise SchemaMismatch(path, "<header>")

    data: Dict[str, object] = {}
    for j, name in enumerate(columns):
        cells = [row[j] for row in raw]
        try:
            data[name] = np.array([float(c) for c in cells])
        except ValueError:
            data[name] = cells
    return Table(path=path, meta=meta, columns=columns, data=data)


def read_json(path: str) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise SchemaMismatch(path, "<root>")
    return doc


def need_keys(path: str, doc: dict, *keys: str) -> None:
    """Raise SchemaMismatch for the first absent JSON key (dotted paths)."""
    for key in keys:
        node = doc
        for part in key.split("."):
            if not (isinstance(node, dict) and part in node):
                raise SchemaMismatch(path, key)
            node = node[part]
