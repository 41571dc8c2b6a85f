"""Render figures from hystwave CLI artifacts.

This package contains no physics: every number it draws comes from the
CSV/JSON files written by the ``hystwave`` command-line tool.  Rendering
is deterministic, so the same input files always produce byte-identical
images.
"""

from .figures import FigureSpec, render
from .io import SchemaMismatch, read_csv, read_json

__all__ = [
    "FigureSpec",
    "render",
    "SchemaMismatch",
    "read_csv",
    "read_json",
]

__version__ = "0.1.0"
