"""Backend selection for the reduction kernel.

The compiled extension is used when it imports and the layout fits its
128-bit keys (at most six variables); ``BUCHSBAUM_LAB_BACKEND=python`` forces the
pure-Python kernel.
"""
from __future__ import annotations

import os

from . import _reduce_py

try:
    from . import _reduce_c  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _reduce_c = None

def compiled_available() -> bool:
    return _reduce_c is not None


def active_backend() -> str:
    forced = os.environ.get("BUCHSBAUM_LAB_BACKEND", "").lower()
    if forced == "python" or _reduce_c is None:
        return "python"
    return "compiled"


def make_reducer(layout, p: int, backend: str | None = None):
    backend = backend or active_backend()
    if backend == "compiled" and _reduce_c is not None and _reduce_c.Reducer.supports(layout):
        return _reduce_c.Reducer(layout, p)
    return _reduce_py.Reducer(layout, p)
