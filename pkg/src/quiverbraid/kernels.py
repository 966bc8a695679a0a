"""Kernel selection: compiled extension when importable, else pure Python.

Set QUIVERBRAID_PURE=1 to force the fallback.
"""
from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _kernels_py

if os.environ.get("QUIVERBRAID_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def int_array(xs: Sequence[int]) -> array:
    return array("i", xs)


def braid_violation(n: int, pid: array, left: array, right: array) -> int:
    return _impl.braid_violation(n, pid, left, right)


def apply_generator(n: int, pid: array, left: array, right: array, codes, length: int, i: int) -> list[int]:
    return _impl.apply_generator(n, pid, left, right, codes, length, i)
