"""Define typing helpers."""

from __future__ import annotations

from typing import Any

DictType = dict[str, Any]

# An element of sympy's ``QQ`` domain (gmpy2 ``mpq`` or ``PythonMPQ``).
Coefficient = Any

Exponents = tuple[int, ...]
Word = tuple[int, ...]
Pair = tuple[int, int]
GroupElement = tuple[int, ...]
