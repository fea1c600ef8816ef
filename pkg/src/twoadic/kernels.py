"""Kernel dispatch: compiled extension when built, pure Python otherwise.

The two backends implement the same four functions with identical results
and multiplication counts; the compiled one is just faster.  Selection
happens once at import.  force_backend() overrides it explicitly (used by
the benchmark and the parity tests); there is no environment-variable
switch.
"""

from __future__ import annotations

from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_active = _compiled if _compiled is not None else _kernels_py


def compiled_available() -> bool:
    return _compiled is not None


def active_backend() -> str:
    return "compiled" if _active is _compiled else "pure"


def force_backend(name: str) -> None:
    """Select 'compiled' or 'pure' explicitly; raises if unavailable."""
    global _active
    if name == "pure":
        _active = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def backend(name: str):
    """Temporarily force a backend (restores the previous one on exit)."""
    previous = active_backend()
    force_backend(name)
    try:
        yield
    finally:
        force_backend(previous)


def odd_prod_range(lo: int, hi: int, width: int) -> tuple[int, int]:
    return _active.odd_prod_range(lo, hi, width)


def offset_odd_prod(base: int, e: int, width: int) -> tuple[int, int]:
    return _active.offset_odd_prod(base, e, width)


def od_naive_prod(e: int, width: int) -> tuple[int, int]:
    return _active.od_naive_prod(e, width)


def inv_sums(e: int, width: int) -> tuple[int, int]:
    return _active.inv_sums(e, width)
