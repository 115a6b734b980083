"""Backend selection for the series kernel.

The compiled Cython kernel is used when it was built; otherwise the numpy
implementation takes over. Both expose ``hyp_sum`` and ``tail_bound`` with
identical signatures.
"""

from __future__ import annotations

from types import ModuleType

from . import _series_py

try:
    from . import _series_ext
except ImportError:  # extension not built
    _series_ext = None

BACKENDS: dict[str, ModuleType] = {"python": _series_py}
if _series_ext is not None:
    BACKENDS["cython"] = _series_ext

BACKEND = "cython" if _series_ext is not None else "python"
_active = BACKENDS[BACKEND]


def hyp_sum(a, b, c, kind, zr, zi, rel_tol, tail_tol, max_terms):
    return _active.hyp_sum(a, b, c, kind, zr, zi, rel_tol, tail_tol, max_terms)


def use_backend(name: str) -> str:
    """Switch the active kernel (``"cython"`` or ``"python"``); returns the previous name."""
    global _active, BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    previous = BACKEND
    BACKEND = name
    _active = BACKENDS[name]
    return previous
