"""Backend selection for the hot kernels.

Prefers the compiled extension (fklens._fastkern) when it imported cleanly,
otherwise uses the pure-Python twin.  Set FKLENS_PURE_PYTHON=1 to force the
fallback; `use()` swaps backends temporarily (benchmarking, tests).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _purekern

_IMPLS = {"pure": _purekern}

if not os.environ.get("FKLENS_PURE_PYTHON"):
    try:
        from . import _fastkern
        _IMPLS["compiled"] = _fastkern
    except ImportError:
        pass

_active = _IMPLS.get("compiled", _purekern)


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def backend_name() -> str:
    return _active.BACKEND_NAME


def get(name: str):
    try:
        return _IMPLS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})") from None


def little_d_matrix(two_j: int, beta: float):
    return _active.little_d_matrix(two_j, beta)


def cg_racah(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> float:
    return _active.cg_racah(tj1, tm1, tj2, tm2, tj, tm)


@contextmanager
def use(name: str):
    """Temporarily switch the active backend (not thread-safe)."""
    global _active
    previous = _active
    _active = get(name)
    try:
        yield
    finally:
        _active = previous
