"""Sweep kernel backends: compiled extension when built, NumPy fallback otherwise."""

from __future__ import annotations

try:
    from . import _sweeps_cy as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; the fallback is algorithmically identical
    from . import sweeps_py as _impl

    BACKEND = "python"

run_sweeps = _impl.run_sweeps


def backend_name() -> str:
    """Which kernel implementation ``run_sweeps`` dispatches to."""
    return BACKEND
