"""Broadcast nonlocality toolkit (C++ core)."""

import json as _json

from ._core import (
    BnlError,
    appendix_branch1,
    appendix_branch2,
    born_behavior,
    bound,
    broadcast_reproduction,
    builtin_names,
    evaluate,
    ghz_paper_correlation,
    maximize,
    quantum_value,
    r3_threshold,
    render,
    sweep,
    vertex_count,
)
from . import _core


def membership(table, n, model, tol=1e-7):
    return _json.loads(_core.membership(table, n, model, tol))


def verify(seed=1, only=()):
    return _json.loads(_core.verify(seed, list(only)))


__all__ = [
    "BnlError", "appendix_branch1", "appendix_branch2", "born_behavior", "bound",
    "broadcast_reproduction", "builtin_names", "evaluate", "ghz_paper_correlation",
    "maximize", "membership", "quantum_value", "r3_threshold", "render", "sweep",
    "vertex_count", "verify",
]
