"""Numeric defaults shared by the library entry points and the CLI."""
from __future__ import annotations

import os

DEFAULTS = {
    "tol": 1e-9,
    "n": 20,
    "K": 1000,
    "grid": 256,
    "floor_eps": 1e-8,
    "seed": 0,
    "resolution": 1024,
    "iters": 10,
}

ENV_TOL = "RL_DEFAULT_TOL"


def default_tol() -> float:
    """Default tolerance, overridable through ``RL_DEFAULT_TOL``."""
    raw = os.environ.get(ENV_TOL)
    if raw is None or raw.strip() == "":
        return DEFAULTS["tol"]
    try:
        val = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_TOL}={raw!r} is not a decimal number") from None
    if not val > 0:
        raise ValueError(f"{ENV_TOL} must be positive, got {raw!r}")
    return val


def effective_defaults() -> dict:
    out = dict(DEFAULTS)
    out["tol"] = default_tol()
    return out
