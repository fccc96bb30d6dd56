"""Python face of the kinetic Fokker-Planck toolkit.

Thin wrappers over the compiled module: each call returns the parsed JSON
report the C++ core emits.
"""

import json

from . import _core

__all__ = ["check", "verify", "constants", "log_weight"]


def check(potential_path, resolution=1e-3):
    """Nondegeneracy check for a homogeneous potential; returns the report dict."""
    return json.loads(_core.check(str(potential_path), resolution))


def verify(potential_path, nq=64, np=32, box=8.0, bc="periodic", c_max=1e6, seed=20240817):
    """Search the smallest admissible constant of the weighted lower bound."""
    return json.loads(_core.verify(str(potential_path), nq, np, box, bc, c_max, seed))


def constants(potential_path):
    """Pointwise constants (trace splits, bounds, sphere constants) of a potential."""
    return json.loads(_core.constants(str(potential_path)))


def log_weight(s):
    """The weight profile (s+1)/log(s+1) for s >= 1."""
    return _core.log_weight(s)
