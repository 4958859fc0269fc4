"""SAT core: engine selection plus the KS encoding surface.

The compiled kernel (ks_atlas._core) is preferred when the extension built;
the pure-Python engine is the drop-in fallback.  Both implement the same
deterministic heuristics, so verdicts, models, and cores are identical.
"""

from . import engine
from .encode import (CnfInstance, SolveResult, encode_ks, sat_solve,
                     selector_sidecar, to_dimacs)

Solver = engine.Solver
BACKEND = engine.BACKEND

__all__ = [
    "Solver", "BACKEND", "CnfInstance", "SolveResult", "encode_ks",
    "sat_solve", "to_dimacs", "selector_sidecar", "engine",
]
