"""Engine selection: compiled core when available, pure Python otherwise.

Set KS_ATLAS_FORCE_PURE=1 to ignore the compiled extension (used by the
equivalence tests and the benchmark)."""

import os

if os.environ.get("KS_ATLAS_FORCE_PURE") == "1":
    from .engine_py import Solver
    BACKEND = "pure-python"
else:
    try:
        from ks_atlas._core import Solver
        BACKEND = "compiled"
    except ImportError:
        from .engine_py import Solver
        BACKEND = "pure-python"

__all__ = ["Solver", "BACKEND"]
