"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred; set SCENETEXT_PURE_PYTHON=1 to force
the fallback (used by the benchmark and the parity tests).
"""

import os

from . import _pyfallback

if os.environ.get("SCENETEXT_PURE_PYTHON"):
    _impl = _pyfallback
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pyfallback
        BACKEND = "python"

levenshtein = _impl.levenshtein
lcs_length = _impl.lcs_length

__all__ = ["levenshtein", "lcs_length", "BACKEND"]
