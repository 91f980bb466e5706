"""Pick the compiled kernels when available, else the numpy fallback.

Set ``CAUCHY_WELL_BACKEND=python`` to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

from . import _kernels_py as python_kernels

try:
    from . import _kernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("CAUCHY_WELL_BACKEND", "").lower() != "python":
    kernels = compiled_kernels
    BACKEND = "compiled"
else:
    kernels = python_kernels
    BACKEND = "python"
