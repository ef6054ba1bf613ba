"""Pick the compiled kernels when they were built, else the numpy fallback.

Set ``FILLIN_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("FILLIN_BACKEND", "").lower() == "python":
    kernels = _fallback
    NAME = "python"
else:
    try:
        from . import _kernels as kernels
        NAME = "cython"
    except ImportError:
        kernels = _fallback
        NAME = "python"

slic_assign = kernels.slic_assign
label_components = kernels.label_components
