"""Select the integer kernel: compiled extension if importable, else Python.

Set ``RATLUK_KERNEL=python`` to force the reference implementation.
"""

import os

if os.environ.get("RATLUK_KERNEL", "").lower() == "python":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
