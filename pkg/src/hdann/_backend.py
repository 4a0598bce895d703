"""Kernel backend selection.

The compiled extension is used when it was built and ``HDANN_PURE_PYTHON``
is unset; otherwise the numpy fallback is used.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if not os.environ.get("HDANN_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

basis_expand = kernels.basis_expand
input_grad = kernels.input_grad
