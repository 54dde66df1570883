"""Select the tridiagonal kernel backend at import time.

The compiled extension is used when it is importable; setting
``KGDOT_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _sturm_py

if os.environ.get("KGDOT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _sturm_py
else:
    try:
        from . import _sturm as _impl
    except ImportError:  # extension not built
        _impl = _sturm_py

BACKEND = "python" if _impl is _sturm_py else "cython"

sturm_count = _impl.sturm_count
kth_eigenvalue = _impl.kth_eigenvalue
tridiag_solve = _impl.tridiag_solve
