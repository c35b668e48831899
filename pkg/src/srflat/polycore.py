"""Backend selection for the polynomial kernels.

Tries the compiled extension first and falls back to the pure-Python
implementation.  Set SRFLAT_BACKEND=pure to force the fallback (used by
the benchmark and by CI runs without a compiler).
"""

import os

if os.environ.get("SRFLAT_BACKEND", "").lower() in ("pure", "python", "py"):
    from . import polyops_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _polyops as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import polyops_py as _impl

        BACKEND = "pure"

poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_mul_term = _impl.poly_mul_term
