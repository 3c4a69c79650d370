"""Selects the compiled series kernel when available, else the pure one.

Set ``HYPER3_PURE=1`` to force the pure-Python kernels (used by the
benchmark and as an escape hatch).
"""

import os

if os.environ.get("HYPER3_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _ckernel as _impl  # type: ignore[attr-defined]

        if not _impl._selftest():
            raise ImportError("compiled kernel failed its self test")
    except ImportError:
        from . import _kernel_py as _impl

series_mul = _impl.series_mul
series_axpy_into = _impl.series_axpy_into
backend_name = _impl.BACKEND_NAME
