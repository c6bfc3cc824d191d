"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``WGA_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("WGA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels

jn_array = _impl.jn_array
jn_band = _impl.jn_band
rk4_tridiag = _impl.rk4_tridiag
truncation_index = _pykernels.truncation_index
