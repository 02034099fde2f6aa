"""Kernel selection: prefer the compiled extension, fall back to pure Python.

Set IWALAB_PURE_PYTHON=1 to force the fallback (used by the benchmark and to
reproduce results on installs without a C toolchain).  Both implementations
are algorithmically identical and bit-for-bit deterministic.
"""

import os

if os.environ.get("IWALAB_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

smith_exponents = _impl.smith_exponents
det_mod = _impl.det_mod
charpoly_mod = _impl.charpoly_mod
bareiss_det = _impl.bareiss_det

KERNEL_IMPL = _impl.IMPL_NAME
