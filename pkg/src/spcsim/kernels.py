"""Select the Fock-kernel backend at import time.

The hot inner loops (ladder-operator matrix elements over the fixed-number
basis) exist twice: a Cython extension ``spcsim._kernels`` and a pure-NumPy
fallback ``spcsim._kernels_py`` with identical semantics.  The compiled
module is preferred when importable; set ``SPCSIM_PURE_PYTHON=1`` to force
the fallback (used by ``benchmarks/bench_kernels.py`` to compare both).
"""

import os


def load_backend(pure: bool = False):
    """Return ``(module, name)`` for the requested kernel backend."""
    if not pure:
        try:
            from . import _kernels  # type: ignore[attr-defined]

            return _kernels, "compiled"
        except ImportError:
            pass
    from . import _kernels_py

    return _kernels_py, "pure-python"


_force_pure = os.environ.get("SPCSIM_PURE_PYTHON", "").strip() not in ("", "0")
impl, backend_name = load_backend(pure=_force_pure)
