"""Backend selection for the propagation kernels.

The Cython extension is used when it was built; otherwise the numpy fallback
is imported. Setting ``HBAR_DICKE_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _fallback

if os.environ.get("HBAR_DICKE_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"


def phase_sum(weights, rates, times):
    """Evaluate ``sum_k weights[k] * exp(1j * rates[k] * t)`` for every ``t`` in ``times``."""
    return _impl.phase_sum(
        np.ascontiguousarray(weights, dtype=np.complex128),
        np.ascontiguousarray(rates, dtype=np.float64),
        np.ascontiguousarray(np.atleast_1d(times), dtype=np.float64),
    )


def phase_sum_rows(weights, rates, times):
    return _impl.phase_sum_rows(
        np.ascontiguousarray(weights, dtype=np.complex128),
        np.ascontiguousarray(rates, dtype=np.float64),
        np.ascontiguousarray(np.atleast_1d(times), dtype=np.float64),
    )
