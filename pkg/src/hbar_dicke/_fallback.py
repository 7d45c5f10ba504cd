"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def phase_sum(weights, rates, times):
    weights = np.asarray(weights, dtype=np.complex128)
    rates = np.asarray(rates, dtype=np.float64)
    if weights.shape != rates.shape:
        raise ValueError("weights and rates differ in length")
    times = np.asarray(times, dtype=np.float64)
    return np.exp(1j * np.outer(times, rates)) @ weights


def phase_sum_rows(weights, rates, times):
    """Row-wise :func:`phase_sum`; returns shape ``(len(times), rows)``."""
    weights = np.asarray(weights, dtype=np.complex128)
    rates = np.asarray(rates, dtype=np.float64)
    if weights.shape[1] != rates.shape[0]:
        raise ValueError("weights and rates differ in length")
    times = np.asarray(times, dtype=np.float64)
    return np.exp(1j * np.outer(times, rates)) @ weights.T
