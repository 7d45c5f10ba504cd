# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for spectral propagation.

Both kernels evaluate sums of the form ``sum_k w_k exp(i r_k t)`` on a time
grid. They mirror :mod:`hbar_dicke._fallback` exactly in signature.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def phase_sum(const double complex[::1] weights, const double[::1] rates,
              const double[::1] times):
    cdef Py_ssize_t n = weights.shape[0]
    cdef Py_ssize_t nt = times.shape[0]
    if rates.shape[0] != n:
        raise ValueError("weights and rates differ in length")
    out = np.empty(nt, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t j, k
    cdef double t, ph, re, im, wr, wi, c, s
    with nogil:
        for j in range(nt):
            t = times[j]
            re = 0.0
            im = 0.0
            for k in range(n):
                ph = rates[k] * t
                c = cos(ph)
                s = sin(ph)
                wr = weights[k].real
                wi = weights[k].imag
                re += wr * c - wi * s
                im += wr * s + wi * c
            o[j].real = re
            o[j].imag = im
    return out


def phase_sum_rows(const double complex[:, ::1] weights, const double[::1] rates,
                   const double[::1] times):
    """Row-wise :func:`phase_sum`; returns shape ``(len(times), rows)``."""
    cdef Py_ssize_t m = weights.shape[0]
    cdef Py_ssize_t n = weights.shape[1]
    cdef Py_ssize_t nt = times.shape[0]
    if rates.shape[0] != n:
        raise ValueError("weights and rates differ in length")
    out = np.empty((nt, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double[::1] cs = np.empty(n)
    cdef double[::1] sn = np.empty(n)
    cdef Py_ssize_t j, k, r
    cdef double t, re, im, wr, wi
    with nogil:
        for j in range(nt):
            t = times[j]
            for k in range(n):
                cs[k] = cos(rates[k] * t)
                sn[k] = sin(rates[k] * t)
            for r in range(m):
                re = 0.0
                im = 0.0
                for k in range(n):
                    wr = weights[r, k].real
                    wi = weights[r, k].imag
                    re += wr * cs[k] - wi * sn[k]
                    im += wr * sn[k] + wi * cs[k]
                o[j, r].real = re
                o[j, r].imag = im
    return out
