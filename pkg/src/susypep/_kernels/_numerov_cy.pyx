# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov sweeps; hot inner loop of every solve and phase sweep.

Semantics match ``_numerov_py`` exactly: u'' = f u on a uniform mesh,
with prefix rescaling against overflow (true_u = u * exp(log_scale)).
"""
from libc.math cimport log as clog

import numpy as np

DEF GUARD = 1e250
DEF SHRINK = 1e-250


def sweep_outward(f, double h, double u0, double u1, Py_ssize_t stop):
    cdef double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    out_arr = np.empty(stop + 1, dtype=np.float64)
    cdef double[::1] u = out_arr
    cdef double t = h * h / 12.0
    cdef double log_scale = 0.0
    cdef double nxt
    cdef Py_ssize_t i, j
    u[0] = u0
    u[1] = u1
    for i in range(1, stop):
        nxt = ((2.0 + 10.0 * t * fv[i]) * u[i]
               - (1.0 - t * fv[i - 1]) * u[i - 1]) / (1.0 - t * fv[i + 1])
        if nxt > GUARD or nxt < -GUARD:
            for j in range(i + 1):
                u[j] *= SHRINK
            nxt *= SHRINK
            log_scale += -clog(SHRINK)
        u[i + 1] = nxt
    return out_arr, log_scale


def sweep_inward(f, double h, double u_last, double u_second_last, Py_ssize_t stop):
    cdef double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t n = fv.shape[0]
    cdef Py_ssize_t m = n - stop
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] u = out_arr
    cdef double t = h * h / 12.0
    cdef double log_scale = 0.0
    cdef double prv
    cdef Py_ssize_t i, j, k
    u[m - 1] = u_last
    u[m - 2] = u_second_last
    for i in range(n - 2, stop, -1):
        j = i - stop
        prv = ((2.0 + 10.0 * t * fv[i]) * u[j]
               - (1.0 - t * fv[i + 1]) * u[j + 1]) / (1.0 - t * fv[i - 1])
        if prv > GUARD or prv < -GUARD:
            for k in range(j, m):
                u[k] *= SHRINK
            prv *= SHRINK
            log_scale += -clog(SHRINK)
        u[j - 1] = prv
    return out_arr, log_scale
