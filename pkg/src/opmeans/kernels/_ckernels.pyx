# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scalar kernels; mirrors ``_pykernels`` value for value."""
import numpy as np

from libc.math cimport fabs, log, pow

cdef enum:
    ARITHMETIC = 0
    GEOMETRIC = 1
    HARMONIC = 2
    LOGARITHMIC = 3
    POWER_QUASI = 4
    AFFINE = 5

cdef double LOG_SERIES_RADIUS = 1e-4
cdef double P_ZERO_RADIUS = 1e-6


cdef inline double _family(int code, double p0, double p1, double x) noexcept nogil:
    cdef double u
    if code == ARITHMETIC:
        return (1.0 - p0) + p0 * x
    if code == GEOMETRIC:
        return pow(x, p0)
    if code == HARMONIC:
        if p0 == 0.0:
            return 1.0
        return x / ((1.0 - p0) * x + p0)
    if code == LOGARITHMIC:
        if x == 0.0:
            return 0.0
        u = x - 1.0
        if fabs(u) < LOG_SERIES_RADIUS:
            return 1.0 + u * (0.5 + u * (-1.0 / 12.0 + u * (1.0 / 24.0)))
        return u / log(x)
    if code == POWER_QUASI:
        if fabs(p0) < P_ZERO_RADIUS:
            return pow(x, p1)
        if p0 > 0.0:
            return pow((1.0 - p1) + p1 * pow(x, p0), 1.0 / p0)
        if x == 0.0:
            return 0.0 if p1 > 0.0 else 1.0
        return x * pow((1.0 - p1) * pow(x, -p0) + p1, 1.0 / p0)
    if code == AFFINE:
        return p0 + p1 * x
    return 0.0 / 0.0


def family_eval(int code, double p0, double p1, const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    if code < 0 or code > AFFINE:
        raise ValueError(f"unknown family code {code}")
    with nogil:
        for i in range(n):
            o[i] = _family(code, p0, p1, x[i])
    return out


def measure_pairs(double alpha, double beta, const double[::1] lam,
                  const double[::1] w, const double[::1] x, const double[::1] y):
    cdef Py_ssize_t i, k, n = x.shape[0], m = lam.shape[0]
    cdef double acc, xi, yi, den
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            xi = x[i]
            yi = y[i]
            acc = 0.0
            for k in range(m):
                den = lam[k] * xi + yi
                if den > 0.0:
                    acc = acc + w[k] * (lam[k] + 1.0) * xi * yi / den
            o[i] = alpha * xi + beta * yi + acc
    return out
