# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for kernel evaluation and summation."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs, NAN

cnp.import_array()

IMPLEMENTATION = "cython"


cdef double _SPLIT = 134217729.0  # 2**27 + 1


cdef inline void _sincos_mul(double a, double xh, double xl,
                             double* sv, double* cv) noexcept nogil:
    # a * xh is exact for integer a < 2**26, so libm's argument reduction
    # sees the true product; a * xl is folded in by angle addition.
    cdef double p = a * xh, q = a * xl
    cdef double sp = sin(p), cp = cos(p), sq = sin(q), cq = cos(q)
    sv[0] = sp * cq + cp * sq
    cv[0] = cp * cq - sp * sq


cdef double _ratio_at(const long long[:] num, const long long[:] den,
                      double x, double tol) noexcept nogil:
    cdef Py_ssize_t i, nn = num.shape[0], nd = den.shape[0]
    cdef Py_ssize_t n = nn if nn > nd else nd
    cdef int zeros = 0
    cdef double r = 1.0, a, v, c
    cdef double t = _SPLIT * x
    cdef double xh = t - (t - x)
    cdef double xl = x - xh
    for i in range(n):
        if i < nn:
            a = <double>num[i]
            _sincos_mul(a, xh, xl, &v, &c)
            if fabs(v) < tol:
                zeros += 1
                v = a * c
            r *= v
        if i < nd:
            a = <double>den[i]
            _sincos_mul(a, xh, xl, &v, &c)
            if fabs(v) < tol:
                zeros -= 1
                v = a * c
            r /= v
    if zeros > 0:
        return 0.0
    if zeros < 0:
        return NAN
    return r


def sine_ratio_product(num, den, x, double tol=1e-9):
    """``prod sin(a x) / prod sin(b x)`` with removable zeros replaced by their limit."""
    cdef const long long[:] nv = np.ascontiguousarray(num, dtype=np.int64)
    cdef const long long[:] dv = np.ascontiguousarray(den, dtype=np.int64)
    cdef const double[:] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t j, m = xv.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[:] ov = out
    with nogil:
        for j in range(m):
            ov[j] = _ratio_at(nv, dv, xv[j], tol)
    return out


def cosine_series(freqs, coeffs, x):
    """``sum_n c_n cos(f_n x)`` at every ``x`` with compensated summation."""
    cdef const long long[:] fv = np.ascontiguousarray(freqs, dtype=np.int64)
    cdef const double[:] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[:] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t i, j, nt = fv.shape[0], m = xv.shape[0]
    cdef double s, comp, t, term, xx, xh, xl, sn, cn
    out = np.empty(m, dtype=np.float64)
    cdef double[:] ov = out
    with nogil:
        for j in range(m):
            xx = xv[j]
            t = _SPLIT * xx
            xh = t - (t - xx)
            xl = xx - xh
            s = 0.0
            comp = 0.0
            for i in range(nt):
                _sincos_mul(<double>fv[i], xh, xl, &sn, &cn)
                term = cv[i] * cn
                t = s + term
                if fabs(s) >= fabs(term):
                    comp += (s - t) + term
                else:
                    comp += (term - t) + s
                s = t
            ov[j] = s + comp
    return out


cdef double _pairwise(const double[:] v, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t i, mid
    cdef double s
    if hi - lo <= 8:
        s = 0.0
        for i in range(lo, hi):
            s += v[i]
        return s
    mid = lo + (hi - lo) // 2
    return _pairwise(v, lo, mid) + _pairwise(v, mid, hi)


def pairwise_sum(values):
    """Deterministic pairwise summation (blocks of 8)."""
    cdef const double[:] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef double r
    with nogil:
        r = _pairwise(v, 0, v.shape[0])
    return r
