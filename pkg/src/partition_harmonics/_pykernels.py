"""NumPy implementations of the compiled inner loops.

Used when the extension is not built or ``PH_PURE_PYTHON=1`` is set. Results
agree with the compiled versions to rounding.
"""

import numpy as np

IMPLEMENTATION = "python"


_SPLIT = 134217729.0  # 2**27 + 1


def sincos_mul(freqs, x):
    """``sin(a x)`` and ``cos(a x)`` for integer ``a`` without rounding ``a * x``.

    ``x`` is split so that ``a * x_hi`` is exact; the low part enters through
    angle addition.
    """
    t = _SPLIT * x
    xh = t - (t - x)
    xl = x - xh
    a = np.asarray(freqs, dtype=np.float64)
    p = np.multiply.outer(xh, a)
    q = np.multiply.outer(xl, a)
    sp, cp, sq, cq = np.sin(p), np.cos(p), np.sin(q), np.cos(q)
    return sp * cq + cp * sq, cp * cq - sp * sq


def _factors(freqs, x, tol):
    vals, cosv = sincos_mul(freqs, x)
    zero = np.abs(vals) < tol
    vals = np.where(zero, freqs * cosv, vals)
    return vals, zero.sum(axis=1)


def sine_ratio_product(num, den, x, tol=1e-9):
    num = np.asarray(num, dtype=np.int64)
    den = np.asarray(den, dtype=np.int64)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    nv, nz = _factors(num, x, tol)
    dv, dz = _factors(den, x, tol)
    k = min(len(num), len(den))
    # pair factors to keep intermediate magnitudes moderate
    r = np.prod(nv[:, :k] / dv[:, :k], axis=1)
    r = r * np.prod(nv[:, k:], axis=1) / np.prod(dv[:, k:], axis=1)
    r = np.where(nz > dz, 0.0, r)
    return np.where(nz < dz, np.nan, r)


def cosine_series(freqs, coeffs, x):
    freqs = np.asarray(freqs, dtype=np.float64)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if freqs.size == 0:
        return np.zeros_like(x)
    terms = sincos_mul(freqs, x)[1] * coeffs
    return np.array([_neumaier(row) for row in terms])


def _neumaier(row):
    s = 0.0
    comp = 0.0
    for term in row.tolist():
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
    return s + comp


def _pairwise(v, lo, hi):
    if hi - lo <= 8:
        s = 0.0
        for i in range(lo, hi):
            s += v[i]
        return s
    mid = lo + (hi - lo) // 2
    return _pairwise(v, lo, mid) + _pairwise(v, mid, hi)


def pairwise_sum(values):
    v = np.ascontiguousarray(values, dtype=np.float64).tolist()
    return _pairwise(v, 0, len(v))
