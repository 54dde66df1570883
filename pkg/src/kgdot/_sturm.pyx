# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for symmetric tridiagonal matrices.

Same call signatures as ``kgdot._sturm_py``; the pure-Python module is the
reference and the fallback when this extension is not built.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

cdef double PIVMIN = 1e-290


cdef Py_ssize_t _count(const double[::1] d, const double[::1] e2, double x) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, count = 0
    cdef double q = d[0] - x
    if fabs(q) < PIVMIN:
        q = -PIVMIN
    if q < 0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < PIVMIN:
            q = -PIVMIN
        if q < 0:
            count += 1
    return count


def sturm_count(double[::1] d, double[::1] e2, double x):
    """Number of eigenvalues strictly below ``x``."""
    return _count(d, e2, x)


def kth_eigenvalue(double[::1] d, double[::1] e2, Py_ssize_t k,
                   double lo, double hi, double abstol):
    """Bisect for the k-th smallest eigenvalue (0-based) inside [lo, hi].

    Requires count(lo) <= k < count(hi).
    """
    cdef double mid
    with nogil:
        while hi - lo > abstol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _count(d, e2, mid) > k:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def tridiag_solve(double[::1] diag, double[::1] off, double[::1] rhs):
    """Solve T y = rhs for symmetric tridiagonal T by LU with row interchanges."""
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double fact, temp
    cdef cnp.ndarray[double, ndim=1] dd = np.array(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] dl = np.zeros(max(n - 1, 1), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] du = np.zeros(max(n - 1, 1), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] b = np.array(rhs, dtype=np.float64)
    cdef double[::1] d_ = dd
    cdef double[::1] l_ = dl
    cdef double[::1] u_ = du
    cdef double[::1] b_ = b
    for i in range(n - 1):
        l_[i] = off[i]
        u_[i] = off[i]
    with nogil:
        for i in range(n - 1):
            if fabs(d_[i]) >= fabs(l_[i]):
                if fabs(d_[i]) < PIVMIN:
                    d_[i] = PIVMIN
                fact = l_[i] / d_[i]
                d_[i + 1] -= fact * u_[i]
                b_[i + 1] -= fact * b_[i]
                l_[i] = 0.0
            else:
                fact = d_[i] / l_[i]
                d_[i] = l_[i]
                temp = d_[i + 1]
                d_[i + 1] = u_[i] - fact * temp
                if i < n - 2:
                    l_[i] = u_[i + 1]
                    u_[i + 1] = -fact * l_[i]
                else:
                    l_[i] = 0.0
                u_[i] = temp
                temp = b_[i]
                b_[i] = b_[i + 1]
                b_[i + 1] = temp - fact * b_[i + 1]
        if fabs(d_[n - 1]) < PIVMIN:
            d_[n - 1] = PIVMIN
        b_[n - 1] /= d_[n - 1]
        if n > 1:
            b_[n - 2] = (b_[n - 2] - u_[n - 2] * b_[n - 1]) / d_[n - 2]
        i = n - 3
        while i >= 0:
            b_[i] = (b_[i] - u_[i] * b_[i + 1] - l_[i] * b_[i + 2]) / d_[i]
            i -= 1
    return b
