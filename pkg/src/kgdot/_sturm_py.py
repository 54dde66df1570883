"""Pure-Python/numpy kernels for symmetric tridiagonal matrices.

Reference implementation and fallback for the compiled ``_sturm`` extension.
Eigenvalue bisection is done as multisection: Sturm counts for a batch of
shifts are advanced together, vectorized over the shifts.
"""

import numpy as np

PIVMIN = 1e-290
_BATCH = 63


def _counts(d, e2, shifts):
    shifts = np.asarray(shifts, dtype=float)
    q = d[0] - shifts
    q[np.abs(q) < PIVMIN] = -PIVMIN
    count = (q < 0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = d[i] - shifts - e2[i - 1] / q
        q[np.abs(q) < PIVMIN] = -PIVMIN
        count += q < 0
    return count


def sturm_count(d, e2, x):
    """Number of eigenvalues strictly below ``x``."""
    return int(_counts(np.asarray(d, float), np.asarray(e2, float), [x])[0])


def kth_eigenvalue(d, e2, k, lo, hi, abstol):
    """Multisection search for the k-th smallest eigenvalue in [lo, hi]."""
    d = np.asarray(d, float)
    e2 = np.asarray(e2, float)
    while hi - lo > abstol:
        shifts = np.linspace(lo, hi, _BATCH + 2)[1:-1]
        counts = _counts(d, e2, shifts)
        above = np.nonzero(counts > k)[0]
        new_hi = shifts[above[0]] if above.size else hi
        below = np.nonzero(counts <= k)[0]
        new_lo = shifts[below[-1]] if below.size else lo
        if new_lo == lo and new_hi == hi:
            break
        lo, hi = new_lo, new_hi
    return 0.5 * (lo + hi)


def tridiag_solve(diag, off, rhs):
    """Solve T y = rhs for symmetric tridiagonal T by LU with row interchanges."""
    d = [float(v) for v in diag]
    n = len(d)
    dl = [float(v) for v in off] + [0.0]
    du = list(dl)
    b = [float(v) for v in rhs]
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if abs(d[i]) < PIVMIN:
                d[i] = PIVMIN
            fact = dl[i] / d[i]
            d[i + 1] -= fact * du[i]
            b[i + 1] -= fact * b[i]
            dl[i] = 0.0
        else:
            fact = d[i] / dl[i]
            d[i] = dl[i]
            temp = d[i + 1]
            d[i + 1] = du[i] - fact * temp
            if i < n - 2:
                dl[i] = du[i + 1]
                du[i + 1] = -fact * dl[i]
            else:
                dl[i] = 0.0
            du[i] = temp
            b[i], b[i + 1] = b[i + 1], b[i] - fact * b[i + 1]
    if abs(d[n - 1]) < PIVMIN:
        d[n - 1] = PIVMIN
    b[n - 1] /= d[n - 1]
    if n > 1:
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i]
    return np.array(b)
