"""
Confluent hypergeometric (Kummer) function M(a, b, x) and rising factorials.

Two evaluation paths are provided. When ``a = -n`` the series terminates and
is evaluated as a degree-n polynomial in nested (Horner) form; otherwise the
power series is summed term by term until the relative term size drops below
``1e-15``.  Both paths accept scalars or numpy arrays for ``x``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NonConvergence, PoleError

SERIES_RTOL = 1e-15
SERIES_MAX_TERMS = 10_000


class KummerArgs(NamedTuple):
    """Parameters of M(a, b, x); unpacks straight into :func:`kummer_m`."""

    a: float
    b: float
    x: float


def pochhammer(a: float, j: int) -> float:
    """Rising factorial a (a+1) ... (a+j-1), computed by direct product."""
    if j < 0:
        raise ValueError("j must be non-negative")
    out = 1.0
    for i in range(j):
        out *= a + i
    return out


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def polynomial_degree(a: float) -> int | None:
    """Return n when ``a == -n`` for a non-negative integer n, else None."""
    if _is_nonpositive_integer(a):
        return int(-a)
    return None


def _check_b(b: float) -> None:
    if _is_nonpositive_integer(b):
        raise PoleError(f"Kummer M has a pole at b={b}")


def kummer_polynomial(n: int, b: float, x):
    """M(-n, b, x) by nested evaluation of the terminating sum.

    The nesting runs from the highest-order coefficient ratio inwards,
    ``1 + r_1 x (1 + r_2 x (1 + ...))`` with ``r_j = (j-1-n) / ((b+j-1) j)``.
    """
    _check_b(b)
    scalar = np.isscalar(x)
    x = float(x) if scalar else np.asarray(x, dtype=float)
    acc = 1.0
    for j in range(n, 0, -1):
        ratio = (j - 1 - n) / ((b + j - 1) * j)
        acc = 1.0 + ratio * x * acc
    if scalar:
        return float(acc)
    return np.broadcast_to(acc, np.shape(x)).astype(float)


def kummer_series(a: float, b: float, x):
    """Sum the defining series of M(a, b, x) without the polynomial shortcut."""
    _check_b(b)
    scalar = np.isscalar(x)
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    total = np.ones_like(xv)
    term = np.ones_like(xv)
    first = np.ones_like(xv)
    for j in range(1, SERIES_MAX_TERMS + 1):
        term = term * ((a + j - 1) / ((b + j - 1) * j)) * xv
        total = total + term
        # near-zero sums fall back to the first term as the scale
        scale = np.maximum(np.abs(total), SERIES_RTOL * first)
        if np.all(np.abs(term) <= SERIES_RTOL * scale):
            break
    else:
        raise NonConvergence(
            f"Kummer series for a={a}, b={b} did not converge in "
            f"{SERIES_MAX_TERMS} terms"
        )
    return float(total[0]) if scalar else total


def kummer_m(a: float, b: float, x):
    """Confluent hypergeometric function M(a, b, x).

    Parameters
    ----------
    a, b : float
        Series parameters; ``b`` must not be 0, -1, -2, ...
    x : float or ndarray
        Argument, ``x >= 0`` in every use within this package.

    Raises
    ------
    PoleError
        If ``b`` is a non-positive integer.
    NonConvergence
        If the general series needs more than 10,000 terms.
    """
    n = polynomial_degree(a)
    if n is not None:
        return kummer_polynomial(n, b, x)
    return kummer_series(a, b, x)


def kummer_m_derivative(a: float, b: float, x, order: int = 1):
    """d^k/dx^k M(a, b, x) via (a)_k / (b)_k * M(a+k, b+k, x)."""
    _check_b(b)
    if order == 0:
        return kummer_m(a, b, x)
    _check_b(b + order)
    coef = pochhammer(a, order) / pochhammer(b, order)
    if coef == 0.0:
        return 0.0 * np.asarray(x, dtype=float) if not np.isscalar(x) else 0.0
    return coef * kummer_m(a + order, b + order, x)


def kummer_ode_residual(a: float, b: float, x) -> np.ndarray:
    """Relative residual of x M'' + (b - x) M' - a M = 0.

    Each point is scaled by the largest of the three terms there.  For the
    terminating case the scale is floored at 1e-4 of the term-sum magnitude,
    since all three terms can vanish together (n = 1, x = b) and leave only
    rounding noise.
    """
    x = np.asarray(x, dtype=float)
    m0 = kummer_m(a, b, x)
    m1 = kummer_m_derivative(a, b, x, 1)
    m2 = kummer_m_derivative(a, b, x, 2)
    t1 = x * m2
    t2 = (b - x) * m1
    t3 = -a * m0
    scale = np.maximum.reduce([np.abs(t1), np.abs(t2), np.abs(t3)])
    n = polynomial_degree(a)
    if n is not None:
        mags = [abs(pochhammer(a, k) / pochhammer(b, k)) * kummer_term_magnitude(max(n - k, 0), b + k, x)
                for k in range(3)]
        floor = np.maximum.reduce([np.abs(x) * mags[2], np.abs(b - x) * mags[1], abs(a) * mags[0]])
        scale = np.maximum(scale, 1e-4 * floor)
    scale = np.where(scale == 0.0, 1.0, scale)
    return np.abs(t1 + t2 + t3) / scale


def count_positive_zeros(n: int, b: float, x_max: float | None = None,
                         points: int = 200_000) -> int:
    """Count sign changes of M(-n, b, x) on a fine grid over (0, x_max]."""
    if x_max is None:
        # all zeros of the associated Laguerre polynomial lie below this
        x_max = 4.0 * n + 2.0 * abs(b) + 20.0
    x = np.linspace(x_max / points, x_max, points)
    vals = kummer_polynomial(n, b, x)
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))



def kummer_term_magnitude(n: int, b: float, x):
    """Sum of |terms| of M(-n, b, x): the cancellation scale of the polynomial."""
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for j in range(1, n + 1):
        term = term * abs((j - 1 - n) / ((b + j - 1) * j)) * np.abs(x)
        total = total + term
    return total
