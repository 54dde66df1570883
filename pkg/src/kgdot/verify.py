"""
Laplace-domain structure behind the integer quantization.

The radial problem is written in the canonical form

    x u'' + beta0 u' + (beta1 - beta2^2 x - beta3^2 / x) u = 0,

the power ansatz ``u = x^(-|sigma|) f`` removes the inverse term, and the
Laplace transform of f obeys a first-order ODE whose solution is
``F(s) = (s - beta2)^a (s + beta2)^b``.  Real F near s = 0 forces the
exponent ``a`` to be an integer, which is the same condition as
``epsilon3 / epsilon2 = n`` in the confluent form of the equation.

The helpers here build these parameters from solved eigenstates and check
each identity numerically.  Every residual accepts a ``perturb`` offset so
callers can confirm that a check actually responds to a wrong input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError
from .model import ConfinementParams, Scenario
from .specfun import kummer_m, kummer_m_derivative
from .spectra import EigenResult, oscillator_terms


def sigma_roots(beta0: float, beta3: float) -> tuple[float, float]:
    """Both roots of s^2 + (1 - beta0) s - beta3^2 = 0, larger first."""
    half = (1.0 - beta0) / 2.0
    root = math.sqrt(half * half + beta3 * beta3)
    return -half + root, -half - root


def sigma_from_betas(beta0: float, beta3: float) -> float:
    """|sigma|, the root of the indicial quadratic that keeps f regular."""
    return sigma_roots(beta0, beta3)[0]


@dataclass(frozen=True)
class BetaParams:
    beta0: float
    beta1: float
    beta2: float
    beta3: float
    sigma_abs: float
    sigma0: float

    def __post_init__(self):
        if not self.beta2 > 0:
            raise DomainError(f"beta2 must be > 0, got {self.beta2}")
        if not self.sigma0 > self.sigma_abs:
            raise DomainError("admissible states need sigma0 > |sigma|")

    @classmethod
    def from_betas(cls, beta0, beta1, beta2, beta3) -> "BetaParams":
        """Fill in |sigma| and the regular-solution exponent sigma0 = 1 - beta."""
        s = sigma_from_betas(beta0, beta3)
        return cls(beta0, beta1, beta2, beta3, s, 1.0 - beta0 + 2.0 * s)


@dataclass(frozen=True)
class Case1Exponents:
    a: float
    b: float
    beta: float


@dataclass(frozen=True)
class Case2Params:
    eps1: float
    eps2: float
    eps3: float


def betas_from_state(result: EigenResult, params: ConfinementParams,
                     scenario: Scenario | str) -> BetaParams:
    """Canonical-form constants of a solved level.

    With ``x = omega r^2 / 2`` and ``u = x^(1/4) v`` the reduced radial
    equation becomes the canonical form with beta0 = beta2 = 1,
    beta1 = kappa / (2 omega) and beta3 = (Lambda + 1/2) / 2.
    """
    t = oscillator_terms(result.energy, params, scenario)
    return BetaParams.from_betas(1.0, t.kappa / (2.0 * t.omega), 1.0,
                                 (result.effective_lambda + 0.5) / 2.0)


def case1_exponents(p: BetaParams) -> Case1Exponents:
    if p.beta2 <= 0:
        raise DomainError("beta2 must be > 0")
    beta = p.beta0 - 2.0 * p.sigma_abs
    half = (2.0 - beta) / 2.0
    ratio = p.beta1 / (2.0 * p.beta2)
    return Case1Exponents(-half + ratio, -half - ratio, beta)


def beta1_for_level(n: int, beta: float, beta2: float) -> float:
    """Invert the Case-1 exponent: beta1 that makes a == n."""
    return 2.0 * beta2 * (n + (2.0 - beta) / 2.0)


def sdomain_ode_residual(p: BetaParams, s_samples, perturb: float = 0.0) -> float:
    """Max residual of (s^2 - beta2^2) F' + [(2 - beta) s - beta1] F = 0.

    F is taken as |s - beta2|^a |s + beta2|^b (a constant multiple of the
    complex-valued form on each interval between the poles) and F' through
    its logarithmic derivative.  Each sample is scaled by its larger term,
    floored at 1e-4 of the summed magnitudes of the pieces of both terms so
    that points where the two terms vanish together (a = b at s = 0) do not
    turn rounding noise into a residual.  ``perturb`` shifts the exponent a.
    """
    ex = case1_exponents(p)
    a, b, beta = ex.a + perturb, ex.b, ex.beta
    s = np.asarray(s_samples, dtype=float)
    b2 = p.beta2
    if np.any(np.isclose(s, b2, rtol=0, atol=1e-12)) or np.any(np.isclose(s, -b2, rtol=0, atol=1e-12)):
        raise DomainError("s samples must avoid the poles s = +-beta2")
    F = np.abs(s - b2) ** a * np.abs(s + b2) ** b
    dF = F * (a / (s - b2) + b / (s + b2))
    t1 = (s * s - b2 * b2) * dF
    t2 = ((2.0 - beta) * s - p.beta1) * F
    pieces = np.abs(F) * (np.abs(a * (s + b2)) + np.abs(b * (s - b2))
                          + np.abs((2.0 - beta) * s) + abs(p.beta1))
    scale = np.maximum(np.maximum(np.abs(t1), np.abs(t2)), 1e-4 * pieces)
    scale = np.maximum(scale, 1e-300)
    return float(np.max(np.abs(t1 + t2) / scale))


def sdomain_value_at_zero(p: BetaParams) -> dict:
    """Both readings of F(0), plus whether F(0) is real.

    Direct substitution gives (-1)^a beta2^(a+b); the alternative reading
    has beta2^((a+b)/2).  Either way (-1)^a is real only for integer a.
    """
    ex = case1_exponents(p)
    is_int = abs(ex.a - round(ex.a)) <= 1e-9
    sign = (-1.0) ** round(ex.a) if is_int else None
    return {
        "a": ex.a,
        "real": is_int,
        "direct": None if sign is None else sign * p.beta2 ** (ex.a + ex.b),
        "alternative": None if sign is None else sign * p.beta2 ** ((ex.a + ex.b) / 2.0),
    }


def case1_closed_form_residual(p: BetaParams, x, perturb: float = 0.0) -> float:
    """Residual of x f'' + beta f' + (beta1 - beta2^2 x) f = 0 for
    f = exp(-beta2 x) x^(1-beta) M(-a, 2-beta, 2 beta2 x), scaled pointwise."""
    ex = case1_exponents(p)
    a, beta, b2 = ex.a + perturb, ex.beta, p.beta2
    x = np.asarray(x, dtype=float)
    c = 2.0 - beta
    z = 2.0 * b2 * x
    m0 = kummer_m(-a, c, z)
    m1 = kummer_m_derivative(-a, c, z, 1) * 2.0 * b2
    m2 = kummer_m_derivative(-a, c, z, 2) * 4.0 * b2 * b2
    # f = env * M with env = exp(-beta2 x) x^(1-beta)
    g1 = (1.0 - beta) / x - b2
    g2 = g1 * g1 - (1.0 - beta) / x**2
    f = m0
    df = g1 * m0 + m1
    d2f = g2 * m0 + 2.0 * g1 * m1 + m2
    t1, t2, t3 = x * d2f, beta * df, (p.beta1 - b2 * b2 * x) * f
    scale = np.maximum.reduce([np.abs(t1), np.abs(t2), np.abs(t3)])
    scale = np.where(scale == 0.0, 1.0, scale)
    return float(np.max(np.abs(t1 + t2 + t3) / scale))


def case2_params(p: BetaParams) -> Case2Params:
    e1 = 2.0 * p.sigma_abs + p.beta0
    return Case2Params(e1, 2.0 * p.beta2, p.beta1 - e1)


def case2_quantization(p: BetaParams) -> float:
    """epsilon3 / epsilon2; an integer n for a quantized state."""
    c = case2_params(p)
    if c.eps2 == 0:
        raise DomainError("epsilon2 must be non-zero")
    return c.eps3 / c.eps2


def integer_distance(v: float) -> float:
    """Distance from v to the nearest non-negative integer."""
    return abs(v - max(0, round(v)))


@dataclass(frozen=True)
class TerminalValueRecord:
    x_limit: float
    s_limit: float
    difference: float
    passed: bool


def richardson_zero_limit(g: Callable[[float], float], s0: float = 0.5,
                          levels: int = 10) -> float:
    """Extrapolate g(s) to s -> 0+ from s0, s0/2, s0/4, ... (power series in s)."""
    row = [g(s0 / 2.0**k) for k in range(levels)]
    for j in range(1, levels):
        factor = 2.0**j
        row = [(factor * row[k + 1] - row[k]) / (factor - 1.0) for k in range(len(row) - 1)]
    return row[0]


def terminal_value_check(f: Callable[[float], float], F: Callable[[float], float],
                         x_far: float = 60.0, s0: float = 0.5, levels: int = 10,
                         tol: float = 1e-6) -> TerminalValueRecord:
    """Compare lim f(x), x -> inf, with lim s F(s), s -> 0+."""
    x_lim = float(f(x_far))
    s_lim = float(richardson_zero_limit(lambda s: s * F(s), s0, levels))
    diff = abs(x_lim - s_lim)
    return TerminalValueRecord(x_lim, s_lim, diff, diff <= tol)


def numeric_laplace(x_samples, f_samples) -> Callable[[float], float]:
    """Laplace transform of sampled data by Simpson quadrature on [x0, x_end]."""
    x = np.asarray(x_samples, dtype=float)
    y = np.asarray(f_samples, dtype=float)
    return lambda s: float(simpson(y * np.exp(-s * x), x=x))
