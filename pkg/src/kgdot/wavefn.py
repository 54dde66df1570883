"""
Analytic radial eigenfunctions and densities.

For a solved level the reduced radial function is

    u(r) = N r^(Lambda+1) exp(-omega r^2 / 2) M(-n, Lambda + 3/2, omega r^2),

with N fixed numerically so that the integral of u^2 over r is one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import simpson, trapezoid

from .errors import DomainError, IntegrationError
from .model import ConfinementParams, Scenario, effective_potential, epsilon_map
from .oracle import RadialGrid, count_nodes
from .specfun import kummer_m, kummer_m_derivative
from .spectra import EigenResult

UNDERFLOW_ARG = 700.0
TAIL_RTOL = 1e-6


@dataclass(frozen=True)
class WavefunctionSpec:
    n: int
    ell: int
    energy: float
    lam: float
    omega: float
    params: ConfinementParams = field(repr=False)
    scenario: Scenario = Scenario.EXACT
    norm: float = 1.0

    @classmethod
    def from_result(cls, result: EigenResult, params: ConfinementParams,
                    scenario: Scenario | str) -> "WavefunctionSpec":
        return cls(result.n, result.ell, result.energy, result.effective_lambda,
                   result.omega, params, Scenario.parse(scenario))

    @property
    def kummer_b(self) -> float:
        return self.lam + 1.5


@dataclass
class RadialProfile:
    r: np.ndarray
    u: np.ndarray
    u2: np.ndarray
    phi: np.ndarray

    @property
    def nodes(self) -> int:
        return count_nodes(self.u)

    @property
    def peak_radius(self) -> float:
        return float(self.r[np.argmax(self.u2)])


def _envelope(r, spec):
    """N r^(Lambda+1) exp(-omega r^2/2), flushed to zero past the underflow limit."""
    y = spec.omega * r * r
    log_env = (spec.lam + 1.0) * np.log(r) - 0.5 * y
    return np.where(y > UNDERFLOW_ARG, 0.0, spec.norm * np.exp(np.minimum(log_env, UNDERFLOW_ARG)))


def radial_wavefunction(r, spec: WavefunctionSpec):
    """u(r) for the level described by ``spec``; r must be positive."""
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0):
        raise DomainError("r must be > 0")
    u = _envelope(rr, spec) * kummer_m(-spec.n, spec.kummer_b, spec.omega * rr * rr)
    return float(u) if np.isscalar(r) else u


def _samples(spec, grid: RadialGrid):
    r = np.concatenate(([0.0], grid.r))
    u = np.concatenate(([0.0], radial_wavefunction(grid.r, spec)))
    peak = np.max(np.abs(u))
    if peak == 0.0 or abs(u[-1]) > TAIL_RTOL * peak:
        raise IntegrationError(
            f"grid up to r={grid.r_max:g} fm does not cover the support of level "
            f"(n={spec.n}, l={spec.ell})"
        )
    return r, u


def norm_integrals(spec: WavefunctionSpec, grid: RadialGrid) -> tuple[float, float]:
    """Integral of u^2 by composite Simpson and by trapezoid."""
    r, u = _samples(spec, grid)
    return float(simpson(u * u, x=r)), float(trapezoid(u * u, x=r))


def normalize(spec: WavefunctionSpec, grid: RadialGrid) -> WavefunctionSpec:
    """Rescale ``norm`` so the Simpson integral of u^2 equals one."""
    total, _ = norm_integrals(spec, grid)
    return replace(spec, norm=spec.norm / np.sqrt(total))


def density_profile(spec: WavefunctionSpec, grid: RadialGrid) -> RadialProfile:
    """Samples of u, |u|^2 and Phi(r) at the level's energy (r = 0 included)."""
    r, u = _samples(spec, grid)
    phi = np.empty_like(r)
    phi[0] = np.inf
    phi[1:] = effective_potential(r[1:], spec.energy, spec.params, spec.scenario, taylor=True)
    return RadialProfile(r, u, u * u, phi)


def ode_residual(spec: WavefunctionSpec, r) -> np.ndarray:
    """Pointwise relative residual of u'' + [eps - Phi - l(l+1)/r^2] u = 0.

    u'' is assembled analytically from the envelope and the Kummer
    derivative recurrence; each point is scaled by its largest term.
    """
    r = np.asarray(r, dtype=float)
    a, b, w, lam = -spec.n, spec.kummer_b, spec.omega, spec.lam
    y = w * r * r
    env = _envelope(r, spec)
    m0 = kummer_m(a, b, y)
    m1 = kummer_m_derivative(a, b, y, 1)
    m2 = kummer_m_derivative(a, b, y, 2)
    g1 = (lam + 1.0) / r - w * r  # env' / env
    g2 = g1 * g1 - (lam + 1.0) / r**2 - w  # env'' / env
    dm = m1 * 2.0 * w * r
    d2m = m2 * 4.0 * w * w * r * r + m1 * 2.0 * w
    u = env * m0
    upp = env * (g2 * m0 + 2.0 * g1 * dm + d2m)
    eps = epsilon_map(spec.energy, spec.params, spec.scenario)
    phi = effective_potential(r, spec.energy, spec.params, spec.scenario, taylor=True)
    cent = spec.ell * (spec.ell + 1) / r**2
    terms = [upp, eps * u, phi * u, cent * u]
    scale = np.maximum.reduce([np.abs(t) for t in terms])
    scale = np.where(scale == 0.0, 1.0, scale)
    return np.abs(upp + (eps - phi - cent) * u) / scale
