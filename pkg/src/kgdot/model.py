"""
Pseudo-dot confinement model.

Units are natural (hbar = c = 1): energies in fm^-1, lengths in fm and the
Schrodinger-form eigenvalue epsilon in fm^-2.  The quartic terms produced by
squaring the potential are handled in the dimensionless variable
``x = r**2 / r0**2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import BranchError, DomainError


class Scenario(str, enum.Enum):
    """Which Klein-Gordon reduction governs the spectrum."""

    EXACT = "exact"  # M = m0 + S(r), S = V
    APPROX = "approx"  # M = m0, S = 0, quartic Taylor-replaced

    @classmethod
    def parse(cls, value: "str | Scenario") -> "Scenario":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown scenario {value!r}; use 'exact' or 'approx'") from None


@dataclass(frozen=True)
class ConfinementParams:
    """Physical inputs of the pseudo-dot: depth De, radius r0, rest mass m0."""

    well_depth: float
    equilibrium_radius: float = 1.0
    rest_mass: float = 1.0

    def __post_init__(self):
        for name in ("well_depth", "equilibrium_radius", "rest_mass"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise DomainError(f"{name} must be strictly positive, got {v}")

    @property
    def De(self) -> float:
        return self.well_depth

    @property
    def r0(self) -> float:
        return self.equilibrium_radius

    @property
    def m0(self) -> float:
        return self.rest_mass


class TaylorCoefficients(NamedTuple):
    """U_a(x) = constant + x_coef * x + inv_coef / x."""

    constant: int
    x_coef: int
    inv_coef: int


TAYLOR = TaylorCoefficients(-6, 4, 4)


def taylor_coefficients_from_derivatives() -> TaylorCoefficients:
    """Rebuild the approximant by matching x^2 + 1/x^2 at x = 1.

    Value, slope and curvature of the quartic at x = 1 are (2, 0, 8); the
    approximant c + p x + q/x has (c + p + q, p - q, 2 q).  Solved in exact
    rational arithmetic.
    """
    one = Fraction(1)
    value = one**2 + one / one**2
    slope = 2 * one - 2 / one**3
    curve = 2 + 6 / one**4
    q = curve / 2
    p = slope + q
    c = value - p - q
    assert all(v.denominator == 1 for v in (c, p, q))
    return TaylorCoefficients(int(c), int(p), int(q))


def _positive(r, what="r"):
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0):
        raise DomainError(f"{what} must be > 0")
    return arr


def _out(value, like):
    return float(value) if np.isscalar(like) else value


def potential_v(r, params: ConfinementParams):
    """Pseudo-dot potential De (r/r0 - r0/r)^2."""
    rr = _positive(r)
    v = params.De * (rr / params.r0 - params.r0 / rr) ** 2
    return _out(v, r)


def quartic_u(x):
    """x^2 + 1/x^2, the quartic produced by squaring the potential."""
    xx = _positive(x, "x")
    return _out(xx**2 + 1.0 / xx**2, x)


def quartic_taylor(x, coeffs: TaylorCoefficients = TAYLOR):
    """Three-term approximant of x^2 + 1/x^2 about x = 1."""
    xx = _positive(x, "x")
    return _out(coeffs.constant + coeffs.x_coef * xx + coeffs.inv_coef / xx, x)


def effective_potential(r, E: float, params: ConfinementParams,
                        scenario: Scenario | str, taylor: bool = False):
    """Effective potential Phi(r) of the Schrodinger-form radial problem.

    Exact scenario: ``2 (E + m0) V(r)``, the coupling exactly as it appears
    once ``M = m0 + V`` is squared out of the Klein-Gordon operator.
    Constant-mass scenario: ``De (2E + 4De)(x + 1/x) - De^2 (x^2 + 1/x^2)``,
    with the quartic swapped for its Taylor approximant when ``taylor`` is
    set.  Only the Taylor mode is bounded below.
    """
    scenario = Scenario.parse(scenario)
    rr = _positive(r)
    De, r0, m0 = params.De, params.r0, params.m0
    if scenario is Scenario.EXACT:
        if E + m0 <= 0:
            raise BranchError(f"exact scenario requires E + m0 > 0, got E={E}")
        phi = 2.0 * (E + m0) * De * (rr / r0 - r0 / rr) ** 2
        return _out(phi, r)
    x = rr**2 / r0**2
    quartic = quartic_taylor(x) if taylor else quartic_u(x)
    phi = De * (2.0 * E + 4.0 * De) * (x + 1.0 / x) - De**2 * quartic
    return _out(phi, r)


def epsilon_map(E: float, params: ConfinementParams, scenario: Scenario | str) -> float:
    """Schrodinger-form eigenvalue epsilon(E) for the scenario."""
    scenario = Scenario.parse(scenario)
    m0, De = params.m0, params.De
    eps = E * E - m0 * m0
    if scenario is Scenario.APPROX:
        eps += 4.0 * E * De + 6.0 * De * De
    return eps
