"""
Closed-form quantization of both scenarios.

Both Schrodinger-form problems reduce to a pseudoharmonic radial equation

    u'' + [kappa - omega^2 r^2 - Lambda (Lambda + 1) / r^2] u = 0,

whose normalizable solutions require the Kummer parameter to be a
non-positive integer, ``a = -n``.  That gives the implicit energy equation

    F(E) = kappa(E) - 2 omega(E) (2 n + Lambda(E) + 3/2) = 0,

which is solved by bracketing on a geometric grid, bisection and a secant
polish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from ._roots import bisect, find_brackets, secant_in_bracket
from .errors import BranchError, DomainError, KGDotError
from .model import ConfinementParams, Scenario, epsilon_map


class QuantumNumbers(NamedTuple):
    n: int
    ell: int

    def validate(self) -> "QuantumNumbers":
        if self.n < 0 or self.ell < 0:
            raise DomainError(f"quantum numbers must be non-negative, got {self}")
        return self


class OscillatorTerms(NamedTuple):
    """Pseudoharmonic form Phi = omega^2 r^2 + g / r^2 + offset.

    ``kappa = epsilon - offset`` is the constant left after the offset is
    absorbed.
    """

    kappa: float
    omega: float
    coupling: float
    offset: float


@dataclass
class EigenResult:
    n: int
    ell: int
    energy: float
    epsilon: float
    effective_lambda: float
    omega: float
    residual: float
    bracket: tuple[float, float]
    branch_note: str
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def lambda_eff(ell: int, g: float) -> float:
    """Lambda with Lambda (Lambda + 1) = l (l + 1) + g, positive branch."""
    disc = (ell + 0.5) ** 2 + g
    if disc < 0:
        raise DomainError(f"(l + 1/2)^2 + g must be >= 0, got {disc}")
    return -0.5 + math.sqrt(disc)


def oscillator_terms(E: float, params: ConfinementParams, scenario: Scenario | str) -> OscillatorTerms:
    """kappa, omega, g and the constant offset of Phi at energy E."""
    scenario = Scenario.parse(scenario)
    De, r0, m0 = params.De, params.r0, params.m0
    if scenario is Scenario.EXACT:
        if E <= -m0:
            raise BranchError(f"exact scenario requires E > -m0, got E={E}")
        strength = 2.0 * (E + m0) * De
        offset = -2.0 * strength
    else:
        if E <= 0:
            raise BranchError(f"constant-mass scenario requires E > 0, got E={E}")
        strength = 2.0 * E * De
        offset = 6.0 * De * De
    eps = epsilon_map(E, params, scenario)
    return OscillatorTerms(eps - offset, math.sqrt(strength) / r0, strength * r0 * r0, offset)


def quantization_residual(E: float, qn: QuantumNumbers | tuple[int, int],
                          params: ConfinementParams, scenario: Scenario | str) -> float:
    """F(E) = kappa - 2 omega (2n + Lambda + 3/2); zero at an eigenvalue."""
    n, ell = QuantumNumbers(*qn).validate()
    t = oscillator_terms(E, params, scenario)
    return t.kappa - 2.0 * t.omega * (2 * n + lambda_eff(ell, t.coupling) + 1.5)


def _branch_note(E: float, m0: float) -> str:
    if E > m0:
        return "E>m0"
    if E < m0:
        return "E<m0"
    return "E=m0"


def _result(E, bracket, n, ell, params, scenario) -> EigenResult:
    E = float(E)
    t = oscillator_terms(E, params, scenario)
    return EigenResult(
        n=n,
        ell=ell,
        energy=E,
        epsilon=epsilon_map(E, params, scenario),
        effective_lambda=lambda_eff(ell, t.coupling),
        omega=t.omega,
        residual=quantization_residual(E, (n, ell), params, scenario),
        bracket=(float(bracket[0]), float(bracket[1])),
        branch_note=_branch_note(E, params.m0),
    )


def solve_all_energies(qn, params: ConfinementParams, scenario: Scenario | str) -> list[EigenResult]:
    """Every root of F on the scanned branch, ascending."""
    n, ell = QuantumNumbers(*qn).validate()
    scenario = Scenario.parse(scenario)

    def func(E):
        return quantization_residual(E, (n, ell), params, scenario)

    brackets, _ = find_brackets(func, params, scenario, n, ell)
    results = []
    for lo, hi, f_lo, f_hi in brackets:
        lo, hi, f_lo, f_hi = bisect(func, lo, hi, f_lo, f_hi, 1e-12)
        E = secant_in_bracket(func, lo, hi, f_lo, f_hi, 4e-16 * max(1.0, abs(hi)))
        results.append(_result(E, (lo, hi), n, ell, params, scenario))
    return results


def solve_energy(qn, params: ConfinementParams, scenario: Scenario | str) -> EigenResult:
    """Lowest-energy root; the branch note records E relative to m0."""
    return solve_all_energies(qn, params, scenario)[0]


def spectrum_table(n_max: int, l_max: int, params: ConfinementParams,
                   scenario: Scenario | str) -> list[EigenResult]:
    """Lowest root for every (n, l) with n <= n_max, l <= l_max, ordered by (n, l).

    Failed entries are kept in place with ``error`` set.
    """
    if not (0 <= n_max <= 10 and 0 <= l_max <= 10):
        raise DomainError("n_max and l_max must lie in [0, 10]")
    rows = []
    for n in range(n_max + 1):
        for ell in range(l_max + 1):
            try:
                rows.append(solve_energy((n, ell), params, scenario))
            except KGDotError as exc:
                nan = float("nan")
                rows.append(EigenResult(n, ell, nan, nan, nan, nan, nan, (nan, nan),
                                        "failed", error=f"{type(exc).__name__}: {exc}"))
    return rows

