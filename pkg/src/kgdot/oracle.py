"""
Finite-difference radial eigensolver used as an independent check.

The reduced radial function u(r) = r psi(r) is discretised with second-order
central differences on a uniform grid.  Dirichlet walls sit one spacing
outside each end of the grid, so the default grid (``r_min = h``) puts the
inner wall exactly at r = 0.  Eigenvalues come from Sturm-sequence bisection
and eigenvectors from shifted inverse iteration; both run on the kernels in
:mod:`kgdot.kernels`.

Because the effective potential depends on the energy being sought, the
energy is found self-consistently: the n-th eigenvalue of the frozen
problem is compared against the scenario's epsilon(E) and the difference is
driven to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import kernels
from ._roots import find_brackets, secant_in_bracket
from .errors import BranchError, ConvergenceError, GridError, NodeMismatch
from .model import ConfinementParams, Scenario, effective_potential, epsilon_map

DEFAULT_R_MAX = 12.0
DEFAULT_POINTS = 6000
TAIL_MARGIN = 50.0
MAX_TAIL_EXTENSIONS = 4
MAX_SWEEPS = 100


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid ``r_min, r_min + h, ..., r_max`` with J points."""

    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if self.points < 100:
            raise GridError(f"need at least 100 points, got {self.points}")
        if self.r_min < 1e-4:
            raise GridError(f"r_min must be >= 1e-4 fm, got {self.r_min}")
        if not self.r_max > self.r_min:
            raise GridError("r_max must exceed r_min")

    @classmethod
    def default(cls, r_max: float = DEFAULT_R_MAX, points: int = DEFAULT_POINTS) -> "RadialGrid":
        """Grid whose inner wall sits at r = 0 (``r_min = h = r_max / J``)."""
        return cls(r_max / points, r_max, points)

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    @property
    def r(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.points)

    def extended(self, factor: float = 1.5) -> "RadialGrid":
        """Longer grid with the same spacing and inner wall."""
        h = self.h
        points = int(math.ceil((self.r_max * factor - self.r_min) / h)) + 1
        return replace(self, r_max=self.r_min + (points - 1) * h, points=points)


@dataclass
class FdEigenOutput:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    nodes: list[int]
    grid: RadialGrid = field(repr=False)


def _operator(grid: RadialGrid, phi, ell: int):
    r = grid.r
    h = grid.h
    phi_vals = np.asarray(phi(r) if callable(phi) else phi, dtype=float)
    if phi_vals.shape != r.shape or not np.all(np.isfinite(phi_vals)):
        raise GridError("effective potential must be finite on every grid node")
    diag = 2.0 / h**2 + phi_vals + ell * (ell + 1) / r**2
    off = np.full(grid.points - 1, -1.0 / h**2)
    return np.ascontiguousarray(diag), np.ascontiguousarray(off)


def _bounds(diag, e2, k_needed):
    lo = float(diag.min()) - 2.0 * math.sqrt(float(e2.max()))
    span = max(1.0, abs(lo))
    hi = lo + span
    while kernels.sturm_count(diag, e2, hi) < k_needed:
        span *= 2.0
        hi = lo + span
    return lo, hi


def _eigenvalue(diag, e2, k, lo, hi):
    tol = 1e-14 * max(1.0, abs(lo), abs(hi))
    return kernels.kth_eigenvalue(diag, e2, k, lo, hi, tol)


def count_nodes(u, rel_floor: float = 1e-8) -> int:
    """Interior sign changes, ignoring samples below ``rel_floor * max|u|``."""
    u = np.asarray(u, dtype=float)
    keep = np.abs(u) > rel_floor * np.max(np.abs(u))
    s = np.sign(u[keep])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _fix_sign(u):
    big = np.nonzero(np.abs(u) > 1e-3 * np.max(np.abs(u)))[0]
    return -u if u[big[0]] < 0 else u


def inverse_iteration(diag, off, eigenvalue: float, h: float) -> np.ndarray:
    """Eigenvector for ``eigenvalue``, normalised so that h * sum(u**2) = 1."""
    shift = eigenvalue - 1e-10 * max(1.0, abs(eigenvalue))
    shifted = np.ascontiguousarray(diag - shift)
    x = np.ones_like(diag)
    x /= math.sqrt(h * float(x @ x))
    for _ in range(MAX_SWEEPS):
        y = kernels.tridiag_solve(shifted, off, x)
        y = _fix_sign(y / math.sqrt(h * float(y @ y)))
        if np.max(np.abs(y - x)) <= 1e-10 * np.max(np.abs(y)):
            return y
        x = y
    raise ConvergenceError(f"inverse iteration did not settle in {MAX_SWEEPS} sweeps")


def fd_eigen(grid: RadialGrid, phi: Callable | np.ndarray, ell: int, K: int,
             vectors: bool = True) -> FdEigenOutput:
    """Lowest K eigenpairs of -u'' + [phi(r) + l(l+1)/r^2] u = eps u."""
    if not 1 <= K <= 10:
        raise ValueError("K must be between 1 and 10")
    diag, off = _operator(grid, phi, ell)
    e2 = np.ascontiguousarray(off * off)
    lo, hi = _bounds(diag, e2, K)
    vals = np.array([_eigenvalue(diag, e2, k, lo, hi) for k in range(K)])
    if vectors:
        vecs = np.array([inverse_iteration(diag, off, v, grid.h) for v in vals])
        nodes = [count_nodes(v) for v in vecs]
    else:
        vecs = np.empty((0, grid.points))
        nodes = []
    return FdEigenOutput(vals, vecs, nodes, grid)


def fd_level(grid: RadialGrid, phi, ell: int, k: int) -> float:
    """Only the k-th eigenvalue (0-based) of the frozen radial operator."""
    diag, off = _operator(grid, phi, ell)
    e2 = np.ascontiguousarray(off * off)
    lo, hi = _bounds(diag, e2, k + 1)
    return _eigenvalue(diag, e2, k, lo, hi)


def frozen_potential(E: float, params: ConfinementParams, scenario: Scenario):
    """Phi(r) at fixed energy; Taylor mode for the constant-mass case."""
    return lambda r: effective_potential(r, E, params, scenario, taylor=True)


@dataclass
class OracleState:
    n: int
    ell: int
    energy: float
    epsilon: float
    nodes: int
    u: np.ndarray = field(repr=False)
    grid: RadialGrid = field(repr=False)


def _check_branch(E, params, scenario):
    if scenario is Scenario.EXACT and E <= -params.m0:
        raise BranchError("exact scenario requires E > -m0")
    if scenario is Scenario.APPROX and E <= 0:
        raise BranchError("constant-mass scenario requires E > 0")


def solve_oracle_state(n: int, ell: int, params: ConfinementParams,
                       scenario: Scenario | str, grid: RadialGrid | None = None,
                       xtol: float = 1e-8) -> OracleState:
    """Self-consistent FD energy for level (n, l) with its eigenvector.

    The tail condition Phi(r_max) >= eps + 50 is checked on the converged
    state; the grid is lengthened (same spacing) until it holds.
    """
    scenario = Scenario.parse(scenario)
    grid = grid or RadialGrid.default()
    for _ in range(MAX_TAIL_EXTENSIONS + 1):
        def mismatch(E, grid=grid):
            _check_branch(E, params, scenario)
            eps_fd = fd_level(grid, frozen_potential(E, params, scenario), ell, n)
            return eps_fd - epsilon_map(E, params, scenario)

        brackets, _ = find_brackets(mismatch, params, scenario, n, ell)
        lo, hi, f_lo, f_hi = brackets[0]
        E = float(secant_in_bracket(mismatch, lo, hi, f_lo, f_hi, xtol))
        eps = epsilon_map(E, params, scenario)
        phi = frozen_potential(E, params, scenario)
        if phi(np.array([grid.r_max]))[0] >= eps + TAIL_MARGIN:
            break
        grid = grid.extended()
    else:
        raise GridError("tail condition still unmet after extending the grid")
    out = fd_eigen(grid, phi, ell, n + 1)
    if out.nodes[n] != n:
        raise NodeMismatch(f"level {n} converged with {out.nodes[n]} nodes")
    return OracleState(n, ell, E, float(eps), out.nodes[n], out.vectors[n], grid)


def self_consistent_energy(n: int, ell: int, params: ConfinementParams,
                           scenario: Scenario | str,
                           grid: RadialGrid | None = None) -> float:
    """Energy E at which the FD level n matches epsilon(E)."""
    return solve_oracle_state(n, ell, params, scenario, grid).energy


def sturm_sign_count(diag, off, x: float) -> int:
    """Eigenvalues below ``x`` from sign changes of the leading-minor sequence.

    Slow reference path: the characteristic polynomials p_i(x) = det(T_i - x)
    are propagated with rescaling and their sign changes counted.
    """
    p_prev, p = 1.0, float(diag[0]) - x
    changes = int(p < 0)
    last_sign = -1 if p < 0 else 1
    for i in range(1, len(diag)):
        p_next = (diag[i] - x) * p - off[i - 1] ** 2 * p_prev
        scale = max(abs(p_next), abs(p), 1e-300)
        p_prev, p = p / scale, p_next / scale
        sign = last_sign if p == 0 else (-1 if p < 0 else 1)
        changes += sign != last_sign
        last_sign = sign
    return changes
