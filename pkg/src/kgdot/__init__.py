"""Klein-Gordon bound states of a spherical pseudo-dot.

Closed-form spectra for the variable-mass (exact) and constant-mass
(Taylor-approximated) scenarios, analytic radial densities, and a
finite-difference oracle that checks every closed-form energy.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BranchError,
    ConvergenceError,
    DomainError,
    GridError,
    IntegrationError,
    KGDotError,
    NodeMismatch,
    NoRootFound,
    NonConvergence,
    PoleError,
)
from .model import TAYLOR, ConfinementParams, Scenario, effective_potential, epsilon_map  # noqa: E402
from .oracle import RadialGrid, fd_eigen, self_consistent_energy, solve_oracle_state  # noqa: E402
from .spectra import EigenResult, QuantumNumbers, solve_energy, spectrum_table  # noqa: E402
from .kernels import BACKEND  # noqa: E402
