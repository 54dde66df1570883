from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import trapezoid

from kgdot.errors import DomainError, IntegrationError
from kgdot.model import ConfinementParams
from kgdot.oracle import RadialGrid, count_nodes, solve_oracle_state
from kgdot.spectra import solve_energy
from kgdot.wavefn import (WavefunctionSpec, density_profile, norm_integrals, normalize,
                          ode_residual, radial_wavefunction)

STATES = [(n, l) for n in range(3) for l in range(3)]


def make_spec(n, ell, De=1.0, scenario="exact"):
    p = ConfinementParams(De)
    return WavefunctionSpec.from_result(solve_energy((n, ell), p, scenario), p, scenario)


@pytest.fixture(scope="module")
def ground():
    return normalize(make_spec(0, 0), RadialGrid.default())


def test_ground_state_shape(ground):
    r = np.linspace(0.05, 5, 50)
    u = radial_wavefunction(r, ground)
    env = ground.norm * r ** (ground.lam + 1) * np.exp(-ground.omega * r * r / 2)
    assert np.allclose(u, env, rtol=1e-13)


def test_rejects_non_positive_radius(ground):
    with pytest.raises(DomainError):
        radial_wavefunction(0.0, ground)


def test_underflow_flush(ground):
    far = np.sqrt(800 / ground.omega)
    assert radial_wavefunction(far, ground) == 0.0


def test_normalize_idempotent(default_grid, ground):
    again = normalize(ground, default_grid)
    assert abs(again.norm - ground.norm) / ground.norm <= 1e-12


def test_normalize_scale_invariant(default_grid):
    spec = make_spec(1, 1)
    a = normalize(spec, default_grid)
    b = normalize(replace(spec, norm=7.0), default_grid)
    assert b.norm == pytest.approx(a.norm, rel=1e-13)


@pytest.mark.parametrize("n, ell", STATES)
def test_quadratures_agree(default_grid, n, ell):
    simp, trap = norm_integrals(normalize(make_spec(n, ell), default_grid), default_grid)
    assert simp == pytest.approx(1.0, abs=1e-12)
    assert abs(simp - trap) <= 1e-7


@pytest.mark.parametrize("n, ell", STATES)
def test_density_profile_laws(default_grid, n, ell):
    prof = density_profile(normalize(make_spec(n, ell, De=2.0), default_grid), default_grid)
    assert prof.r[0] == 0.0 and prof.u[0] == 0.0
    assert abs(prof.u[-1]) <= 1e-6 * np.max(np.abs(prof.u))
    assert trapezoid(prof.u2, prof.r) == pytest.approx(1.0, abs=1e-6)
    assert prof.nodes == n


def test_ground_density_peak(default_grid, ground):
    peak = density_profile(ground, default_grid).peak_radius
    assert 0.8 <= peak <= 1.2


def test_short_grid_rejected():
    with pytest.raises(IntegrationError):
        norm_integrals(make_spec(2, 2), RadialGrid.default(1.5, 500))


def test_fd_eigenvector_matches_analytic(unit_params, default_grid, ground):
    state = solve_oracle_state(0, 0, unit_params, "exact")
    assert state.grid == default_grid
    analytic = radial_wavefunction(default_grid.r, ground) ** 2
    assert np.max(np.abs(state.u**2 - analytic)) <= 1e-3


@pytest.mark.parametrize("De", [1.0, 2.0, 3.0])
@pytest.mark.parametrize("n, ell", STATES)
def test_ode_residual_exact(De, n, ell):
    r = np.linspace(0.1, 6.0, 600)
    assert np.max(ode_residual(make_spec(n, ell, De), r)) <= 1e-8


@pytest.mark.parametrize("De", [10.0, 20.0, 30.0])
def test_ode_residual_approx(De):
    r = np.linspace(0.1, 6.0, 600)
    assert np.max(ode_residual(make_spec(0, 0, De, "approx"), r)) <= 1e-8


def test_ode_residual_detects_wrong_energy():
    spec = make_spec(1, 0)
    wrong = replace(spec, energy=spec.energy * (1 + 1e-3))
    assert np.max(ode_residual(wrong, np.linspace(0.1, 6.0, 600))) > 1e-5


@pytest.mark.parametrize("n", range(4))
def test_zero_count_on_fine_grid(n):
    spec = make_spec(n, 1)
    r = np.linspace(1e-3, 10, 20000)
    assert count_nodes(radial_wavefunction(r, spec)) == n
