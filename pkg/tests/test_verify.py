import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from kgdot.errors import DomainError
from kgdot.model import ConfinementParams
from kgdot.oracle import RadialGrid
from kgdot.spectra import solve_energy
from kgdot.verify import (BetaParams, beta1_for_level, betas_from_state, case1_closed_form_residual,
                          case1_exponents, case2_params, case2_quantization, integer_distance,
                          numeric_laplace, sdomain_ode_residual, sdomain_value_at_zero,
                          sigma_from_betas, sigma_roots, terminal_value_check)
from kgdot.wavefn import WavefunctionSpec, normalize, radial_wavefunction

betas = st.fixed_dictionaries({
    "beta0": st.floats(0.2, 3.0), "beta1": st.floats(-20, 20),
    "beta2": st.floats(0.2, 5.0), "beta3": st.floats(0.05, 5.0),
})


def _admissible(b):
    try:
        return BetaParams.from_betas(**b)
    except DomainError:
        return None


def solved(n, ell, De=1.0, scenario="exact"):
    p = ConfinementParams(De)
    r = solve_energy((n, ell), p, scenario)
    return r, p, betas_from_state(r, p, scenario)


STATES = [(n, l, De, sc) for n in range(3) for l in range(3) for De, sc in [(1.0, "exact"), (3.0, "exact"), (20.0, "approx")]]


@pytest.mark.parametrize("b0, b3, want", [(1.0, 2.0, 2.0), (1.0, 0.0, 0.0), (1.5, 1.0, 1.2807764064044151)])
def test_sigma_examples(b0, b3, want):
    assert sigma_from_betas(b0, b3) == pytest.approx(want, abs=1e-15)


def test_sigma_root_solves_quadratic():
    s = sigma_from_betas(1.5, 1.0)
    assert s * s + (1 - 1.5) * s - 1.0 == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(b0=st.floats(-3, 3), b3=st.floats(1e-3, 10))
def test_rejected_root_negative(b0, b3):
    keep, drop = sigma_roots(b0, b3)
    assert keep > 0 > drop


def test_beta_params_invariants():
    with pytest.raises(DomainError):
        BetaParams.from_betas(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        BetaParams.from_betas(2.0, 1.0, 1.0, 0.0)  # sigma0 == |sigma| == 1


def test_case1_unit_beta_example():
    # beta = 1 needs beta3 = 0, which sits on the sigma0 = |sigma| boundary,
    # so the exponent algebra is exercised on a bare record
    p = SimpleNamespace(beta0=1.0, beta1=0.8, beta2=0.8, beta3=0.0, sigma_abs=0.0, sigma0=0.0)
    ex = case1_exponents(p)
    assert ex.beta == 1.0 and ex.a == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=80, deadline=None)
@given(b=betas)
def test_case1_identities(b):
    p = _admissible(b)
    assume(p is not None)
    ex = case1_exponents(p)
    assert ex.a + ex.b == pytest.approx(ex.beta - 2, abs=1e-12)
    assert ex.a - ex.b == pytest.approx(p.beta1 / p.beta2, rel=1e-12, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(b=betas, n=st.integers(0, 10))
def test_case1_round_trip(b, n):
    p = _admissible(b)
    assume(p is not None)
    beta = p.beta0 - 2 * p.sigma_abs
    q = BetaParams.from_betas(p.beta0, beta1_for_level(n, beta, p.beta2), p.beta2, p.beta3)
    assert abs(case1_exponents(q).a - n) <= 1e-14 * max(1, n, abs(beta))


@settings(max_examples=80, deadline=None)
@given(b=betas)
def test_sdomain_residual(b):
    p = _admissible(b)
    assume(p is not None)
    s = np.linspace(-p.beta2 + 0.1, p.beta2 - 0.1, 41)
    assert sdomain_ode_residual(p, s) <= 1e-10


def test_sdomain_zero_exponent_case():
    p0 = BetaParams.from_betas(1.0, 0.0, 1.5, 0.75)
    beta = 1.0 - 2 * 0.75
    p = BetaParams.from_betas(1.0, beta1_for_level(0, beta, 1.5), 1.5, 0.75)
    assert case1_exponents(p).a == pytest.approx(0.0, abs=1e-15)
    s = np.linspace(-1.4, 1.4, 29)
    assert sdomain_ode_residual(p, s) <= 1e-10
    assert sdomain_ode_residual(p0, s) <= 1e-10


@pytest.mark.parametrize("n, ell", [(0, 0), (1, 1), (2, 2)])
def test_sdomain_perturbation_probe(n, ell):
    _, _, p = solved(n, ell)
    s = np.linspace(-0.9, 0.9, 37)
    assert sdomain_ode_residual(p, s, perturb=1e-3) >= 1e-4


def test_sdomain_poles_rejected():
    p = BetaParams.from_betas(1.0, 2.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        sdomain_ode_residual(p, [0.0, 1.0])


@pytest.mark.parametrize("n, ell, De, scenario", STATES)
def test_case1_case2_agree_on_solved_states(n, ell, De, scenario):
    _, _, p = solved(n, ell, De, scenario)
    a = case1_exponents(p).a
    ratio = case2_quantization(p)
    assert abs(a - n) <= 1e-9
    assert abs(ratio - n) <= 1e-9
    assert integer_distance(ratio) <= 1e-9


@pytest.mark.parametrize("n, ell", [(0, 0), (2, 1)])
def test_case1_closed_form(n, ell):
    _, _, p = solved(n, ell)
    x = np.linspace(0.02, 12.0, 300)
    assert case1_closed_form_residual(p, x) <= 1e-10
    assert case1_closed_form_residual(p, x, perturb=1e-3) >= 1e-6


def test_case2_linear_identity():
    base = BetaParams.from_betas(1.0, 0.0, 1.25, 0.5)
    c = case2_params(base)
    for k in range(6):
        q = BetaParams.from_betas(1.0, c.eps1 + c.eps2 * k, 1.25, 0.5)
        assert case2_quantization(q) == k


def test_case2_fuzz_generically_non_integer():
    rng = np.random.default_rng(20240611)
    for _ in range(200):
        p = BetaParams.from_betas(1.0, rng.uniform(2, 40), rng.uniform(0.3, 4), rng.uniform(0.1, 4))
        assert integer_distance(case2_quantization(p)) >= 1e-3


def test_value_at_zero_readings():
    _, _, p = solved(1, 0)
    rec = sdomain_value_at_zero(p)
    assert rec["real"] and rec["direct"] is not None and rec["alternative"] is not None
    off = BetaParams.from_betas(1.0, p.beta1 + 0.37, p.beta2, p.beta3)
    assert not sdomain_value_at_zero(off)["real"]


def test_terminal_value_standard_pairs():
    decay = terminal_value_check(lambda x: math.exp(-x), lambda s: 1 / (s + 1))
    rise = terminal_value_check(lambda x: 1 - math.exp(-x), lambda s: 1 / s - 1 / (s + 1))
    assert decay.passed and abs(decay.x_limit) <= 1e-6
    assert rise.passed and rise.s_limit == pytest.approx(1.0, abs=1e-6)


def test_terminal_value_detects_mismatch():
    rec = terminal_value_check(lambda x: 1 - math.exp(-x), lambda s: 1.001 / s - 1 / (s + 1))
    assert not rec.passed


def test_terminal_value_ground_state(unit_params):
    grid = RadialGrid.default()
    r = solve_energy((0, 0), unit_params, "exact")
    spec = normalize(WavefunctionSpec.from_result(r, unit_params, "exact"), grid)
    u = radial_wavefunction(grid.r, spec)
    F = numeric_laplace(grid.r, u)
    rec = terminal_value_check(lambda x: float(radial_wavefunction(x, spec)), F, x_far=grid.r_max)
    assert abs(rec.difference) <= 1e-4
