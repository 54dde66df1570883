from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kgdot.errors import BranchError, DomainError
from kgdot.model import (TAYLOR, ConfinementParams, Scenario, effective_potential,
                         epsilon_map, potential_v, quartic_taylor, quartic_u,
                         taylor_coefficients_from_derivatives)


def _diff(x):
    """U - U_a in exact rationals."""
    return x**2 + 1 / x**2 - (TAYLOR.constant + TAYLOR.x_coef * x + TAYLOR.inv_coef / x)


def fd_derivatives_at_one(h=Fraction(1, 10_000)):
    """Central differences of orders 0..3 of U - U_a at x = 1, exact arithmetic."""
    f = {k: _diff(1 + k * h) for k in (-2, -1, 0, 1, 2)}
    return [
        f[0],
        (f[1] - f[-1]) / (2 * h),
        (f[1] - 2 * f[0] + f[-1]) / h**2,
        (f[2] - 2 * f[1] + 2 * f[-1] - f[-2]) / (2 * h**3),
    ]


# |U^(k)(1)| with a floor of one: the local scale of each order
LOCAL_SCALE = [2.0, 1.0, 8.0, 24.0]


def test_params_validation():
    with pytest.raises(DomainError):
        ConfinementParams(0.0)
    with pytest.raises(DomainError):
        ConfinementParams(1.0, -1.0)
    with pytest.raises(DomainError):
        ConfinementParams(1.0, 1.0, float("nan"))
    p = ConfinementParams(2.0, 1.5, 0.5)
    assert (p.De, p.r0, p.m0) == (2.0, 1.5, 0.5)


def test_scenario_parse():
    assert Scenario.parse("EXACT") is Scenario.EXACT
    assert Scenario.parse(Scenario.APPROX) is Scenario.APPROX
    with pytest.raises(DomainError):
        Scenario.parse("full")


def test_potential_examples(unit_params):
    assert potential_v(1.0, unit_params) == 0.0
    assert potential_v(2.0, unit_params) == pytest.approx(2.25, abs=1e-15)
    small = potential_v(np.array([1e-1, 1e-2, 1e-3]), unit_params)
    assert np.all(np.diff(small) > 0) and small[-1] > 1e5
    with pytest.raises(DomainError):
        potential_v(0.0, unit_params)


def test_quartic_examples():
    assert quartic_u(1.0) == 2.0
    assert quartic_u(1.1) == pytest.approx(1.21 + 1 / 1.21, rel=1e-15)
    assert quartic_u(1.1) == pytest.approx(2.036446, abs=1e-6)
    assert quartic_u(2.0) == 4.25
    assert quartic_taylor(1.0) == 2.0
    assert quartic_taylor(1.1) == pytest.approx(2.036364, abs=1e-6)
    assert abs(quartic_u(0.9) - quartic_taylor(0.9)) <= 2e-4


def test_taylor_coefficients_exact():
    derived = taylor_coefficients_from_derivatives()
    assert tuple(derived) == tuple(TAYLOR) == (-6, 4, 4)
    assert all(isinstance(c, int) for c in derived)


def test_taylor_agreement_through_third_order():
    for k, value in enumerate(fd_derivatives_at_one()):
        assert abs(float(value)) <= 1e-6 * LOCAL_SCALE[k], k


def test_taylor_error_is_fourth_order():
    # U - U_a = (x - 1)^4 / x^2 exactly
    x = np.linspace(0.5, 2.0, 301)
    assert np.allclose(quartic_u(x) - quartic_taylor(x), (x - 1) ** 4 / x**2, atol=1e-13)


def test_taylor_bound_holds_where_x_at_least_inv_sqrt2():
    # the 2(x-1)^4 bound is equivalent to x >= 1/sqrt(2); see the acceptance suite
    x = np.linspace(2**-0.5 + 1e-9, 1.3, 1000)
    assert np.all(np.abs(quartic_u(x) - quartic_taylor(x)) <= 2 * (x - 1) ** 4 + 1e-15)


def test_effective_potential_exact(unit_params):
    assert effective_potential(1.0, 2.0, unit_params, "exact") == 0.0
    r = np.linspace(0.2, 4, 200)
    phi = effective_potential(r, 2.0, unit_params, "exact")
    assert np.allclose(phi, 2 * 3.0 * potential_v(r, unit_params), rtol=1e-14)
    assert np.all(phi[np.abs(r - 1) > 1e-9] > 0)
    with pytest.raises(BranchError):
        effective_potential(1.0, -1.0, unit_params, "exact")


@pytest.mark.parametrize("De, E", [(10.0, 0.323), (3.0, 1.7), (0.5, 4.0)])
def test_effective_potential_approx_at_r0(De, E):
    p = ConfinementParams(De)
    want = 4 * E * De + 6 * De**2
    assert effective_potential(1.0, E, p, "approx") == pytest.approx(want, rel=1e-14)
    assert effective_potential(1.0, E, p, "approx", taylor=True) == pytest.approx(want, rel=1e-14)
    h = 1e-5
    slope = [(effective_potential(1 + h, E, p, "approx", taylor=t)
              - effective_potential(1 - h, E, p, "approx", taylor=t)) / (2 * h) for t in (False, True)]
    assert abs(slope[0] - slope[1]) <= 1e-6 * want


@settings(max_examples=50, deadline=None)
@given(De=st.floats(0.1, 30), E=st.floats(0.01, 50), r=st.floats(0.05, 5), r0=st.floats(0.3, 3))
def test_taylor_cancellation_identity(De, E, r, r0):
    p = ConfinementParams(De, r0)
    lhs = effective_potential(r, E, p, "approx", taylor=True) - 6 * De**2
    rhs = 2 * E * De * (r**2 / r0**2 + r0**2 / r**2)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(De=st.floats(0.1, 30), E=st.floats(-0.99, 50), r=st.floats(0.05, 5))
def test_exact_potential_nonnegative(De, E, r):
    assert effective_potential(r, E, ConfinementParams(De), "exact") >= 0.0


def test_epsilon_map_examples(unit_params):
    assert epsilon_map(1.0, unit_params, "exact") == 0.0
    p10 = ConfinementParams(10.0)
    assert epsilon_map(0.323, p10, "approx") == pytest.approx(612.024329, abs=1e-9)
    assert epsilon_map(0.0, p10, "approx") == 599.0
