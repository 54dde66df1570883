"""
Verification suite behind ``kgdot verify`` and the reproduction report.

Hard checks gate the exit code.  Informational entries (comparisons with the
published figure values) are recorded but never gate anything.  A non-zero
``perturb`` injects a small error into every check that has a natural knob,
which must make those checks fail.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .model import (
    TAYLOR,
    ConfinementParams,
    Scenario,
    effective_potential,
    taylor_coefficients_from_derivatives,
)
from .oracle import RadialGrid, fd_eigen, solve_oracle_state
from .specfun import (
    count_positive_zeros,
    kummer_m_derivative,
    kummer_polynomial,
    kummer_series,
    kummer_term_magnitude,
)
from .spectra import solve_energy, spectrum_table
from .verify import (
    beta1_for_level,
    betas_from_state,
    case1_closed_form_residual,
    case1_exponents,
    case2_quantization,
    integer_distance,
    sdomain_ode_residual,
    terminal_value_check,
)
from .wavefn import WavefunctionSpec, density_profile, normalize, ode_residual

PUBLISHED_EXACT_DE = (1.0, 2.0, 3.0)
PUBLISHED_APPROX_DE = (10.0, 20.0, 30.0)
PUBLISHED_EXACT_MAX = 5.84
PUBLISHED_APPROX_POINTS = {10.0: (613.894, 0.323), 20.0: (2414.731, 0.172), 30.0: (5414.188, 0.113)}

KUMMER_B = np.arange(0.5, 7.0, 0.5)
KUMMER_X = np.linspace(0.01, 20.0, 400)
CAVEAT = ("the closed-form energy equation used here is a reconstruction with no printed "
          "counterpart, so published figure values are compared, not asserted")


def _check(name, value, tol, detail="", kind="hard", passed=None):
    if passed is None:
        passed = bool(value <= tol)
    return {"name": name, "kind": kind, "passed": bool(passed),
            "value": float(value), "tolerance": float(tol), "detail": detail}


def kummer_checks(perturb: float = 0.0) -> list[dict]:
    worst_ode = worst_path = 0.0
    zeros_ok = True
    for n in range(11):
        a = -n
        for b in KUMMER_B:
            m0 = kummer_polynomial(n, b, KUMMER_X)
            m1 = kummer_m_derivative(a, b, KUMMER_X, 1)
            m2 = kummer_m_derivative(a, b, KUMMER_X, 2)
            terms = [KUMMER_X * m2, (b - KUMMER_X) * m1, -(a + perturb) * m0]
            scale = np.maximum.reduce([np.abs(t) for t in terms])
            scale[scale == 0.0] = 1.0
            worst_ode = max(worst_ode, float(np.max(np.abs(sum(terms)) / scale)))
            series = kummer_series(a, b + perturb, KUMMER_X)
            # alternating sums: compare on the scale of the summed |terms|
            magnitude = kummer_term_magnitude(n, b, KUMMER_X)
            worst_path = max(worst_path, float(np.max(np.abs(m0 - series) / np.abs(magnitude))))
            if count_positive_zeros(n, b, points=20_000) != n:
                zeros_ok = False
    return [
        _check("kummer_ode_residual", worst_ode, 1e-10, "n<=10, b in 0.5..6.5, x in (0,20]"),
        _check("kummer_path_agreement", worst_path, 1e-12, "polynomial vs series path"),
        _check("kummer_zero_count", 0.0 if zeros_ok else 1.0, 0.0, "M(-n,b,x) has n positive zeros"),
    ]


def taylor_checks() -> list[dict]:
    derived = taylor_coefficients_from_derivatives()
    params = ConfinementParams(5.0)
    r = np.linspace(0.3, 2.5, 221)
    full = effective_potential(1.0, 0.7, params, "approx")
    tay = effective_potential(1.0, 0.7, params, "approx", taylor=True)
    ident = effective_potential(r, 0.7, params, "approx", taylor=True) - 6 * 25.0
    expect = 2 * 0.7 * 5.0 * (r**2 + 1 / r**2)
    return [
        _check("taylor_coefficients", 0.0 if tuple(derived) == tuple(TAYLOR) == (-6, 4, 4) else 1.0,
               0.0, f"derived {tuple(derived)}"),
        _check("taylor_agreement_at_r0", abs(full - tay) / abs(full), 1e-12),
        _check("taylor_cancellation_identity", float(np.max(np.abs(ident - expect) / expect)), 1e-12),
    ]


def state_checks(cfg, perturb: float = 0.0) -> list[dict]:
    """Laplace-domain, wavefunction and oracle checks on the configured states."""
    scenario = Scenario.parse(cfg.scenario)
    s_grid = np.linspace(-0.9, 0.9, 37)
    x_grid = np.linspace(0.02, 12.0, 300)
    r_grid = np.linspace(0.1, 6.0, 400)
    worst = {k: 0.0 for k in ("sdomain", "case2", "consistency", "closed_form",
                              "algebra", "wave_ode", "oracle")}
    nodes_ok = True
    for De in cfg.De:
        params = cfg.params(De)
        for res in spectrum_table(cfg.nmax, cfg.lmax, params, scenario):
            p = betas_from_state(res, params, scenario)
            ex = case1_exponents(p)
            worst["algebra"] = max(worst["algebra"], abs(ex.a + ex.b - (ex.beta - 2.0)),
                                   abs(case1_exponents(replace(p, beta1=beta1_for_level(res.n, ex.beta, p.beta2))).a - res.n))
            worst["sdomain"] = max(worst["sdomain"], sdomain_ode_residual(p, s_grid, perturb))
            worst["closed_form"] = max(worst["closed_form"], case1_closed_form_residual(p, x_grid, perturb))
            ratio = case2_quantization(replace(p, beta1=p.beta1 + perturb))
            worst["case2"] = max(worst["case2"], integer_distance(ratio))
            worst["consistency"] = max(worst["consistency"], abs(ex.a - res.n), abs(ratio - res.n))
            spec = WavefunctionSpec.from_result(res, params, scenario)
            spec = replace(spec, energy=spec.energy * (1.0 + perturb))
            worst["wave_ode"] = max(worst["wave_ode"], float(np.max(ode_residual(spec, r_grid))))
            state = solve_oracle_state(res.n, res.ell, params, scenario, cfg.grid())
            e_closed = res.energy * (1.0 + perturb)
            worst["oracle"] = max(worst["oracle"], abs(e_closed - state.energy) / abs(e_closed))
            nodes_ok &= state.nodes == res.n
    return [
        _check("case1_exponent_algebra", worst["algebra"], 1e-12, "a+b=beta-2 and beta1 round trip"),
        _check("sdomain_ode_residual", worst["sdomain"], 1e-10),
        _check("case1_closed_form_residual", worst["closed_form"], 1e-10),
        _check("case2_integer_quantization", worst["case2"], 1e-9),
        _check("case1_case2_consistency", worst["consistency"], 1e-9),
        _check("wavefunction_ode_residual", worst["wave_ode"], 1e-8),
        _check("oracle_equivalence", worst["oracle"], 1e-4, "closed form vs self-consistent FD"),
        _check("oracle_node_count", 0.0 if nodes_ok else 1.0, 0.0),
    ]


def terminal_checks(perturb: float = 0.0) -> list[dict]:
    k = 1.0 + perturb
    one = terminal_value_check(lambda x: math.exp(-x), lambda s: k / (s + 1.0))
    two = terminal_value_check(lambda x: 1.0 - math.exp(-x), lambda s: k * (1.0 / s - 1.0 / (s + 1.0)))
    return [
        _check("terminal_value_exp_decay", one.difference, 1e-6),
        _check("terminal_value_saturation", two.difference, 1e-6),
    ]


def oracle_harmonic_check(cfg, perturb: float = 0.0) -> dict:
    grid = RadialGrid.default(12.0, cfg.grid_points)
    out = fd_eigen(grid, lambda r: (1.0 + perturb) * r * r, 0, 3)
    exact = np.array([3.0, 7.0, 11.0])
    return _check("oracle_harmonic_calibration", float(np.max(np.abs(out.eigenvalues - exact) / exact)),
                  1e-4, "plain oscillator, levels k<=2")


def published_comparisons() -> list[dict]:
    """Informational: approximate-scenario ground states against Fig. 6 values."""
    out = []
    for De, (eps_p, e_p) in sorted(PUBLISHED_APPROX_POINTS.items()):
        res = solve_energy((0, 0), ConfinementParams(De), Scenario.APPROX)
        out.append({
            "name": f"approx_ground_De{De:g}", "kind": "informational", "passed": None,
            "computed": {"E": res.energy, "epsilon": res.epsilon},
            "published": {"E": e_p, "epsilon": eps_p},
            "relative_deviation": {"E": abs(res.energy - e_p) / e_p,
                                   "epsilon": abs(res.epsilon - eps_p) / eps_p},
            "detail": CAVEAT,
        })
    return out


def run_checks(cfg) -> dict:
    p = cfg.perturb
    checks = (kummer_checks(p) + taylor_checks() + state_checks(cfg, p)
              + terminal_checks(p) + [oracle_harmonic_check(cfg, p)])
    return {
        "checks": checks,
        "informational": published_comparisons(),
        "all_hard_passed": all(c["passed"] for c in checks),
    }


def _monotone(values) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def reproduction_report(cfg) -> dict:
    """Trend and figure-value comparisons at the published parameter sets."""
    exact = {De: spectrum_table(2, 2, cfg.params(De), Scenario.EXACT) for De in PUBLISHED_EXACT_DE}
    e = {De: {(r.n, r.ell): r.energy for r in rows} for De, rows in exact.items()}
    inc_n = all(_monotone([e[De][(n, l)] for n in range(3)]) for De in e for l in range(3))
    inc_l = all(_monotone([e[De][(n, l)] for l in range(3)]) for De in e for n in range(3))
    inc_de = all(_monotone([e[De][k] for De in PUBLISHED_EXACT_DE]) for k in e[1.0])
    exact_max = max(e[3.0].values())
    exact_max_low = max(v for (n, l), v in e[3.0].items() if n <= 1 and l <= 1)

    approx = [solve_energy((0, 0), cfg.params(De), Scenario.APPROX) for De in PUBLISHED_APPROX_DE]
    approx_E = [r.energy for r in approx]
    dec_de = all(b < a for a, b in zip(approx_E, approx_E[1:]))

    params = cfg.params(1.0)
    ground = solve_energy((0, 0), params, Scenario.EXACT)
    grid = cfg.grid()
    peak = density_profile(normalize(WavefunctionSpec.from_result(ground, params, "exact"), grid),
                           grid).peak_radius

    within = abs(exact_max - PUBLISHED_EXACT_MAX) / PUBLISHED_EXACT_MAX <= 0.15
    trends = {
        "exact_increases_with_n": inc_n,
        "exact_increases_with_l": inc_l,
        "exact_increases_with_De": inc_de,
        "approx_ground_decreases_with_De": dec_de,
        "exact_ground_density_peak_fm": peak,
        "exact_ground_density_peak_in_0.8_1.2": 0.8 <= peak <= 1.2,
    }
    comparisons = {
        "exact_max_E_De3_n_l_le_2": exact_max,
        "exact_max_E_De3_n_l_le_1": exact_max_low,
        "published_exact_max": PUBLISHED_EXACT_MAX,
        "exact_max_within_15_percent": within,
        "approx": [
            {"De": De, "E": r.energy, "epsilon": r.epsilon, "branch_note": r.branch_note,
             "published_E": PUBLISHED_APPROX_POINTS[De][1], "published_epsilon": PUBLISHED_APPROX_POINTS[De][0]}
            for De, r in zip(PUBLISHED_APPROX_DE, approx)
        ],
        "caveat": CAVEAT,
    }
    summary = [
        f"exact: E increases with n={inc_n}, l={inc_l}, De={inc_de}",
        f"exact: ground-state density peak at r={peak:.3f} fm",
        f"exact: max E at De=3 (n,l<=2) = {exact_max:.4f} vs published ~{PUBLISHED_EXACT_MAX} "
        f"({'within' if within else 'outside'} 15%)",
    ]
    for De, r in zip(PUBLISHED_APPROX_DE, approx):
        eps_p, e_p = PUBLISHED_APPROX_POINTS[De]
        summary.append(f"approx De={De:g}: E={r.energy:.4f} eps={r.epsilon:.3f} "
                       f"(published E={e_p}, eps={eps_p})")
    summary.append(f"approx: ground E decreases with De = {dec_de}")
    return {"trends": trends, "comparisons": comparisons, "summary": summary}


