import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from kgdot import _sturm_py, kernels
from kgdot.oracle import sturm_sign_count

BACKENDS = [_sturm_py]
try:
    from kgdot import _sturm
    BACKENDS.append(_sturm)
except ImportError:  # extension not built
    pass

ids = [m.__name__.rsplit(".", 1)[-1] for m in BACKENDS]
finite = st.floats(-50, 50, allow_nan=False)


def _dense(d, off):
    return np.diag(d) + np.diag(off, 1) + np.diag(off, -1)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("mod", BACKENDS, ids=ids)
@settings(max_examples=40, deadline=None)
@given(d=arrays(float, 12, elements=finite), off=arrays(float, 11, elements=st.floats(0.05, 10)),
       x=finite)
def test_sturm_count_matches_dense(mod, d, off, x):
    ev = np.linalg.eigvalsh(_dense(d, off))
    if np.min(np.abs(ev - x)) < 1e-8:
        return
    assert mod.sturm_count(d, off * off, x) == int(np.sum(ev < x))


@pytest.mark.parametrize("mod", BACKENDS, ids=ids)
@settings(max_examples=25, deadline=None)
@given(d=arrays(float, 15, elements=finite), off=arrays(float, 14, elements=st.floats(0.05, 10)))
def test_kth_eigenvalue_matches_dense(mod, d, off):
    ev = np.linalg.eigvalsh(_dense(d, off))
    lo, hi = ev[0] - 100.0, ev[-1] + 100.0
    for k in (0, 7, 14):
        assert mod.kth_eigenvalue(d, off * off, k, lo, hi, 1e-12) == pytest.approx(ev[k], abs=1e-9)


@pytest.mark.parametrize("mod", BACKENDS, ids=ids)
@settings(max_examples=25, deadline=None)
@given(d=arrays(float, 20, elements=st.floats(5, 50)), off=arrays(float, 19, elements=st.floats(-2, 2)),
       rhs=arrays(float, 20, elements=finite))
def test_tridiag_solve(mod, d, off, rhs):
    y = np.asarray(mod.tridiag_solve(d, off, rhs))
    assert np.allclose(_dense(d, off) @ y, rhs, atol=1e-9 * (1 + np.max(np.abs(rhs))))


def test_tridiag_solve_needs_pivoting():
    d = np.array([1e-12, 1.0, 2.0, 3.0])
    off = np.array([1.0, 1.0, 1.0])
    rhs = np.array([1.0, 2.0, 3.0, 4.0])
    want = np.linalg.solve(_dense(d, off), rhs)
    for mod in BACKENDS:
        assert np.allclose(mod.tridiag_solve(d, off, rhs), want, rtol=1e-10)


def test_backends_agree_on_radial_operator():
    if len(BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    h = 12.0 / 2000
    r = h * np.arange(1, 2001)
    d = 2 / h**2 + r**2 + 2 / r**2
    e2 = np.full(1999, 1 / h**4)
    vals = [[m.kth_eigenvalue(d, e2, k, 0.0, 100.0, 1e-13) for k in range(4)] for m in BACKENDS]
    assert np.allclose(vals[0], vals[1], rtol=1e-13)


@settings(max_examples=30, deadline=None)
@given(d=arrays(float, 30, elements=finite), off=arrays(float, 29, elements=st.floats(0.1, 5)),
       x=finite)
def test_sign_count_reference_agrees(d, off, x):
    ev = np.linalg.eigvalsh(_dense(d, off))
    if np.min(np.abs(ev - x)) < 1e-8:
        return
    assert sturm_sign_count(d, off, x) == kernels.sturm_count(d, off * off, x)


def test_pure_python_fallback_end_to_end():
    import os
    import subprocess
    import sys

    code = ("from kgdot import BACKEND, ConfinementParams, RadialGrid, solve_oracle_state;"
            "s = solve_oracle_state(0, 0, ConfinementParams(1.0), 'exact', RadialGrid.default(8.0, 800));"
            "print(BACKEND, repr(s.energy), s.nodes)")
    env = dict(os.environ, KGDOT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, energy, nodes = out.stdout.split()
    assert backend == "python" and nodes == "0"
    assert float(energy) == pytest.approx(2.5670611, rel=1e-3)
