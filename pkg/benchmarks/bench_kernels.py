"""Compare the compiled and pure-Python tridiagonal kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--points 6000] [--repeat 3]

Both backends are imported directly, so the environment variable that picks
the runtime backend has no effect here.
"""

import argparse
import time

import numpy as np

from kgdot import _sturm_py
from kgdot.model import ConfinementParams, effective_potential
from kgdot.oracle import RadialGrid, _operator

try:
    from kgdot import _sturm
except ImportError:  # extension not built
    _sturm = None


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(mod, diag, off, repeat):
    e2 = off * off
    lo = float(diag.min()) - 2.0 * abs(off).max()
    hi = lo + 1e3
    t_count, _ = _best(lambda: [mod.sturm_count(diag, e2, x) for x in np.linspace(lo, hi, 50)], repeat)
    t_eig, vals = _best(lambda: [mod.kth_eigenvalue(diag, e2, k, lo, hi, 1e-12) for k in range(3)], repeat)
    rhs = np.ones_like(diag)
    t_solve, _ = _best(lambda: mod.tridiag_solve(diag - vals[0] + 1e-6, off, rhs), repeat)
    return {"50 sturm counts": t_count, "3 eigenvalues": t_eig, "1 shifted solve": t_solve}, vals


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=6000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    grid = RadialGrid.default(12.0, args.points)
    params = ConfinementParams(1.0)
    diag, off = _operator(grid, lambda r: effective_potential(r, 2.5, params, "exact"), 0)

    backends = [("python", _sturm_py)] + ([("cython", _sturm)] if _sturm else [])
    results = {}
    for name, mod in backends:
        results[name], vals = bench(mod, diag, off, args.repeat)
        print(f"{name:>7}: eigenvalues {np.round(vals, 10).tolist()}")
    print(f"\nJ = {args.points}, best of {args.repeat}")
    print(f"{'task':<18}" + "".join(f"{n:>12}" for n, _ in backends) + ("     speed-up" if _sturm else ""))
    for task in results["python"]:
        row = f"{task:<18}" + "".join(f"{results[n][task]:>11.4f}s" for n, _ in backends)
        if _sturm:
            row += f"{results['python'][task] / results['cython'][task]:>12.1f}x"
        print(row)
    if not _sturm:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
