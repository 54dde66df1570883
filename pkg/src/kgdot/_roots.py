"""Bracketing and refinement helpers for one-dimensional energy equations."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import NoRootFound
from .model import ConfinementParams, Scenario

BRANCH_DELTA = 1e-9
SCAN_PER_DECADE = 10
MAX_EXTENSIONS = 4


def branch_grid(params: ConfinementParams, scenario: Scenario, e_max: float) -> np.ndarray:
    """Geometric energy grid over the admissible branch up to ``e_max``.

    Exact scenario: offsets from ``-m0``; constant-mass scenario: from 0.
    """
    origin = -params.m0 if scenario is Scenario.EXACT else 0.0
    top = e_max - origin
    decades = math.log10(top / BRANCH_DELTA)
    count = max(int(math.ceil(decades * SCAN_PER_DECADE)) + 1, 8)
    return origin + np.geomspace(BRANCH_DELTA, top, count)


def default_e_max(params: ConfinementParams, n: int, ell: int) -> float:
    return params.m0 + 20.0 * params.De + 10.0 * (n + ell + 1)


def scan_brackets(func: Callable[[float], float], grid) -> list[tuple[float, float, float, float]]:
    """All adjacent grid pairs where ``func`` changes sign (or hits zero)."""
    out = []
    e_prev, f_prev = grid[0], func(grid[0])
    for e in grid[1:]:
        f = func(e)
        if f_prev == 0.0:
            out.append((e_prev, e_prev, f_prev, f_prev))
        elif f_prev * f < 0:
            out.append((e_prev, e, f_prev, f))
        e_prev, f_prev = e, f
    if f_prev == 0.0:
        out.append((e_prev, e_prev, f_prev, f_prev))
    return out


def find_brackets(func, params, scenario, n, ell):
    """Scan the branch, doubling the upper limit until a sign change shows up."""
    e_max = default_e_max(params, n, ell)
    for _ in range(MAX_EXTENSIONS + 1):
        brackets = scan_brackets(func, branch_grid(params, scenario, e_max))
        if brackets:
            return brackets, e_max
        e_max *= 2.0
    raise NoRootFound(
        f"no sign change for (n={n}, l={ell}) up to E={e_max / 2.0:g} "
        f"after {MAX_EXTENSIONS} extensions"
    )


def bisect(func, lo, hi, f_lo, f_hi, xtol):
    """Plain bisection; returns the shrunken bracket."""
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid, mid, 0.0, 0.0
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo, hi, f_lo, f_hi


def secant_in_bracket(func, lo, hi, f_lo, f_hi, xtol, max_iter=200):
    """Illinois-modified regula falsi: secant steps that keep the bracket."""
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    side = 0
    x = lo
    for _ in range(max_iter):
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = func(x)
        if fx == 0.0:
            return x
        if (fx < 0) == (f_lo < 0):
            lo, f_lo = x, fx
            if side == -1:
                f_hi *= 0.5
            side = -1
        else:
            hi, f_hi = x, fx
            if side == 1:
                f_lo *= 0.5
            side = 1
        if hi - lo <= xtol:
            break
    return x
