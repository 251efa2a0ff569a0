"""Deterministic derivative-free 1-D minimization helpers.

Golden-section search plus a coarse-grid bracketing wrapper; used by the
curve fits so that identical inputs always produce bit-identical fitted
parameters, with no gradient code to maintain.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-9,
    is_log: bool = False,
) -> tuple[float, float]:
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min).

    With `is_log` the interval is searched in log space, which keeps the
    relative resolution constant for scale parameters.
    """
    if lo > hi:
        lo, hi = hi, lo
    if is_log:
        g = lambda u: f(math.exp(u))
        u, fu = golden_section(g, math.log(lo), math.log(hi), tol=tol)
        return math.exp(u), fu
    h = hi - lo
    if h <= tol:
        x = (lo + hi) / 2.0
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = lo + INV_PHI_SQ * h
    d = lo + INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n):
        if yc < yd:
            hi, d, yd = d, c, yc
            h *= INV_PHI
            c = lo + INV_PHI_SQ * h
            yc = f(c)
        else:
            lo, c, yc = c, d, yd
            h *= INV_PHI
            d = lo + INV_PHI * h
            yd = f(d)
    if yc < yd:
        return c, yc
    return d, yd


def grid_golden_min(
    f: Callable[[float], float],
    grid: Sequence[float],
    tol: float = 1e-9,
    is_log: bool = False,
) -> tuple[float, float, bool]:
    """Coarse scan over `grid`, then golden-section between the neighbors
    of the best grid point.

    Returns (argmin, min, at_edge); `at_edge` is True when the best grid
    value sits on the first or last point, i.e. the scan failed to
    bracket an interior optimum.
    """
    values = [f(x) for x in grid]
    m = min(range(len(grid)), key=values.__getitem__)
    if m == 0 or m == len(grid) - 1:
        return grid[m], values[m], True
    x, fx = golden_section(f, grid[m - 1], grid[m + 1], tol=tol, is_log=is_log)
    if values[m] < fx:  # grid point can beat the refined midpoint on flat objectives
        return grid[m], values[m], False
    return x, fx, False
