"""Derivative-free simplex descent (Nelder-Mead with dimension-adaptive coefficients)."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np


class SimplexResult(NamedTuple):
    value: float
    x: np.ndarray
    iterations: int
    evaluations: int


def adaptive_coefficients(n: int) -> tuple[float, float, float, float]:
    """Reflection, expansion, contraction and shrink factors (Gao & Han, 2012)."""
    return 1.0, 1.0 + 2.0 / n, 0.75 - 1.0 / (2.0 * n), 1.0 - 1.0 / n


def nelder_mead(
    func: Callable[[np.ndarray], float],
    x0,
    step: float = 0.3,
    tol: float = 1e-9,
    max_iterations: int = 2000,
) -> SimplexResult:
    """Minimize ``func`` from an axis-aligned simplex of edge ``step`` around ``x0``.

    Stops once the spread of objective values over the simplex drops below
    ``tol`` (checked after every iteration) or after ``max_iterations``.
    The compiled kernel mirrors this routine step for step.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    n = x0.size
    alpha, chi, psi, sigma = adaptive_coefficients(n)
    sim = np.empty((n + 1, n))
    sim[0] = x0
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += step
    fsim = np.array([func(x) for x in sim])
    nev = n + 1
    it = 0
    while it < max_iterations:
        order = np.argsort(fsim, kind="stable")
        sim, fsim = sim[order], fsim[order]
        it += 1
        xbar = sim[:-1].mean(axis=0)
        worst = sim[-1]
        xr = xbar + alpha * (xbar - worst)
        fr = func(xr)
        nev += 1
        shrink = False
        if fr < fsim[0]:
            xe = xbar + alpha * chi * (xbar - worst)
            fe = func(xe)
            nev += 1
            if fe < fr:
                sim[-1], fsim[-1] = xe, fe
            else:
                sim[-1], fsim[-1] = xr, fr
        elif fr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fr
        elif fr < fsim[-1]:
            xc = xbar + psi * alpha * (xbar - worst)
            fc = func(xc)
            nev += 1
            if fc <= fr:
                sim[-1], fsim[-1] = xc, fc
            else:
                shrink = True
        else:
            xcc = xbar - psi * (xbar - worst)
            fcc = func(xcc)
            nev += 1
            if fcc < fsim[-1]:
                sim[-1], fsim[-1] = xcc, fcc
            else:
                shrink = True
        if shrink:
            for j in range(1, n + 1):
                sim[j] = sim[0] + sigma * (sim[j] - sim[0])
                fsim[j] = func(sim[j])
            nev += n
        if fsim.max() - fsim.min() < tol:
            break
    best = int(np.argmin(fsim))
    return SimplexResult(float(fsim[best]), sim[best].copy(), it, nev)
