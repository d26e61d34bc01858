"""Pure numpy implementation of the hot kernels; used when the compiled module is unavailable."""

from __future__ import annotations

import numpy as np

from .optimize import SimplexResult, nelder_mead

NAME = "python"


def givens_basis(m: int, params) -> np.ndarray:
    u = np.eye(m, dtype=complex)
    k = 0
    for i in range(m):
        for j in range(i + 1, m):
            c, s = np.cos(params[k]), np.sin(params[k])
            ph = np.exp(1j * params[k + 1])
            ci, cj = u[:, i].copy(), u[:, j].copy()
            u[:, i] = c * ci + ph * s * cj
            u[:, j] = -np.conj(ph) * s * ci + c * cj
            k += 2
    return u


def _xlogx(w: np.ndarray) -> float:
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def gamma_objective(r: np.ndarray, params, offset: float) -> float:
    """Conditional entropy of the complement after measuring the leading factor, plus ``offset``.

    ``r`` is the state reshaped to ``(m, rest, m, rest)`` with the measured
    factor first. Returns ``sum_k S(block_k) - H(p) + offset`` where the
    blocks are the unnormalized post-measurement states.
    """
    m = r.shape[0]
    u = givens_basis(m, params)
    t = np.tensordot(r, u, axes=([2], [0]))
    blocks = np.einsum("ak,aijk->kij", u.conj(), t)
    p = np.real(np.einsum("kii->k", blocks))
    w = np.linalg.eigvalsh(blocks)
    return _xlogx(w.ravel()) - _xlogx(p) + offset


def minimize_gamma(r: np.ndarray, offset: float, x0, step: float, tol: float, max_iterations: int) -> SimplexResult:
    r = np.ascontiguousarray(r, dtype=complex)
    return nelder_mead(lambda x: gamma_objective(r, x, offset), x0, step, tol, max_iterations)
