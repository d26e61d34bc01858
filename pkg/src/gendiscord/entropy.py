"""Entropy functionals, all in bits."""

from __future__ import annotations

import math

import numpy as np

from .qcore import DensityMatrix, InvalidStateError, partial_trace, tensor_states

NEG_EIG_CLIP = -1e-8
SUPPORT_EIG_CUTOFF = 1e-12
SUPPORT_WEIGHT_CUTOFF = 1e-10
PROB_SUM_TOL = 1e-9


def _xlog2x_sum(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def shannon_entropy(p) -> float:
    """Shannon entropy ``-sum p log2 p`` with ``0 log 0 = 0``.

    Entries down to -1e-12 are clipped to zero; the vector must sum to one
    within 1e-9.
    """
    p = np.asarray(p, dtype=float).ravel()
    if np.any(p < -1e-12):
        raise ValueError(f"probability vector has negative entry {p.min():.3e}")
    if abs(p.sum() - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"probabilities sum to {p.sum():.12f}, not 1")
    return _xlog2x_sum(np.clip(p, 0.0, None))


def spectrum_entropy(eigenvalues) -> float:
    """Entropy of a (possibly unnormalized) spectrum after clipping [-1e-8, 0) to zero."""
    w = np.asarray(eigenvalues, dtype=float)
    if w.size and w.min() < NEG_EIG_CLIP:
        raise InvalidStateError(f"psd: eigenvalue {w.min():.3e} is below {NEG_EIG_CLIP:g}")
    return _xlog2x_sum(np.clip(w, 0.0, None))


def von_neumann_entropy(rho) -> float:
    """``S(rho) = -Tr rho log2 rho``; accepts a :class:`DensityMatrix` or a raw matrix."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return spectrum_entropy(np.linalg.eigvalsh(0.5 * (m + m.conj().T)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """``S(rho || sigma) = Tr rho (log2 rho - log2 sigma)``.

    Returns ``math.inf`` when ``rho`` puts weight above 1e-10 on an
    eigenvector of ``sigma`` whose eigenvalue is below 1e-12.
    """
    if rho.dims != sigma.dims:
        raise ValueError(f"dimension mismatch: {rho.dims} vs {sigma.dims}")
    s, v = np.linalg.eigh(sigma.matrix)
    weights = np.real(np.einsum("ik,ij,jk->k", v.conj(), rho.matrix, v))
    small = s < SUPPORT_EIG_CUTOFF
    if np.any(weights[small] > SUPPORT_WEIGHT_CUTOFF):
        return math.inf
    cross = float(np.sum(weights[~small] * np.log2(s[~small])))
    return -von_neumann_entropy(rho) - cross


def mutual_information(rho: DensityMatrix) -> float:
    """``S(rho_A) + S(rho_B) - S(rho_AB)`` for a two-party state."""
    if rho.n_parties != 2:
        raise ValueError(f"mutual_information needs exactly 2 parties, got {rho.n_parties}")
    return (
        von_neumann_entropy(partial_trace(rho, 1))
        + von_neumann_entropy(partial_trace(rho, 2))
        - von_neumann_entropy(rho)
    )


def product_of_marginals(rho: DensityMatrix) -> DensityMatrix:
    return tensor_states(*(partial_trace(rho, k) for k in range(1, rho.n_parties + 1)))
