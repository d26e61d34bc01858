"""Rank-1 projective measurements on a subset of parties and their dephasing channels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .qcore import (
    DensityMatrix,
    Partition,
    inverse_permutation,
    permute_matrix,
)
from ._backend import kernels

ORTHONORMAL_TOL = 1e-10
ZERO_PROB = 1e-12


def n_params(m: int) -> int:
    return m * (m - 1)


def rotation_pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Complete orthonormal basis; column ``j`` is the measurement vector ``|b_j>``."""

    basis: np.ndarray

    def __post_init__(self):
        u = np.array(self.basis, dtype=complex, copy=True)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError(f"basis must be square, got shape {u.shape}")
        err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if err > ORTHONORMAL_TOL:
            raise ValueError(f"basis columns are not orthonormal (residual {err:.3e})")
        u.setflags(write=False)
        object.__setattr__(self, "basis", u)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def projectors(self) -> list[np.ndarray]:
        return [np.outer(b, b.conj()) for b in self.basis.T]

    @classmethod
    def computational(cls, m: int) -> "ProjectiveMeasurement":
        return cls(np.eye(m))


def basis_from_params(m: int, params) -> ProjectiveMeasurement:
    """Basis ``G_1 G_2 ... G_K`` built from one phased two-level rotation per pair ``i < j``.

    Pairs are taken in lexicographic order and ``params`` is laid out as
    ``(theta_1, phi_1, theta_2, phi_2, ...)``. Each rotation acts on columns
    ``i, j`` as ``[[cos t, -e^{-i p} sin t], [e^{i p} sin t, cos t]]``.
    """
    params = np.asarray(params, dtype=float).ravel()
    if params.size != n_params(m):
        raise ValueError(f"expected {n_params(m)} parameters for m={m}, got {params.size}")
    return ProjectiveMeasurement(kernels.givens_basis(m, params))


def _split(rho: DensityMatrix, gamma: Partition, meas: ProjectiveMeasurement):
    if gamma.n_parties != rho.n_parties:
        raise ValueError(f"partition is for {gamma.n_parties} parties, state has {rho.n_parties}")
    m = gamma.local_dim(rho.dims)
    if meas.dim != m:
        raise ValueError(f"measurement dimension {meas.dim} does not match subsystem {gamma.label} of dimension {m}")
    perm = list(gamma.gamma) + list(gamma.complement)
    front = permute_matrix(rho.matrix, rho.dims, perm)
    return perm, m, rho.dim // m, front


def dephase_front(front: np.ndarray, u: np.ndarray, m: int) -> np.ndarray:
    """Dephase the leading ``m``-dimensional factor of ``front`` in the basis ``u``."""
    rest = front.shape[0] // m
    big = np.kron(u, np.eye(rest))
    t = big.conj().T @ front @ big
    mask = np.kron(np.eye(m), np.ones((rest, rest)))
    return big @ (t * mask) @ big.conj().T


def apply_channel_full(rho: DensityMatrix, gamma: Partition, meas: ProjectiveMeasurement) -> DensityMatrix:
    """``sum_k (Pi_k on gamma, identity elsewhere) rho (same)``, returned in the original factor order."""
    perm, m, _, front = _split(rho, gamma, meas)
    out = dephase_front(front, meas.basis, m)
    dims_front = tuple(rho.dims[k - 1] for k in perm)
    back = permute_matrix(out, dims_front, inverse_permutation(perm))
    return DensityMatrix(rho.dims, back)


def apply_channel_reduced(rho_gamma: DensityMatrix, meas: ProjectiveMeasurement) -> DensityMatrix:
    """``sum_k Pi_k rho_gamma Pi_k``; the result is diagonal in the measurement basis."""
    if rho_gamma.dim != meas.dim:
        raise ValueError(f"measurement dimension {meas.dim} does not match state dimension {rho_gamma.dim}")
    u = meas.basis
    p = np.real(np.einsum("ik,ij,jk->k", u.conj(), rho_gamma.matrix, u))
    return DensityMatrix(rho_gamma.dims, (u * p) @ u.conj().T)


class Outcome(NamedTuple):
    probability: float
    conditional: Optional[DensityMatrix]  # None when the outcome has probability <= 1e-12


def measurement_statistics(rho: DensityMatrix, gamma: Partition, meas: ProjectiveMeasurement) -> list[Outcome]:
    """Outcome probabilities and the normalized post-measurement states of the complement."""
    perm, m, rest, front = _split(rho, gamma, meas)
    r = front.reshape(m, rest, m, rest)
    blocks = np.einsum("ak,aibj,bk->kij", meas.basis.conj(), r, meas.basis)
    rest_dims = tuple(rho.dims[k - 1] for k in gamma.complement)
    out = []
    for blk in blocks:
        p = float(np.trace(blk).real)
        if p > ZERO_PROB:
            out.append(Outcome(p, DensityMatrix(rest_dims, blk / p)))
        else:
            out.append(Outcome(max(p, 0.0), None))
    total = sum(o.probability for o in out)
    if abs(total - 1.0) > 1e-10:
        raise ArithmeticError(f"outcome probabilities sum to {total!r}")
    return out
