"""Dense linear algebra and multipartite index bookkeeping.

Tensor factors are ordered big-endian: subsystem 1 is the most significant
digit of the flattened index, ``i = sum_k i_k * prod_{l>k} d_l``. Subsystems
are numbered from 1 in every public signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-8


class InvalidStateError(ValueError):
    """Raised when a matrix violates one of the density-operator invariants."""


class InvalidPartitionError(ValueError):
    """Raised for empty, full, or out-of-range subsystem subsets."""


class NumericalIntegrityError(ArithmeticError):
    """Raised when a computed quantity leaves its mathematically allowed range."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated state of ``len(dims)`` subsystems.

    Small Hermiticity defects (at most 1e-10) are removed by symmetrizing.
    Anything worse, a trace off by more than 1e-10, or an eigenvalue below
    -1e-8 raises :class:`InvalidStateError`.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise InvalidStateError("dims: at least one subsystem is required")
        if any(d < 2 for d in dims):
            raise InvalidStateError(f"dims: every local dimension must be >= 2, got {dims}")
        m = np.asarray(self.matrix, dtype=complex)
        d = int(np.prod(dims))
        if m.shape != (d, d):
            raise InvalidStateError(f"shape: expected {(d, d)} for dims {dims}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("finite: matrix contains NaN or Inf entries")
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise InvalidStateError(f"hermitian: max |M - M^dagger| = {herm_err:.3e} exceeds {HERMITIAN_TOL:g}")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace: |Tr M - 1| = {abs(tr - 1.0):.3e} exceeds {TRACE_TOL:g}")
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < PSD_FLOOR:
            raise InvalidStateError(f"psd: minimum eigenvalue {lam_min:.3e} is below {PSD_FLOOR:g}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_ket(cls, psi, dims: Sequence[int]) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(tuple(dims), np.outer(psi, psi.conj()))

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True)
class Partition:
    """Nonempty proper subset ``gamma`` of ``{1, ..., n_parties}``."""

    gamma: tuple[int, ...]
    n_parties: int

    def __post_init__(self):
        g = tuple(sorted(int(k) for k in self.gamma))
        n = int(self.n_parties)
        if len(set(g)) != len(g):
            raise InvalidPartitionError(f"repeated subsystem index in {g}")
        if not g or len(g) >= n:
            raise InvalidPartitionError(f"partition must be a nonempty proper subset of 1..{n}, got {g}")
        if g[0] < 1 or g[-1] > n:
            raise InvalidPartitionError(f"subsystem index out of range 1..{n}: {g}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "n_parties", n)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.n_parties + 1) if k not in self.gamma)

    @property
    def label(self) -> str:
        """Concatenated digits for up to 9 parties ("12"), comma-separated beyond."""
        sep = "" if self.n_parties <= 9 else ","
        return sep.join(str(k) for k in self.gamma)

    @classmethod
    def from_label(cls, label: str, n_parties: int) -> "Partition":
        label = label.strip()
        if not label:
            raise InvalidPartitionError("empty partition label")
        try:
            if "," in label:
                idx = [int(tok) for tok in label.split(",")]
            elif n_parties <= 9:
                idx = [int(ch) for ch in label]
            else:
                idx = [int(label)]
        except ValueError:
            raise InvalidPartitionError(f"malformed partition label {label!r}") from None
        return cls(tuple(idx), n_parties)

    def local_dim(self, dims: Sequence[int]) -> int:
        return int(np.prod([dims[k - 1] for k in self.gamma]))

    def __str__(self):
        return self.label


def all_partitions(n_parties: int) -> list[Partition]:
    """Every nonempty proper subset, by size and then lexicographically.

    For three parties this is 1, 2, 3, 12, 13, 23.
    """
    if n_parties < 2:
        raise InvalidPartitionError("at least two parties are needed to form a partition")
    parties = range(1, n_parties + 1)
    return [Partition(c, n_parties) for size in range(1, n_parties) for c in combinations(parties, size)]


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns


def _as_matrix(a) -> np.ndarray:
    if isinstance(a, DensityMatrix):
        return a.matrix
    return np.asarray(a, dtype=complex)


def tensor_product(*factors) -> np.ndarray:
    """Kronecker product with the first factor most significant."""
    mats = [_as_matrix(f) for f in factors]
    return reduce(np.kron, mats)


def tensor_states(*states: DensityMatrix) -> DensityMatrix:
    dims = tuple(d for s in states for d in s.dims)
    return DensityMatrix(dims, tensor_product(*states))


def _keep_indices(keep, n: int) -> tuple[int, ...]:
    if isinstance(keep, Partition):
        if keep.n_parties != n:
            raise InvalidPartitionError(f"partition is for {keep.n_parties} parties, state has {n}")
        return keep.gamma
    if isinstance(keep, int):
        keep = (keep,)
    return Partition(tuple(keep), n).gamma


def reduce_matrix(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Partial trace of a raw square matrix; ``keep`` holds 1-based indices, any order."""
    dims = tuple(dims)
    n = len(dims)
    keep0 = sorted(k - 1 for k in keep)
    drop0 = [k for k in range(n) if k not in keep0]
    dk = int(np.prod([dims[k] for k in keep0])) if keep0 else 1
    dt = int(np.prod([dims[k] for k in drop0])) if drop0 else 1
    t = m.reshape(dims + dims)
    order = keep0 + drop0
    t = t.transpose(order + [n + k for k in order]).reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (kept in ascending order)."""
    idx = _keep_indices(keep, rho.n_parties)
    return DensityMatrix(tuple(rho.dims[k - 1] for k in idx), reduce_matrix(rho.matrix, rho.dims, idx))


def _check_perm(perm: Sequence[int], n: int) -> list[int]:
    p = [int(k) for k in perm]
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(perm)} is not a permutation of 1..{n}")
    return p


def permute_matrix(m: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: new factor ``k`` is old factor ``perm[k]``."""
    dims = tuple(dims)
    n = len(dims)
    p0 = [k - 1 for k in _check_perm(perm, n)]
    d = m.shape[0]
    t = m.reshape(dims + dims).transpose(p0 + [n + k for k in p0])
    return np.ascontiguousarray(t.reshape(d, d))


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for new, old in enumerate(perm, start=1):
        inv[old - 1] = new
    return inv


def permute_systems(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    p = _check_perm(perm, rho.n_parties)
    return DensityMatrix(tuple(rho.dims[k - 1] for k in p), permute_matrix(rho.matrix, rho.dims, p))


def hermitian_eig(m) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    The input is symmetrized as ``(M + M^dagger) / 2`` first.
    """
    m = _as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"hermitian_eig needs a square matrix, got shape {m.shape}")
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    return Spectrum(w[::-1].copy(), v[:, ::-1].copy())
