"""Benchmark states and seeded random ensembles.

Randomness comes from ``numpy.random.default_rng(seed)`` (the PCG64 bit
generator), so a given seed produces the same state on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .qcore import DensityMatrix, tensor_product

FAMILIES = ("bell", "ghz", "w", "werner", "product", "classical-diagonal", "random", "depolarized-ghz")
SWEEPABLE = {"werner": "z", "depolarized-ghz": "p"}


@dataclass(frozen=True)
class StateFamilySpec:
    """A named family plus its parameters.

    ``dims`` defaults per family (two qubits for bell/werner, ``n`` qubits
    otherwise). ``params`` may hold ``z``, ``p``, ``rank`` and ``seed``.
    """

    family: str
    n_parties: Optional[int] = None
    dims: Optional[tuple[int, ...]] = None
    params: dict = field(default_factory=dict)

    def resolved_dims(self) -> tuple[int, ...]:
        if self.dims is not None:
            dims = tuple(int(d) for d in self.dims)
            if self.n_parties is not None and len(dims) != self.n_parties:
                raise ValueError(f"dims {dims} disagree with n={self.n_parties}")
            return dims
        if self.family in ("bell", "werner"):
            return (2, 2)
        n = self.n_parties if self.n_parties is not None else (3 if self.family in ("ghz", "w", "depolarized-ghz") else 2)
        return (2,) * n

    def with_param(self, key: str, value) -> "StateFamilySpec":
        return StateFamilySpec(self.family, self.n_parties, self.dims, {**self.params, key: value})

    def describe(self) -> str:
        parts = [f"dims={'x'.join(map(str, self.resolved_dims()))}"]
        parts += [f"{k}={self.params[k]!r}" for k in sorted(self.params)]
        return f"{self.family}:{','.join(parts)}"


def parse_family(text: str, default_seed: Optional[int] = None) -> StateFamilySpec:
    """Parse ``name`` or ``name:key=value,...``.

    A bare token such as ``2x3`` is read as the local dimensions. Keys are
    ``n``, ``dims``, ``z``, ``p``, ``rank`` and ``seed``. ``default_seed``
    fills in ``seed`` for the random families when it is not given.
    """
    name, _, rest = text.strip().partition(":")
    name = name.strip().lower()
    if name not in FAMILIES:
        raise ValueError(f"unknown state family {name!r}; choose from {', '.join(FAMILIES)}")
    n = None
    dims = None
    params: dict = {}
    for tok in filter(None, (t.strip() for t in rest.split(","))):
        key, eq, val = tok.partition("=")
        if not eq:
            key, val = "dims", tok
        key = key.strip().lower()
        val = val.strip()
        try:
            if key == "n":
                n = int(val)
            elif key == "dims":
                dims = tuple(int(v) for v in val.lower().split("x"))
            elif key in ("z", "p"):
                params[key] = float(val)
            elif key in ("rank", "seed"):
                params[key] = int(val)
            else:
                raise ValueError(f"unknown parameter {key!r} for family {name!r}")
        except ValueError as exc:
            if "unknown parameter" in str(exc):
                raise
            raise ValueError(f"bad value {val!r} for parameter {key!r}") from None
    if default_seed is not None and name in ("product", "classical-diagonal", "random"):
        params.setdefault("seed", default_seed)
    return StateFamilySpec(name, n, dims, params)


def _ket(dims, amplitudes: dict) -> np.ndarray:
    psi = np.zeros(int(np.prod(dims)), dtype=complex)
    for idx, a in amplitudes.items():
        psi[np.ravel_multi_index(idx, dims)] = a
    return psi / np.linalg.norm(psi)


def ghz_ket(n: int) -> np.ndarray:
    return _ket((2,) * n, {(0,) * n: 1.0, (1,) * n: 1.0})


def w_ket(n: int) -> np.ndarray:
    return _ket((2,) * n, {tuple(int(k == j) for k in range(n)): 1.0 for j in range(n)})


def random_density(d: int, rank: Optional[int] = None, seed: int = 0) -> DensityMatrix:
    """Ginibre state ``G G^dagger / Tr(G G^dagger)`` with ``G`` a ``d x rank`` complex Gaussian.

    Real parts are drawn first, then imaginary parts, both standard normal.
    """
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix((d,), m / np.trace(m).real)


def random_state(dims, rank: Optional[int] = None, seed: int = 0) -> DensityMatrix:
    dims = tuple(dims)
    rho = random_density(int(np.prod(dims)), rank, seed)
    return DensityMatrix(dims, rho.matrix)


def random_product(dims, seed: int = 0) -> DensityMatrix:
    """Tensor product of independent full-rank Ginibre factors (seeds derived from ``seed``)."""
    children = np.random.SeedSequence(seed).spawn(len(dims))
    factors = [random_density(d, d, int(c.generate_state(1)[0])) for d, c in zip(dims, children)]
    return DensityMatrix(tuple(dims), tensor_product(*factors))


def random_classical(dims, seed: int = 0) -> DensityMatrix:
    """Diagonal state with Dirichlet(1, ..., 1) weights on the computational basis."""
    d = int(np.prod(dims))
    p = np.random.default_rng(seed).dirichlet(np.ones(d))
    return DensityMatrix(tuple(dims), np.diag(p).astype(complex))


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """``(1 - p) rho + p I / d``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing weight must lie in [0, 1], got {p}")
    return DensityMatrix(rho.dims, (1.0 - p) * rho.matrix + p * np.eye(rho.dim) / rho.dim)


def werner(z: float) -> DensityMatrix:
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"werner parameter z must lie in [0, 1], got {z}")
    singlet = _ket((2, 2), {(0, 1): 1.0, (1, 0): -1.0})
    return DensityMatrix((2, 2), z * np.outer(singlet, singlet.conj()) + (1.0 - z) * np.eye(4) / 4)


def make_state(spec: StateFamilySpec | str) -> DensityMatrix:
    if isinstance(spec, str):
        spec = parse_family(spec)
    fam = spec.family
    dims = spec.resolved_dims()
    p = spec.params
    seed = int(p.get("seed", 0))
    qubits_only = fam in ("bell", "ghz", "w", "werner", "depolarized-ghz")
    if qubits_only and any(d != 2 for d in dims):
        raise ValueError(f"family {fam!r} is defined for qubits only, got dims {dims}")
    if len(dims) < 1:
        raise ValueError("at least one subsystem is required")
    if fam == "bell":
        if len(dims) != 2:
            raise ValueError("bell is a two-qubit state")
        return DensityMatrix.from_ket(_ket(dims, {(0, 0): 1.0, (1, 1): 1.0}), dims)
    if fam == "werner":
        return werner(float(p.get("z", 1.0)))
    if fam == "ghz":
        return DensityMatrix.from_ket(ghz_ket(len(dims)), dims)
    if fam == "w":
        return DensityMatrix.from_ket(w_ket(len(dims)), dims)
    if fam == "depolarized-ghz":
        return depolarize(DensityMatrix.from_ket(ghz_ket(len(dims)), dims), float(p.get("p", 0.0)))
    if fam == "product":
        return random_product(dims, seed)
    if fam == "classical-diagonal":
        return random_classical(dims, seed)
    if fam == "random":
        rank = p.get("rank")
        return random_state(dims, rank, seed)
    raise ValueError(f"unknown state family {fam!r}")
