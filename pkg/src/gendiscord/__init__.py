"""Genuine multipartite quantum discord for finite-dimensional N-partite states."""

from ._backend import BACKEND
from .qcore import (
    DensityMatrix,
    InvalidPartitionError,
    InvalidStateError,
    NumericalIntegrityError,
    Partition,
    all_partitions,
    hermitian_eig,
    partial_trace,
    permute_systems,
    tensor_product,
)
from .entropy import mutual_information, relative_entropy, shannon_entropy, von_neumann_entropy
from .measurement import (
    ProjectiveMeasurement,
    apply_channel_full,
    apply_channel_reduced,
    basis_from_params,
    measurement_statistics,
)

__version__ = "0.1.0"
