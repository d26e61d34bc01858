import numpy as np
import pytest
from numpy.testing import assert_allclose

from gendiscord.qcore import (
    DensityMatrix,
    InvalidPartitionError,
    InvalidStateError,
    Partition,
    all_partitions,
    hermitian_eig,
    partial_trace,
    permute_systems,
    tensor_product,
    tensor_states,
)
from gendiscord.states import random_state

from oracles import brute_force_partitions, kron_loops, permute_loops, ptrace_loops

KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])


class TestTensorProduct:
    def test_identity(self):
        assert_allclose(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_ordering(self):
        assert_allclose(tensor_product(KET0, KET1), np.diag([0, 1, 0, 0]))

    def test_against_loops(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
        assert_allclose(tensor_product(a, b), kron_loops(a, b), atol=1e-14)

    def test_trace_and_reduction(self):
        rho = DensityMatrix((2, 2), tensor_product(KET0, np.eye(2) / 2))
        assert abs(np.trace(rho.matrix) - 1) < 1e-15
        assert_allclose(partial_trace(rho, 1).matrix, KET0, atol=1e-15)


class TestPartialTrace:
    def test_product(self):
        a, b = random_state((2,), seed=1), random_state((3,), seed=2)
        rho = tensor_states(a, b)
        assert_allclose(partial_trace(rho, 1).matrix, a.matrix, atol=1e-12)
        assert_allclose(partial_trace(rho, 2).matrix, b.matrix, atol=1e-12)

    def test_bell(self, bell):
        assert_allclose(partial_trace(bell, 2).matrix, ptrace_loops(bell.matrix, [2, 2], [2]), atol=1e-15)
        assert_allclose(partial_trace(bell, 2).matrix, np.eye(2) / 2, atol=1e-15)

    def test_ghz(self, ghz3):
        red = partial_trace(ghz3, Partition((1, 2), 3))
        assert red.dims == (2, 2)
        assert_allclose(red.matrix, ptrace_loops(ghz3.matrix, [2, 2, 2], [1, 2]), atol=1e-15)
        assert_allclose(red.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    @pytest.mark.parametrize("keep", [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3)])
    def test_mixed_dims_against_loops(self, keep):
        rho = random_state((2, 3, 2), seed=11)
        got = partial_trace(rho, keep)
        assert_allclose(got.matrix, ptrace_loops(rho.matrix, [2, 3, 2], keep), atol=1e-13)
        assert abs(np.trace(got.matrix).real - 1) < 1e-12

    @pytest.mark.parametrize("keep", [(), (1, 2, 3), (0,), (4,), (1, 1)])
    def test_invalid(self, keep):
        rho = random_state((2, 2, 2), seed=3)
        with pytest.raises(InvalidPartitionError):
            partial_trace(rho, keep)


class TestPermute:
    def test_identity(self):
        rho = random_state((2, 3), seed=5)
        assert_allclose(permute_systems(rho, (1, 2)).matrix, rho.matrix)

    def test_swap_product(self):
        a, b = random_state((2,), seed=1), random_state((3,), seed=2)
        out = permute_systems(tensor_states(a, b), (2, 1))
        assert out.dims == (3, 2)
        assert_allclose(out.matrix, tensor_states(b, a).matrix, atol=1e-14)

    def test_against_loops(self):
        rho = random_state((2, 3, 2), seed=9)
        perm = (3, 1, 2)
        assert_allclose(permute_systems(rho, perm).matrix, permute_loops(rho.matrix, [2, 3, 2], perm), atol=1e-15)

    def test_round_trip(self):
        rho = random_state((2, 2, 2), seed=4)
        perm = (2, 3, 1)
        inv = (3, 1, 2)
        back = permute_systems(permute_systems(rho, perm), inv)
        assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-14

    @pytest.mark.parametrize("perm", [(1, 1), (1,), (0, 1), (1, 3)])
    def test_not_permutation(self, perm):
        with pytest.raises(ValueError):
            permute_systems(random_state((2, 2), seed=0), perm)


class TestHermitianEig:
    def test_diag(self):
        sp = hermitian_eig(np.diag([0.25, 0.75]))
        assert_allclose(sp.eigenvalues, [0.75, 0.25])

    def test_pauli_x(self):
        sp = hermitian_eig(np.array([[0, 1], [1, 0]]))
        assert_allclose(sp.eigenvalues, [1, -1], atol=1e-15)
        plus = np.array([1, 1]) / np.sqrt(2)
        minus = np.array([1, -1]) / np.sqrt(2)
        assert abs(abs(np.vdot(plus, sp.eigenvectors[:, 0])) - 1) < 1e-14
        assert abs(abs(np.vdot(minus, sp.eigenvectors[:, 1])) - 1) < 1e-14

    def test_random_reconstruction(self):
        rng = np.random.default_rng(7)
        g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = g + g.conj().T
        sp = hermitian_eig(h)
        v, w = sp.eigenvectors, sp.eigenvalues
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-9 * (1 + np.max(np.abs(h)))
        assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-10
        assert np.all(np.diff(w) <= 0)

    def test_non_square(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.zeros((2, 3)))

    def test_density_spectrum_sums_to_one(self):
        rho = random_state((2, 2, 2), seed=2)
        assert abs(hermitian_eig(rho).eigenvalues.sum() - 1) <= 1e-10


class TestDensityMatrixValidation:
    def test_symmetrizes_small_defect(self):
        m = np.diag([0.5, 0.5]).astype(complex)
        m[0, 1] = 1e-11
        rho = DensityMatrix((2,), m)
        assert_allclose(rho.matrix, rho.matrix.conj().T, atol=0)

    @pytest.mark.parametrize(
        "matrix, word",
        [
            (np.array([[0.5, 1e-6], [0.0, 0.5]]), "hermitian"),
            (np.diag([0.5, 0.6]), "trace"),
            (np.diag([1.1, -0.1]), "psd"),
            (np.diag([np.nan, 1.0]), "finite"),
            (np.eye(3) / 3, "shape"),
        ],
    )
    def test_rejects(self, matrix, word):
        with pytest.raises(InvalidStateError, match=word):
            DensityMatrix((2,), matrix)

    def test_dims_too_small(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix((1, 2), np.eye(2) / 2)

    def test_immutable(self):
        rho = random_state((2, 2), seed=0)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1


class TestPartition:
    def test_enumeration_three(self):
        labels = [p.label for p in all_partitions(3)]
        assert labels == ["1", "2", "3", "12", "13", "23"]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_enumeration_count(self, n):
        parts = all_partitions(n)
        assert len(parts) == 2**n - 2
        assert [p.gamma for p in parts] == brute_force_partitions(n)

    def test_complement(self):
        assert Partition((1,), 3).complement == (2, 3)
        assert Partition((3, 1), 3).gamma == (1, 3)

    @pytest.mark.parametrize("label, n, gamma", [("12", 3, (1, 2)), ("3", 3, (3,)), ("1,12", 12, (1, 12)), ("10", 11, (10,))])
    def test_labels(self, label, n, gamma):
        p = Partition.from_label(label, n)
        assert p.gamma == gamma
        assert p.label == label

    @pytest.mark.parametrize("label", ["", "123", "4", "1a", "11"])
    def test_bad_labels(self, label):
        with pytest.raises(InvalidPartitionError):
            Partition.from_label(label, 3)
