import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gendiscord.discord import gamma_discord_objective
from gendiscord.entropy import relative_entropy, von_neumann_entropy
from gendiscord.measurement import apply_channel_full, apply_channel_reduced, basis_from_params
from gendiscord.qcore import (
    DensityMatrix,
    Partition,
    all_partitions,
    hermitian_eig,
    inverse_permutation,
    partial_trace,
    permute_systems,
    tensor_states,
)
from gendiscord.states import random_state

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims_st = st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 2, 2), (2, 3, 2)])
PROPS = settings(max_examples=50, deadline=None)


@st.composite
def states(draw, dims=dims_st, full_rank=False):
    d = draw(dims)
    total = int(np.prod(d))
    rank = total if full_rank else draw(st.integers(1, total))
    return random_state(d, rank, draw(seeds))


@st.composite
def state_partition_basis(draw, full_rank=False):
    rho = draw(states(full_rank=full_rank))
    part = draw(st.sampled_from(all_partitions(rho.n_parties)))
    m = part.local_dim(rho.dims)
    x = np.random.default_rng(draw(seeds)).uniform(0, 2 * np.pi, m * (m - 1))
    return rho, part, basis_from_params(m, x)


@PROPS
@given(seeds, seeds)
def test_index_convention(s1, s2):
    a, b = random_state((2,), seed=s1), random_state((3,), seed=s2)
    assert np.max(np.abs(partial_trace(tensor_states(a, b), 1).matrix - a.matrix)) <= 1e-12


@PROPS
@given(states(), st.randoms(use_true_random=False))
def test_permute_round_trip(rho, rnd):
    perm = list(range(1, rho.n_parties + 1))
    rnd.shuffle(perm)
    back = permute_systems(permute_systems(rho, perm), inverse_permutation(perm))
    assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-14


@PROPS
@given(states())
def test_partial_trace_valid(rho):
    for part in all_partitions(rho.n_parties):
        red = partial_trace(rho, part).matrix
        assert abs(np.trace(red).real - 1) <= 1e-12
        assert np.max(np.abs(red - red.conj().T)) <= 1e-12
        assert np.linalg.eigvalsh(red).min() >= -1e-8


@PROPS
@given(states())
def test_spectrum_sums_to_one(rho):
    assert abs(hermitian_eig(rho).eigenvalues.sum() - 1) <= 1e-10


@PROPS
@given(states(dims=st.just((2, 2)), full_rank=True), states(dims=st.just((2, 2)), full_rank=True))
def test_monotonicity_under_partial_trace(sigma, gamma):
    assert relative_entropy(sigma, gamma) >= relative_entropy(partial_trace(sigma, 1), partial_trace(gamma, 1)) - 1e-9


@PROPS
@given(states(), states())
def test_klein(a, b):
    if a.dims != b.dims:
        b = random_state(a.dims, seed=1)
    assert relative_entropy(a, b) >= -1e-9
    assert abs(relative_entropy(a, a)) <= 1e-7


@PROPS
@given(state_partition_basis(full_rank=True))
def test_dephasing_identity(args):
    rho, part, meas = args
    deph = apply_channel_full(rho, part, meas)
    assert abs(relative_entropy(rho, deph) - (von_neumann_entropy(deph) - von_neumann_entropy(rho))) <= 1e-8


@PROPS
@given(state_partition_basis())
def test_channel_commutes_with_trace(args):
    rho, part, meas = args
    lhs = partial_trace(apply_channel_full(rho, part, meas), part).matrix
    rhs = apply_channel_reduced(partial_trace(rho, part), meas).matrix
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


@PROPS
@given(state_partition_basis())
def test_channel_output_valid_and_idempotent(args):
    rho, part, meas = args
    out = apply_channel_full(rho, part, meas)
    assert isinstance(out, DensityMatrix)
    assert np.max(np.abs(apply_channel_full(out, part, meas).matrix - out.matrix)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(state_partition_basis())
def test_objective_nonnegative_per_measurement(args):
    rho, part, meas = args
    assert gamma_discord_objective(rho, part, meas) >= -1e-9
