import numpy as np
import pytest

from fermi_modewise import (
    Bipartition,
    FockState,
    InvalidInputError,
    QuadraticHamiltonian,
    ResourceLimitError,
    build_majoranas,
    dense_ground_state,
    dense_hamiltonian,
    fcm_from_state,
    is_pure,
    j_blocks,
    modewise_decompose,
    pair_block,
    reconstruct_state,
    reduced_density,
    schmidt_entropy,
)
from fermi_modewise.fock import MODE_CAP_ENV, mode_cap
from fermi_modewise.verify import random_gaussian_state

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
QUAD_Y = np.array([[0, 1j], [-1j, 0]])  # i(b - b^dag) on a single mode


def squeezed_pair(theta):
    amps = np.zeros(4, dtype=complex)
    amps[0b00] = np.cos(theta)
    amps[0b11] = -np.sin(theta)
    return FockState(2, amps)


def test_single_mode_matrices():
    g = build_majoranas(1)
    assert np.array_equal(g[0], X)
    assert np.array_equal(g[1], QUAD_Y)
    g = build_majoranas(2)
    assert np.array_equal(g[2], np.kron(Z, X))
    assert np.array_equal(g[3], np.kron(Z, QUAD_Y))


def test_sparse_action_matches_dense_matrices():
    from fermi_modewise.fock import _majorana_action

    for n in (1, 2, 3):
        g = build_majoranas(n)
        perm, phase = _majorana_action(n)
        rng = np.random.default_rng(n)
        vec = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
        dense = g @ vec
        sparse = phase * vec[perm]
        assert np.max(np.abs(dense - sparse)) < 1e-14


def test_clifford_algebra_exhaustive():
    n = 4
    g = build_majoranas(n)
    eye = np.eye(2**n)
    for a in range(2 * n):
        assert np.max(np.abs(g[a] - g[a].conj().T)) < 1e-13
        for b in range(2 * n):
            anti = g[a] @ g[b] + g[b] @ g[a]
            target = 2.0 * eye if a == b else np.zeros_like(eye)
            assert np.max(np.abs(anti - target)) < 1e-13


def test_mode_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        build_majoranas(mode_cap() + 1)
    monkeypatch.setenv(MODE_CAP_ENV, "3")
    assert mode_cap() == 3
    with pytest.raises(ResourceLimitError):
        build_majoranas(4)
    monkeypatch.setenv(MODE_CAP_ENV, "not-a-number")
    with pytest.raises(InvalidInputError):
        mode_cap()


def test_dense_hamiltonian_number_operator():
    ham = QuadraticHamiltonian([[1.3]], [[0.0]])
    assert np.allclose(dense_hamiltonian(ham), np.diag([0.0, 1.3]))


def test_dense_hamiltonian_pairing_couples_00_and_11():
    delta = 0.7
    ham = QuadraticHamiltonian(np.zeros((2, 2)), [[0.0, delta], [-delta, 0.0]])
    dense = dense_hamiltonian(ham)
    coupled = np.zeros((4, 4), dtype=bool)
    coupled[0, 3] = coupled[3, 0] = True
    assert np.all(np.abs(dense[~coupled]) < 1e-14)
    assert abs(dense[0, 3]) > 0.1


def test_dense_ground_state_trivial_cases():
    n = 3
    up = QuadraticHamiltonian(np.diag([1.0, 2.0, 3.0]), np.zeros((n, n)))
    state, energy, degenerate = dense_ground_state(up)
    assert energy == pytest.approx(0.0, abs=1e-12)
    assert not degenerate
    assert abs(state.amplitudes[0]) == pytest.approx(1.0)

    down = QuadraticHamiltonian(-np.diag([1.0, 2.0, 3.0]), np.zeros((n, n)))
    state, energy, _ = dense_ground_state(down)
    assert energy == pytest.approx(-6.0)
    assert abs(state.amplitudes[-1]) == pytest.approx(1.0)


def test_fcm_of_basis_states():
    vacuum = FockState.from_occupations([0, 0, 0])
    assert np.allclose(fcm_from_state(vacuum).matrix, j_blocks(3), atol=1e-14)
    filled = FockState.from_occupations([1, 1, 1])
    assert np.allclose(fcm_from_state(filled).matrix, -j_blocks(3), atol=1e-14)


def test_fcm_of_squeezed_pair_reproduces_pair_block():
    theta = 0.6
    state = squeezed_pair(theta)
    expected = pair_block(np.cos(2 * theta), np.sin(2 * theta))
    assert np.max(np.abs(fcm_from_state(state).matrix - expected)) < 1e-12


def test_reduced_density_full_and_single_mode():
    theta = 0.4
    state = squeezed_pair(theta)
    rho_full = reduced_density(state, [0, 1])
    assert np.allclose(rho_full, np.outer(state.amplitudes, state.amplitudes.conj()))
    rho_one = reduced_density(state, [0])
    assert np.allclose(rho_one, np.diag([np.cos(theta) ** 2, np.sin(theta) ** 2]), atol=1e-14)


def test_reduced_density_validation():
    state = squeezed_pair(0.2)
    with pytest.raises(InvalidInputError):
        reduced_density(state, [0, 0])
    with pytest.raises(InvalidInputError):
        reduced_density(state, [4])


def test_schmidt_entropy_known_values():
    product = FockState.from_occupations([1, 0])
    assert schmidt_entropy(product, Bipartition((0,), (1,))) == pytest.approx(0.0, abs=1e-12)
    bell = squeezed_pair(np.pi / 4)
    assert schmidt_entropy(bell, Bipartition((0,), (1,))) == pytest.approx(1.0, abs=1e-12)


def test_schmidt_entropy_symmetric_under_side_swap():
    rng = np.random.default_rng(8)
    state, _ = random_gaussian_state(5, rng)
    part = Bipartition((0, 3), (1, 2, 4))
    swapped = Bipartition((1, 2, 4), (0, 3))
    assert schmidt_entropy(state, part) == pytest.approx(
        schmidt_entropy(state, swapped), abs=1e-10
    )


def test_reconstruct_vacuum_identity():
    vacuum = FockState.from_occupations([0, 0, 0])
    fcm = fcm_from_state(vacuum)
    decomp = modewise_decompose(fcm, Bipartition((0,), (1, 2)))
    _, fidelity = reconstruct_state(decomp, vacuum)
    assert fidelity == pytest.approx(1.0, abs=1e-10)


def test_reconstruct_single_pure_block():
    theta = 0.9 * np.pi / 4
    state = squeezed_pair(theta)
    decomp = modewise_decompose(fcm_from_state(state), Bipartition((0,), (1,)))
    rebuilt, fidelity = reconstruct_state(decomp, state)
    assert fidelity >= 1 - 1e-8
    assert rebuilt.n_modes == 2


def test_reconstruct_random_state_three_by_three():
    rng = np.random.default_rng(77)
    state, fcm = random_gaussian_state(6, rng)
    decomp = modewise_decompose(fcm, Bipartition((0, 1, 2), (3, 4, 5)))
    _, fidelity = reconstruct_state(decomp, state)
    assert fidelity >= 1 - 1e-7


def test_non_gaussian_states_fail_purity():
    # superposition of two disjoint pair excitations: all two-point functions
    # vanish, so the covariance matrix cannot square to -1
    amps = np.zeros(16, dtype=complex)
    amps[0b1100] = amps[0b0011] = 1 / np.sqrt(2)
    pair_sum = FockState(4, amps)
    assert not is_pure(fcm_from_state(pair_sum), 1e-6)

    # parity-mixed superposition is not Gaussian either
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = amps[0b111] = 1 / np.sqrt(2)
    cat = FockState(3, amps)
    assert not is_pure(fcm_from_state(cat), 1e-6)


def test_single_quasiparticle_superposition_is_gaussian():
    # the one-particle "W" superposition equals a rotated-mode excitation and
    # is a valid Gaussian state, so its covariance matrix is pure
    amps = np.zeros(8, dtype=complex)
    for i in range(3):
        amps[1 << i] = 1 / np.sqrt(3)
    w_state = FockState(3, amps)
    assert is_pure(fcm_from_state(w_state), 1e-9)


def test_fock_state_validation():
    with pytest.raises(InvalidInputError):
        FockState(2, np.ones(4))
    with pytest.raises(InvalidInputError):
        FockState(3, np.ones(4) / 2.0)
