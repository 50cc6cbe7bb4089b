#!/usr/bin/env python3
"""
Test script for the Hermitian core: density matrices, spectral decomposition,
partial traces, Schmidt forms, seeded sampling and state files.
"""
import sys
import tempfile
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.correlations.observable import Observable
from src.errors import (
    DimensionMismatchError, DomainError, NonHermitianError, NonPositiveError, NotNormalizedError,
    TraceMismatchError,
)
from src.hermitian_core.operators import SIGMA_X, SIGMA_Z, hermitian_basis, embed_operator, pauli
from src.hermitian_core.sampling import (
    RngStream, haar_unitary, measure_label, parse_measure, random_density_hs, random_pure_state,
)
from src.hermitian_core.spectral import spectral_decompose
from src.hermitian_core.state_io import load_observable, load_state, save_observable, save_state
from src.hermitian_core.states import (
    bell_state, embed_local, maximally_mixed, partial_trace, pure_density, schmidt_decompose,
    tensor_states, validate_density,
)

FIXTURES = Path(__file__).parent.parent / 'fixtures'


def _expect(error, func, *args):
    try:
        func(*args)
    except error:
        return
    raise AssertionError(f"{func.__name__} should raise {error.__name__}")


def test_validate_density():
    """Test density matrix validation and its error cases."""
    print("Testing validate_density...")

    rho = validate_density(np.eye(4) / 4, [2, 2])
    assert rho.dims == (2, 2), "Dims should be tagged"
    assert abs(rho.purity() - 0.25) < 1e-12, "Maximally mixed purity should be 1/4"

    bell = pure_density(bell_state('phi+'), [2, 2])
    assert bell.rank() == 1, "Bell projector should have rank 1"

    _expect(TraceMismatchError, validate_density, 0.9 * np.eye(2) / 2, [2])
    _expect(NonPositiveError, validate_density, np.diag([1.5, -0.5]), [2])
    _expect(NonHermitianError, validate_density, np.array([[0.5, 0.3], [0.0, 0.5]]), [2])
    _expect(DimensionMismatchError, validate_density, np.eye(4) / 4, [2, 3])

    print("  PASS: validate_density accepts states and rejects malformed input")


def test_spectral_decompose():
    """Test descending eigenvalues, reconstruction and degeneracy clusters."""
    print("Testing spectral_decompose...")

    dec = spectral_decompose(np.diag([0.3, 0.7]))
    assert np.allclose(dec.eigenvalues, [0.7, 0.3]), "Eigenvalues should be descending"

    dec = spectral_decompose(SIGMA_X)
    assert np.allclose(dec.eigenvalues, [1.0, -1.0]), "sigma_x eigenvalues should be +-1"
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(abs(np.vdot(plus, dec.eigenvectors[:, 0])) - 1.0) < 1e-12, "Top eigenvector should be |+>"

    dec = spectral_decompose(np.eye(2) / 2)
    assert dec.degeneracy_clusters == ((0, 1),), "Identity should form one cluster"

    rng = np.random.default_rng(11)
    for _ in range(20):
        g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        h = g + g.conj().T
        dec = spectral_decompose(h)
        assert np.max(np.abs(dec.reconstruct() - h)) < 1e-9, "Reconstruction should be exact"

    _expect(NonHermitianError, spectral_decompose, np.array([[0, 1], [0, 0]]))

    print("  PASS: spectral_decompose is ordered and exact")


def test_partial_trace():
    """Test partial traces of products and Bell states."""
    print("Testing partial_trace...")

    rng = RngStream(5).generator()
    rho_a = random_density_hs(2, rng)
    rho_b = random_density_hs(3, rng)
    product = tensor_states(rho_a, rho_b)
    assert np.allclose(partial_trace(product, [0]).matrix, rho_a.matrix), "Tr_B should return rho_A"
    assert np.allclose(partial_trace(product, ['B']).matrix, rho_b.matrix), "Tr_A should return rho_B"

    bell = pure_density(bell_state('phi+'), [2, 2])
    assert np.allclose(partial_trace(bell, [0]).matrix, np.eye(2) / 2), "Bell marginal should be I/2"

    _expect(DimensionMismatchError, partial_trace, bell, [])
    _expect(DimensionMismatchError, partial_trace, bell, [2])

    print("  PASS: partial_trace factorizes products")


def test_schmidt_decompose():
    """Test Schmidt coefficients of product, Bell and partially entangled states."""
    print("Testing schmidt_decompose...")

    form = schmidt_decompose([1, 0, 0, 0], [2, 2])
    assert np.allclose(form.coefficients, [1, 0]), "Product state should have coefficients [1, 0]"

    form = schmidt_decompose(bell_state('phi+'), [2, 2])
    assert np.allclose(form.coefficients, [1 / np.sqrt(2)] * 2), "Bell state coefficients should be 1/sqrt 2"

    psi = np.array([np.sqrt(0.9), 0, 0, np.sqrt(0.1)])
    form = schmidt_decompose(psi, [2, 2])
    assert np.allclose(form.coefficients, [np.sqrt(0.9), np.sqrt(0.1)]), "Coefficients should be sqrt(0.9), sqrt(0.1)"
    assert np.max(np.abs(form.reconstruct() - psi)) < 1e-12, "Reconstruction should match"

    psi = random_pure_state(6, RngStream(3))
    form = schmidt_decompose(psi, [2, 3])
    assert abs(np.sum(form.coefficients ** 2) - 1.0) < 1e-12, "Squared coefficients should sum to 1"

    _expect(NotNormalizedError, schmidt_decompose, [1, 1, 0, 0], [2, 2])

    print("  PASS: schmidt_decompose matches hand results")


def test_sampling_reproducible():
    """Test seeded sampling is deterministic and Haar unitaries are unitary."""
    print("Testing seeded sampling...")

    u1 = haar_unitary(3, RngStream(42, 7))
    u2 = haar_unitary(3, RngStream(42, 7))
    assert np.array_equal(u1, u2), "Same stream should give bit-identical unitaries"
    assert not np.array_equal(u1, haar_unitary(3, RngStream(42, 8))), "Different streams should differ"
    assert np.max(np.abs(u1.conj().T @ u1 - np.eye(3))) < 1e-12, "Haar draw should be unitary"

    scalar = haar_unitary(1, RngStream(1))
    assert abs(abs(scalar[0, 0]) - 1.0) < 1e-12, "d=1 should give a unit-modulus scalar"

    assert np.allclose(random_density_hs(1, RngStream(1)).matrix, [[1.0]]), "d=1 state should be 1"

    rho1 = random_density_hs(4, RngStream(9), dims=[2, 2])
    rho2 = random_density_hs(4, RngStream(9), dims=[2, 2])
    assert np.array_equal(rho1.matrix, rho2.matrix), "Same stream should give the same state"

    gen = RngStream(2024).generator()
    mean = sum(random_density_hs(2, gen).matrix for _ in range(10_000)) / 10_000
    assert np.max(np.abs(mean - np.eye(2) / 2)) < 0.02, "HS mean should approach I/2"

    induced = random_density_hs(4, RngStream(9), dims=[2, 2], rank=3)
    assert induced.rank() == 3, "Induced measure of rank 3 gives rank-3 states"
    assert np.array_equal(random_density_hs(4, RngStream(9), dims=[2, 2], rank=4).matrix, rho1.matrix), \
        "Full rank is the Hilbert-Schmidt measure"
    _expect(DimensionMismatchError, random_density_hs, 4, RngStream(9), [2, 2], 0)

    assert parse_measure('hs') is None and parse_measure(' Induced:3 ') == 3, "Measures parse"
    assert measure_label(parse_measure('induced:2')) == 'induced:2' and measure_label(None) == 'hs'
    for bad in ('bures', 'induced', 'induced:0', 'induced:x'):
        _expect(DomainError, parse_measure, bad)

    print("  PASS: sampling is reproducible and well-distributed")


def test_embeddings_and_basis():
    """Test local embeddings and the Hermitian basis."""
    print("Testing embed_local and hermitian_basis...")

    assert np.allclose(embed_local(SIGMA_Z, 'A', [2, 2]), np.kron(SIGMA_Z, np.eye(2))), "sigma_z on A"
    assert np.allclose(embed_local(np.eye(2), 'B', [2, 2]), np.eye(4)), "Identity on B is global identity"
    _expect(DimensionMismatchError, embed_local, SIGMA_X, 'B', [2, 3])
    assert np.allclose(embed_operator(SIGMA_X, 1, [2, 2, 2]), np.kron(np.eye(2), np.kron(SIGMA_X, np.eye(2))))

    basis = hermitian_basis(3)
    assert basis.shape == (8, 3, 3), "Gell-Mann basis for d=3 should have 8 elements"
    gram = np.einsum('aij,bji->ab', basis, basis)
    assert np.allclose(gram, np.eye(8)), "Basis should be orthonormal"

    assert np.allclose(pauli(0), np.eye(2)) and np.allclose(pauli(3), SIGMA_Z), "pauli(0) is I, pauli(3) is sigma_z"
    assert np.allclose(pauli(1) @ pauli(2), 1j * pauli(3)), "sigma_x sigma_y = i sigma_z"
    _expect(DimensionMismatchError, pauli, 4)

    print("  PASS: embeddings and basis are correct")


def test_state_files():
    """Test loading fixtures and writing state files."""
    print("Testing state files...")

    bell = load_state(FIXTURES / 'bell_phi_plus.json')
    assert bell.dims == (2, 2) and bell.rank() == 1, "Bell fixture should be a rank-1 two-qubit state"

    obs = load_observable(FIXTURES / 'sigma_x.json')
    assert np.allclose(obs.matrix, SIGMA_X), "sigma_x fixture should load"

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / 'state.json'
        rho = random_density_hs(6, RngStream(4), dims=[2, 3])
        save_state(rho, path)
        loaded = load_state(path)
        assert loaded.dims == (2, 3), "Dims should survive a save"
        assert np.max(np.abs(loaded.matrix - rho.matrix)) < 1e-15, "Matrix should survive a save"

        obs_path = Path(tmp) / 'obs.json'
        u = haar_unitary(3, RngStream(5))
        matrix = u @ np.diag([2.0, -1.0, 0.5]) @ u.conj().T
        obs = Observable.from_matrix(matrix, declared_spectrum=[2.0, -1.0, 0.5])
        save_observable(obs, obs_path)
        loaded_obs = load_observable(obs_path)
        assert np.max(np.abs(loaded_obs.matrix - obs.matrix)) < 1e-15, "Observable matrix should survive a save"
        assert np.allclose(loaded_obs.declared_spectrum, [2.0, 0.5, -1.0]), "Declared spectrum should survive"

        _expect(FileNotFoundError, load_state, Path(tmp) / 'missing.json')

    print("  PASS: state files load and save")


def main():
    """Run all tests."""
    print("=" * 70)
    print("Hermitian Core Test Suite")
    print("=" * 70)
    print()

    try:
        test_validate_density()
        test_spectral_decompose()
        test_partial_trace()
        test_schmidt_decompose()
        test_sampling_reproducible()
        test_embeddings_and_basis()
        test_state_files()

        print()
        print("=" * 70)
        print("All tests passed!")
        print("=" * 70)
        return 0

    except AssertionError as e:
        print()
        print("=" * 70)
        print(f"TEST FAILED: {e}")
        print("=" * 70)
        return 1

    except Exception as e:
        print()
        print("=" * 70)
        print(f"ERROR: {e}")
        import traceback
        traceback.print_exc()
        print("=" * 70)
        return 1


if __name__ == '__main__':
    sys.exit(main())
