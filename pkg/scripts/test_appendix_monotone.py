#!/usr/bin/env python3
"""
Test script for SU(2) rotations, unital-channel dilations and the
correlation-matrix contraction they imply.
"""
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.appendix_monotone.dilation import (
    appendix_trials, contraction_check, dilate_unital, dilation_eigenvalue_residual, extension_gap,
)
from src.appendix_monotone.rotations import so3_from_su2
from src.channels.base import apply_local
from src.channels.unital import RandomUnitaryChannel, UnitalQubitChannel, identity_channel, random_unital_qubit
from src.correlations.matrix import correlation_matrix
from src.errors import DimensionMismatchError, NotUnitaryError
from src.f_catalog.functions import WY, REFERENCE_SPECS
from src.hermitian_core.operators import IDENTITY_2, PAULIS, SIGMA_X, SIGMA_Z
from src.hermitian_core.sampling import RngStream, haar_unitary, random_density_hs
from src.hermitian_core.states import bell_state, partial_trace, pure_density, tensor_states
from src.qfcorr.closed_form import qf_two_qubit


def _expect(error, func, *args):
    try:
        func(*args)
    except error:
        return
    raise AssertionError(f"{func.__name__} should raise {error.__name__}")


def test_rotations():
    """Test the SU(2) -> SO(3) map."""
    print("Testing so3_from_su2...")

    assert np.allclose(so3_from_su2(IDENTITY_2).entries, np.eye(3)), "Identity maps to identity"
    assert np.allclose(so3_from_su2(SIGMA_X).entries, np.diag([1, -1, -1])), "sigma_x is a pi rotation about x"
    assert np.allclose(so3_from_su2(1j * SIGMA_X).entries, np.diag([1, -1, -1])), "Global phase cancels"

    gen = RngStream(1).generator()
    for _ in range(100):
        u = haar_unitary(2, gen)
        r = so3_from_su2(u)
        assert r.orthogonality_defect() < 1e-12, "R should be orthogonal"
        assert abs(r.determinant - 1.0) < 1e-12, "R should be a proper rotation"
        for i, sigma_i in enumerate(PAULIS):
            expanded = sum(r.entries[i, j] * PAULIS[j] for j in range(3))
            assert np.max(np.abs(u.conj().T @ sigma_i @ u - expanded)) < 1e-12, "U^dag sigma_i U = sum_j R_ij sigma_j"

    _expect(NotUnitaryError, so3_from_su2, 2 * IDENTITY_2)
    _expect(NotUnitaryError, so3_from_su2, np.eye(3))

    print("  PASS: rotations are orthogonal with determinant 1")


def test_dilation():
    """Test the dilated state, its marginal and its S matrix."""
    print("Testing dilate_unital...")

    gen = RngStream(2).generator()
    rho = random_density_hs(4, gen, dims=[2, 2])
    u = haar_unitary(2, gen)

    result = dilate_unital(rho, UnitalQubitChannel(1.0, u, IDENTITY_2))
    assert result.tau.dims == (2, 2, 2), "tau lives on A B D"
    assert np.allclose(result.S, so3_from_su2(u).entries), "p = 1 gives S = R_U"

    result = dilate_unital(rho, UnitalQubitChannel(0.5, IDENTITY_2, SIGMA_Z))
    assert np.allclose(result.S, np.diag([0, 0, 1])), "Half dephasing gives S = diag(0, 0, 1)"
    assert abs(result.s_norm - 1.0) < 1e-12, "S S^T has top eigenvalue 1"

    channel = random_unital_qubit(gen)
    for side in ('A', 'B'):
        result = dilate_unital(rho, channel, side)
        reduced = partial_trace(result.tau, [0, 1])
        assert np.max(np.abs(reduced.matrix - apply_local(channel, rho, side).matrix)) < 1e-12, "Tr_D tau = output"
        assert dilation_eigenvalue_residual(rho, result) < 1e-12, "Spectrum of tau is that of rho"
        assert result.s_norm <= 1.0 + 1e-12, "S is a contraction"

    three = RandomUnitaryChannel([0.2, 0.3, 0.5], [haar_unitary(2, gen) for _ in range(3)])
    assert dilate_unital(rho, three).tau.dims == (2, 2, 3), "K terms give a K-dimensional environment"

    _expect(DimensionMismatchError, dilate_unital, random_density_hs(6, gen, dims=[3, 2]), channel)
    _expect(DimensionMismatchError, dilate_unital, rho, channel, 'C')

    print("  PASS: dilations reproduce the channel")


def test_contraction_check():
    """Test M_out = S M_in and s_max monotonicity on reference channels."""
    print("Testing contraction_check...")

    bell = pure_density(bell_state('phi+'), [2, 2])
    for spec in REFERENCE_SPECS:
        report = contraction_check(bell, identity_channel(), spec)
        assert np.allclose(report.m_out.entries, report.m_in.entries, atol=1e-12), "Identity channel keeps M"
        assert report.passed(), f"{spec.label}: identity channel should pass"

    dephasing = RandomUnitaryChannel([0.5, 0.5], [IDENTITY_2, SIGMA_Z])
    report = contraction_check(bell, dephasing, WY)
    assert np.allclose(report.m_out.entries, np.diag([0, 0, 1]), atol=1e-12), "Dephasing keeps only zz"
    assert report.passed(), "Dephasing should pass"

    gen = RngStream(3).generator()
    rho = random_density_hs(4, gen, dims=[2, 2])
    channel = random_unital_qubit(gen)
    report = contraction_check(rho, channel, WY, side='B')
    assert report.identity_residual < 1e-9, "Side B obeys M_out = M_in S^T"
    assert report.contraction_violation <= 1e-9, "s_max does not grow"

    print("  PASS: contraction identity holds")


def test_appendix_trials():
    """Test batched trials for all reference functions and both sides."""
    print("Testing appendix_trials...")

    for spec in REFERENCE_SPECS:
        summary = appendix_trials(100, spec, master_seed=5, max_workers=2)
        assert summary.trials == 100, "All trials should run"
        assert summary.failures == 0, f"{spec.label}: {summary.failures} failures ({summary.get_summary()})"
        assert summary.max_eigenvalue_residual < 1e-9, "Eigenvalue residual stays small"

    first = appendix_trials(20, WY, master_seed=5, side='B', max_workers=1).get_summary()
    second = appendix_trials(20, WY, master_seed=5, side='B', max_workers=3).get_summary()
    assert first == second, "Trials should not depend on the thread count"
    assert first['failures'] == 0 and first['side'] == 'B', "Side B trials should pass"

    empty = appendix_trials(0, WY).get_summary()
    assert empty['trials'] == 0 and empty['max_contraction_violation'] == 0.0, "No trials gives zeros"

    print("  PASS: no dilation check fails")


def test_extension_gap():
    """Test Q^f with a classical extension and the dimension checks."""
    print("Testing extension_gap...")

    gen = RngStream(4).generator()
    rho_ab = random_density_hs(4, gen, dims=[2, 2])
    product = tensor_states(rho_ab, pure_density([1, 0], [2]))
    assert abs(extension_gap(product, WY)) < 1e-9, "A pure ancilla adds nothing"

    gaps = [extension_gap(random_density_hs(8, gen, dims=[2, 2, 2]), WY) for _ in range(20)]
    assert all(np.isfinite(gaps)), "Gaps should be finite"

    assert abs(correlation_matrix(product, WY).s_max - qf_two_qubit(rho_ab, WY).value) < 1e-9

    _expect(DimensionMismatchError, extension_gap, rho_ab, WY)
    _expect(DimensionMismatchError, extension_gap, random_density_hs(12, gen, dims=[2, 3, 2]), WY)

    print(f"  PASS: extension gaps range over [{min(gaps):.3e}, {max(gaps):.3e}]")


def main():
    """Run all tests."""
    print("=" * 70)
    print("Dilation Contraction Test Suite")
    print("=" * 70)
    print()

    try:
        test_rotations()
        test_dilation()
        test_contraction_check()
        test_appendix_trials()
        test_extension_gap()

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
