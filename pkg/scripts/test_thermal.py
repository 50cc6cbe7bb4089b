#!/usr/bin/env python3
"""
Test script for Gibbs states, the quantum variance and the three thermal
routes to the quantum covariance.
"""
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.correlations.functionals import covariance, f_correlation, variance
from src.errors import DimensionMismatchError, DomainError, RankDeficientError, UsageError
from src.f_catalog.functions import QVAR
from src.hermitian_core.operators import SIGMA_X, SIGMA_Z
from src.hermitian_core.sampling import RngStream, random_density_hs, random_pure_state
from src.hermitian_core.states import pure_density, validate_density
from src.thermal.chain import SpinChainSpec, site_operator, tfi_hamiltonian
from src.thermal.fluctuations import (
    compare_routes, kubo_mori_cov, log_mean, quantum_variance, route_agreement, susceptibility_fd,
    thermo_f_correlation,
)
from src.thermal.gibbs import gibbs


def _expect(error, func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except error:
        return
    raise AssertionError(f"{func.__name__} should raise {error.__name__}")


def _random_hermitian(gen, d):
    g = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def test_gibbs():
    """Test Gibbs states against Boltzmann weights and limits."""
    print("Testing gibbs...")

    model = gibbs(np.zeros((4, 4)), 0.7, dims=[2, 2])
    assert np.allclose(model.rho.matrix, np.eye(4) / 4), "H = 0 gives the maximally mixed state"
    assert model.rho.dims == (2, 2), "Dims should be attached"

    model = gibbs(-SIGMA_Z, 1.0)
    z = np.e + 1 / np.e
    assert np.allclose(model.rho.matrix, np.diag([np.e / z, 1 / (np.e * z)]), atol=1e-14), "Two-level weights"
    assert abs(model.partition_function - z) < 1e-12, "Z = e + 1/e"

    model = gibbs(-SIGMA_Z, 1e6)
    assert np.max(np.abs(model.rho.matrix - np.eye(2) / 2)) < 1e-4, "High temperature approaches I/2"

    # Very low temperatures must not overflow
    model = gibbs(-SIGMA_Z, 1e-3)
    assert abs(model.rho.matrix[0, 0] - 1.0) < 1e-12, "Low temperature gives the ground state"
    assert np.all(np.isfinite(model.log_populations)), "Log-populations stay finite"

    _expect(DomainError, gibbs, SIGMA_Z, 0.0)
    _expect(DomainError, gibbs, SIGMA_Z, -1.0)

    print("  PASS: Gibbs states have Boltzmann weights")


def test_tfi_hamiltonian():
    """Test the transverse-field Ising chain."""
    print("Testing tfi_hamiltonian...")

    assert np.allclose(tfi_hamiltonian(SpinChainSpec(1, j=1.0, h=0.7)), -0.7 * SIGMA_X), "N = 1 gives -h sigma_x"
    assert np.allclose(tfi_hamiltonian(SpinChainSpec(2, j=1.0, h=0.0)), np.diag([-1, 1, 1, -1])), \
        "N = 2, h = 0 gives diag(-1, 1, 1, -1)"

    gen = RngStream(1).generator()
    for n in (2, 3, 4):
        h = tfi_hamiltonian(SpinChainSpec(n, j=gen.normal(), h=gen.normal()))
        assert h.shape == (2 ** n, 2 ** n), "Dimension 2^N"
        assert np.array_equal(h, h.conj().T), "Hamiltonian is Hermitian"

    _expect(DimensionMismatchError, SpinChainSpec, 9)
    _expect(DomainError, SpinChainSpec, 2, model='xxz')
    _expect(DimensionMismatchError, site_operator, SIGMA_Z, 3, 3)

    print("  PASS: TFI Hamiltonians match hand expansions")


def test_quantum_variance():
    """Test the closed-form and quadrature quantum variance."""
    print("Testing quantum_variance...")

    diag = validate_density(np.diag([0.6, 0.3, 0.1]), [3])
    for method in ('closed_form', 'quadrature'):
        assert abs(quantum_variance(diag, np.diag([1.0, 2.0, -1.0]), method)) < 1e-15, "Commuting case is 0"

    rho = validate_density((np.eye(2) + 0.6 * SIGMA_X) / 2, [2])
    closed = quantum_variance(rho, SIGMA_Z)
    assert abs(closed - quantum_variance(rho, SIGMA_Z, 'quadrature')) < 1e-7, "Methods should agree"
    assert 0.0 < closed < variance(rho, SIGMA_Z), "Mixed state lies strictly inside (0, Var)"

    gen = RngStream(2).generator()
    for _ in range(20):
        d = 3
        rho = random_density_hs(d, gen)
        o = _random_hermitian(gen, d)
        gap = abs(quantum_variance(rho, o) - quantum_variance(rho, o, 'quadrature'))
        assert gap < 1e-7, f"Closed form and quadrature differ by {gap:.3e}"

        pure = pure_density(random_pure_state(d, gen), [d])
        var = variance(pure, o)
        for method in ('closed_form', 'quadrature'):
            assert abs(quantum_variance(pure, o, method) - var) < 1e-9, "Pure states give the variance"

    _expect(UsageError, quantum_variance, rho, np.eye(3), 'simpson')
    _expect(DimensionMismatchError, quantum_variance, rho, SIGMA_Z)

    print("  PASS: both quantum variance methods agree")


def test_kubo_mori():
    """Test the Kubo-Mori covariance and the logarithmic mean."""
    print("Testing kubo_mori_cov...")

    assert abs(log_mean(np.log(2.0), np.log(2.0)) - 2.0) < 1e-15, "L(x, x) = x"
    assert abs(log_mean(0.0, 1.0) - (np.e - 1.0)) < 1e-14, "L(1, e) = e - 1"
    assert abs(log_mean(0.0, 1e-10) - (1.0 + 5e-11)) < 1e-15, "Near-diagonal branch"

    p = np.array([0.5, 0.3, 0.2])
    da = np.array([1.0, -1.0, 2.0])
    db = np.array([0.5, 3.0, -1.0])
    diag = validate_density(np.diag(p), [3])
    classical = np.sum(p * da * db) - np.sum(p * da) * np.sum(p * db)
    assert abs(kubo_mori_cov(diag, np.diag(da), np.diag(db)) - classical) < 1e-12, "Commuting case is classical"

    gen = RngStream(3).generator()
    for _ in range(50):
        rho = random_density_hs(4, gen)
        o = _random_hermitian(gen, 4)
        km = kubo_mori_cov(rho, o, o)
        assert -1e-12 <= km <= variance(rho, o) + 1e-12, "Kubo-Mori variance lies in [0, Var]"

    pure = pure_density([1, 0], [2])
    _expect(RankDeficientError, kubo_mori_cov, pure, SIGMA_X, SIGMA_X, strict=True)
    assert np.isfinite(kubo_mori_cov(pure, SIGMA_X, SIGMA_X)), "Floored evaluation stays finite"

    print("  PASS: Kubo-Mori covariance is bounded by the covariance")


def test_susceptibility():
    """Test finite-difference susceptibilities and the commuting fluctuation-dissipation case."""
    print("Testing susceptibility_fd...")

    h = tfi_hamiltonian(SpinChainSpec(2, j=1.0, h=0.8))
    zb = site_operator(SIGMA_Z, 1, 2)
    assert abs(susceptibility_fd(h, 1.0, np.eye(4), zb)) < 1e-9, "Identity has no response"

    # h = 0 makes everything diagonal
    h_classical = tfi_hamiltonian(SpinChainSpec(2, j=1.0, h=0.0))
    za = site_operator(SIGMA_Z, 0, 2)
    rho = gibbs(h_classical, 1.0).rho
    t_chi = 1.0 * susceptibility_fd(h_classical, 1.0, za, zb)
    assert abs(t_chi - covariance(rho, za, zb)) < 1e-6, "Commuting case satisfies Cov = T chi"
    assert abs(covariance(rho, za, zb) - np.tanh(1.0)) < 1e-12, "Cov = tanh(J/T)"
    assert abs(thermo_f_correlation(h_classical, 1.0, za, zb)) < 1e-6, "No quantum part when commuting"

    model = gibbs(h, 1.0)
    t_chi = 1.0 * susceptibility_fd(h, 1.0, za, zb)
    assert abs(t_chi - kubo_mori_cov(model, za, zb)) < 1e-5, "T chi should equal the Kubo-Mori covariance"

    assert abs(thermo_f_correlation(h, 1e3, za, zb)) < 1e-5, "High temperature removes the quantum part"

    _expect(DomainError, susceptibility_fd, h, 1.0, za, zb, -1e-4)

    print("  PASS: susceptibilities match the Kubo-Mori oracle")


def test_route_agreement():
    """Test thermodynamic, spectral and Kubo-Mori routes on small chains."""
    print("Testing route agreement...")

    h = tfi_hamiltonian(SpinChainSpec(4, j=1.0, h=1.0))
    comparison = compare_routes(h, 1.0, site_operator(SIGMA_Z, 1, 4), site_operator(SIGMA_Z, 2, 4))
    assert comparison.route_gap < 1e-5, f"N = 4 route gap {comparison.route_gap:.3e}"
    assert comparison.kubo_mori_gap < 1e-5, f"N = 4 Kubo-Mori gap {comparison.kubo_mori_gap:.3e}"

    worst_route = worst_km = 0.0
    for n in (2, 3, 4):
        gen = RngStream(4, n).generator()
        pairs = []
        for _ in range(5):
            site_a, site_b = gen.choice(n, size=2, replace=False)
            pairs.append((int(site_a), int(gen.integers(1, 4)), int(site_b), int(gen.integers(1, 4))))
        for temperature in (0.2, 1.0, 5.0):
            result = route_agreement(SpinChainSpec(n, j=1.0, h=1.0), temperature, pairs, max_workers=2)
            assert len(result.comparisons) == 5, "One comparison per pair"
            worst_route = max(worst_route, result.max_route_gap)
            worst_km = max(worst_km, result.max_kubo_mori_gap)

            model = gibbs(tfi_hamiltonian(result.chain), temperature)
            for site in range(n):
                sz = site_operator(SIGMA_Z, site, n)
                assert quantum_variance(model.rho, sz) >= -1e-9, "Quantum variance is nonnegative"

    assert worst_route < 1e-5, f"Route gap reached {worst_route:.3e}"
    assert worst_km < 1e-5, f"Kubo-Mori gap reached {worst_km:.3e}"

    one = route_agreement(SpinChainSpec(3), 1.0, [(0, 3, 1, 3)], max_workers=1)
    assert abs(one.comparisons[0].quantum_cov_spectral - f_correlation(
        gibbs(tfi_hamiltonian(SpinChainSpec(3)), 1.0).rho,
        site_operator(SIGMA_Z, 0, 3), site_operator(SIGMA_Z, 1, 3), QVAR)) < 1e-15, "Spectral route is Upsilon^QVAR"

    print(f"  PASS: routes agree (route {worst_route:.1e}, Kubo-Mori {worst_km:.1e})")


def main():
    """Run all tests."""
    print("=" * 70)
    print("Thermal Routes Test Suite")
    print("=" * 70)
    print()

    try:
        test_gibbs()
        test_tfi_hamiltonian()
        test_quantum_variance()
        test_kubo_mori()
        test_susceptibility()
        test_route_agreement()

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
