import math

import numpy as np
import pytest

from phasedspin.clifford import I3, SIGMA, reverse, rotor, sandwich, sigma1, sigma2, sigma3, sigma_vector
from phasedspin.oracle import (
    BELL_NAMES,
    IDENTITY,
    PAULI,
    UP,
    born_probability,
    oracle_bipartite,
    oracle_partial,
    rotation_matrix,
    sigma_to_matrix,
    spin_state,
    standard_bell,
)
from phasedspin.phase import MissingPhaseError
from phasedspin.spin import expectation_commutator, make_spin, spin_expectation


def test_pauli_matrices():
    for p in PAULI:
        assert np.allclose(p, p.conj().T)
        assert np.allclose(p @ p, IDENTITY)
        assert abs(np.trace(p)) == 0
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}
    for (j, k, l), e in eps.items():
        assert np.allclose(PAULI[j] @ PAULI[k], 1j * e * PAULI[l])


def test_sigma_to_matrix_basics():
    assert np.allclose(sigma_to_matrix(sigma1 * sigma2), 1j * PAULI[2])
    assert np.allclose(sigma_to_matrix(I3), 1j * IDENTITY)
    assert np.allclose(sigma_to_matrix(SIGMA.scalar(2.0)), 2 * IDENTITY)


def test_homomorphism_and_sandwich(rng):
    for _ in range(500):
        a, b = SIGMA.random(rng), SIGMA.random(rng)
        assert np.abs(sigma_to_matrix(a * b) - sigma_to_matrix(a) @ sigma_to_matrix(b)).max() < 1e-12
    r = rotor(sigma_vector([0.48, 0.6, 0.64]), 0.9)
    a = SIGMA.random(rng)
    m = sigma_to_matrix(r)
    assert np.abs(sigma_to_matrix(sandwich(r, a)) - m @ sigma_to_matrix(a) @ m.conj().T).max() < 1e-12
    assert np.allclose(sigma_to_matrix(reverse(a)), sigma_to_matrix(a).conj().T)


def test_rotor_matches_matrix_exponential():
    for theta in np.linspace(-2 * math.pi, 2 * math.pi, 25):
        assert np.abs(sigma_to_matrix(rotor(sigma3, theta)) - rotation_matrix([0, 0, 1], theta)).max() < 1e-12


def test_phased_spin_needs_assignment():
    s = make_spin("up")
    with pytest.raises(MissingPhaseError):
        sigma_to_matrix(s.mv)
    m = sigma_to_matrix(s.mv, {s.phase: 0.4})
    assert np.allclose(m, m.conj().T)
    with pytest.raises(ValueError):
        from phasedspin.clifford import STR
        sigma_to_matrix(STR.gen(0))


def test_commutator_maps_to_matrix_commutator():
    a = sigma_to_matrix(spin_expectation(make_spin(1)))
    b = sigma_to_matrix(spin_expectation(make_spin(2)))
    assert np.allclose(sigma_to_matrix(expectation_commutator(1, 2)), 0.5 * (a @ b - b @ a))
    assert np.allclose(0.5 * (a @ b - b @ a), 1j * 0.5 * sigma_to_matrix(spin_expectation(make_spin(3))))


def test_standard_bell_vectors():
    assert np.allclose(standard_bell("Psi-"), np.array([0, 1, -1, 0]) / math.sqrt(2))
    assert np.allclose(standard_bell("Ψ⁻"), standard_bell("Psi-"))
    vecs = [standard_bell(n) for n in BELL_NAMES]
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    assert np.allclose(gram, np.eye(4))
    with pytest.raises(ValueError):
        standard_bell("Chi")


def test_textbook_expectations():
    assert oracle_bipartite("Psi-", [0, 0, 1], [0, 0, 1]) == pytest.approx(-1)
    assert oracle_bipartite("Phi+", [0, 0, 1], [0, 0, 1]) == pytest.approx(1)
    assert oracle_partial("Psi-", [1, 0, 0], 1) == pytest.approx(0, abs=1e-15)
    assert oracle_bipartite("Psi-", [1, 0, 0], [0.6, 0.8, 0]) == pytest.approx(-0.6)
    with pytest.raises(ValueError):
        oracle_partial("Psi-", [1, 0, 0], 3)
    with pytest.raises(ValueError):
        oracle_bipartite("Psi-", [1, 1, 0], [1, 0, 0])


def test_born_probability():
    assert born_probability(UP, [0, 0, 1]) == pytest.approx((1, 0))
    assert born_probability(UP, [1, 0, 0]) == pytest.approx((0.5, 0.5))
    t = math.pi / 3
    assert born_probability(UP, [math.sin(t), 0, math.cos(t)]) == pytest.approx((0.75, 0.25))
    n = np.array([0.48, 0.6, 0.64])
    assert born_probability(spin_state(n), n) == pytest.approx((1, 0))
    with pytest.raises(ValueError):
        born_probability(np.array([1, 1]), [0, 0, 1])
