"""Textbook two-qubit quantum mechanics with complex matrices.

Nothing here multiplies multivectors: the only contact with the geometric
algebra side is :func:`sigma_to_matrix`, which reads blade coefficients and
builds the matching Pauli-matrix combination.  That keeps the oracle an
independent reference for differential tests.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .phase import PhaseVar, TrigPoly

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

_R2 = 1 / math.sqrt(2)
_BELL = {
    "Psi-": np.array([0, 1, -1, 0], dtype=complex) * _R2,
    "Psi+": np.array([0, 1, 1, 0], dtype=complex) * _R2,
    "Phi-": np.array([1, 0, 0, -1], dtype=complex) * _R2,
    "Phi+": np.array([1, 0, 0, 1], dtype=complex) * _R2,
}
_ALIASES = {"Ψ⁻": "Psi-", "Ψ⁺": "Psi+", "Φ⁻": "Phi-", "Φ⁺": "Phi+"}
BELL_NAMES = tuple(_BELL)


def _coefficients(a, assignment: Mapping[PhaseVar, float] | None) -> tuple[np.ndarray, int]:
    """Plain float coefficients and generator count of a Σ multivector."""
    alg = a.algebra
    if alg.signature.metric != (1, 1, 1):
        raise ValueError("sigma_to_matrix needs an element of Cl(3,0)")
    out = np.zeros(alg.size)
    for b, c in enumerate(a.coeffs):
        if isinstance(c, TrigPoly):
            c = c.eval(assignment or {})
        out[b] = float(c)
    return out, alg.dim


def sigma_to_matrix(a, assignment: Mapping[PhaseVar, float] | None = None) -> np.ndarray:
    """2x2 complex matrix of a Σ element: blade → ordered Pauli product.

    Phase-dependent coefficients need values in ``assignment``; a missing
    variable raises :class:`~phasedspin.phase.MissingPhaseError`.
    """
    coeffs, dim = _coefficients(a, assignment)
    m = np.zeros((2, 2), dtype=complex)
    for mask, c in enumerate(coeffs):
        if c == 0.0:
            continue
        blade = IDENTITY
        for i in range(dim):
            if mask >> i & 1:
                blade = blade @ PAULI[i]
        m = m + c * blade
    return m


def vector_matrix(u: Sequence[float]) -> np.ndarray:
    """``u · σ̂`` for a real 3-vector."""
    return sum(float(c) * p for c, p in zip(u, PAULI))


def _unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (3,):
        raise ValueError("expected a 3-vector")
    if abs(float(u @ u) - 1.0) > 1e-9:
        raise ValueError("vector is not unit length")
    return u


def standard_bell(name: str) -> np.ndarray:
    """Unit Bell vector in the ``|↑↑>, |↑↓>, |↓↑>, |↓↓>`` basis."""
    key = _ALIASES.get(name, name)
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {name!r}; expected one of {BELL_NAMES}")
    return _BELL[key].copy()


def expectation(state: np.ndarray, op: np.ndarray) -> float:
    val = np.vdot(state, op @ state)
    return float(val.real)


def oracle_bipartite(state, u, v) -> float:
    """``<ψ| (u·σ̂) ⊗ (v·σ̂) |ψ>``."""
    if isinstance(state, str):
        state = standard_bell(state)
    op = np.kron(vector_matrix(_unit(u)), vector_matrix(_unit(v)))
    return expectation(state, op)


def oracle_partial(state, u, which: int) -> float:
    """One-sided value ``<ψ| (u·σ̂) ⊗ 1 |ψ>`` (``which=1``) or ``1 ⊗ (u·σ̂)``."""
    if isinstance(state, str):
        state = standard_bell(state)
    m = vector_matrix(_unit(u))
    if which == 1:
        op = np.kron(m, IDENTITY)
    elif which == 2:
        op = np.kron(IDENTITY, m)
    else:
        raise ValueError("which must be 1 or 2")
    return expectation(state, op)


def product_state(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def spin_state(direction) -> np.ndarray:
    """Spin-up eigenvector of ``n·σ̂`` for unit ``n`` (global phase fixed)."""
    n = _unit(direction)
    theta = math.atan2(math.hypot(n[0], n[1]), n[2])
    phi = math.atan2(n[1], n[0]) if math.hypot(n[0], n[1]) > 1e-15 else 0.0
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=complex)


def born_probability(state: np.ndarray, u) -> tuple[float, float]:
    """``(p+, p-)`` for a Stern-Gerlach detector along ``u``."""
    state = np.asarray(state, dtype=complex)
    norm = float(np.vdot(state, state).real)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("state is not normalized")
    u = _unit(u)
    plus = spin_state(u)
    minus = spin_state(-u)
    return abs(np.vdot(plus, state)) ** 2, abs(np.vdot(minus, state)) ** 2


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """``exp(-i angle (n·σ̂)/2)`` by eigendecomposition of the Hermitian generator."""
    h = vector_matrix(_unit(axis)) * (angle / 2)
    w, vecs = np.linalg.eigh(h)
    return vecs @ np.diag(np.exp(-1j * w)) @ vecs.conj().T
