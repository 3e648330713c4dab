"""The spacetime-reflection algebra Cl(2,3) and its spinor projections.

Generators ``e0, e1, e2, e3, e5`` have metric ``(+, -, -, -, +)``.  Two
Euclidean triplets live inside it: the polar vectors ``x_j = e0 e_j`` and
the axial vectors ``σ_j = e0 e_j e5``.  The σ_j generate a copy of Cl(3,0)
whose pseudoscalar is the full five-blade ``İ = e0 e5 e1 e2 e3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import (
    SIGMA,
    STR,
    TOL,
    Algebra,
    Multivector,
    dot,
    grade_project,
    sigma1,
    sigma2,
    sigma3,
)


class FrameCheckError(AssertionError):
    """An algebraic identity of the STR frame failed at construction."""


@dataclass(frozen=True)
class StrFrame:
    algebra: Algebra
    generators: tuple[Multivector, ...]  # e0, e1, e2, e3, e5
    reciprocal: tuple[Multivector, ...]
    pseudoscalar: Multivector
    polar: tuple[Multivector, Multivector, Multivector]  # x_j
    axial: tuple[Multivector, Multivector, Multivector]  # σ_j

    @property
    def e0(self) -> Multivector:
        return self.generators[0]

    def embed_sigma(self, a: Multivector) -> Multivector:
        """Image of a Cl(3,0) element under σ_j ↦ e0 e_j e5."""
        if a.algebra.signature != SIGMA.signature:
            raise ValueError("embed_sigma takes an element of Cl(3,0)")
        out = self.algebra.zero()
        for mask, c in enumerate(a.real().coeffs):
            if c == 0.0:
                continue
            blade = self.algebra.scalar(1.0)
            for i in range(3):
                if mask >> i & 1:
                    blade = blade * self.axial[i]
            out = out + blade * c
        return out

    def sigma_table(self) -> np.ndarray:
        """8x8 table of coefficients of ``embed(b_i) embed(b_j)`` in the embedded basis."""
        basis = [self.embed_sigma(b) for b in SIGMA.basis()]
        return _table(basis, lambda x, y: x * y)


def _table(basis: list[Multivector], mul) -> np.ndarray:
    """``T[i, j, k]`` = component of ``basis[k]`` in ``basis[i] basis[j]``.

    The basis elements are signed blades, so the component is read off with
    the (±1) scalar ``<b_k^-1 x>_0``.
    """
    n = len(basis)
    t = np.zeros((n, n, n))
    inv = [_blade_inverse(b) for b in basis]
    for i in range(n):
        for j in range(n):
            prod = mul(basis[i], basis[j])
            for k in range(n):
                t[i, j, k] = (inv[k] * prod).scalar
    return t


def _blade_inverse(b: Multivector) -> Multivector:
    sq = (b * b).scalar
    return b * (1.0 / sq)


def sigma_product_table() -> np.ndarray:
    """The same 8x8x8 structure table computed in standalone Cl(3,0)."""
    return _table(SIGMA.basis(), lambda x, y: x * y)


def build_str_frame(check: bool = True) -> StrFrame:
    alg = STR
    e = tuple(alg.gen(i) for i in range(alg.dim))
    e0, e1, e2, e3, e5 = e
    metric = alg.signature.metric
    reciprocal = tuple(g * float(m) for g, m in zip(e, metric))
    pseudo = e0 * e5 * e1 * e2 * e3
    polar = tuple(e0 * ej for ej in (e1, e2, e3))
    axial = tuple(e0 * ej * e5 for ej in (e1, e2, e3))
    frame = StrFrame(alg, e, reciprocal, pseudo, polar, axial)
    if check:
        _verify(frame)
    return frame


def _verify(f: StrFrame) -> None:
    one = f.algebra.scalar(1.0)
    checks = []
    for tau, g in enumerate(f.generators):
        for nu, h in enumerate(f.generators):
            want = 1.0 if tau == nu else 0.0
            checks.append((f"e^{tau}·e_{nu}", abs(dot(f.reciprocal[tau], h) - want) <= TOL))
    for j in range(3):
        checks.append((f"σ{j + 1}^2", (f.axial[j] * f.axial[j]).allclose(one)))
        checks.append((f"x{j + 1}^2", (f.polar[j] * f.polar[j]).allclose(one)))
    checks.append(("İ^2", (f.pseudoscalar * f.pseudoscalar).allclose(-one)))
    for b in f.algebra.basis():
        if not (f.pseudoscalar * b).allclose(b * f.pseudoscalar):
            checks.append((f"İ central on {f.algebra.blade_name(int(np.flatnonzero(b.coeffs)[0]))}", False))
    checks.append(("σ1σ2σ3 = İ", (f.axial[0] * f.axial[1] * f.axial[2]).allclose(f.pseudoscalar)))
    checks.append(("Σ table", np.array_equal(f.sigma_table(), sigma_product_table())))
    bad = [name for name, ok in checks if not ok]
    if bad:
        raise FrameCheckError("STR frame identities failed: " + ", ".join(bad))


_FRAME: StrFrame | None = None


def str_frame() -> StrFrame:
    """Shared, verified frame."""
    global _FRAME
    if _FRAME is None:
        _FRAME = build_str_frame()
    return _FRAME


def parity_conjugate(a: Multivector) -> Multivector:
    """``e0 a e0^-1``; with ``e0^2 = +1`` this is ``e0 a e0``."""
    e0 = str_frame().e0
    return e0 * a * e0


# -- spacetime split --------------------------------------------------------


@dataclass(frozen=True)
class StrSpinorSplit:
    psi: Multivector
    phi: Multivector  # ½(1 + e0) ψ
    chi: Multivector  # ½(1 - e0) ψ


def spacetime_projectors() -> tuple[Multivector, Multivector]:
    e0 = str_frame().e0
    return (1.0 + e0) * 0.5, (1.0 - e0) * 0.5


def spacetime_split(psi: Multivector) -> StrSpinorSplit:
    # e^0 = e_0 because e0 squares to +1
    p_plus, p_minus = spacetime_projectors()
    return StrSpinorSplit(psi, p_plus * psi, p_minus * psi)


# -- Pauli spinor split -----------------------------------------------------

PAULI_UP = (1.0 + sigma3) * 0.5
PAULI_DOWN = (1.0 - sigma3) * 0.5


@dataclass(frozen=True)
class PauliSplit:
    """Projections of an even Σ element onto the σ3 up/down ideals.

    ``up_part + down_part`` recombines to the input.  The amplitudes are
    the ``a + İb`` coefficients with ``φ_P P+ = (amp_up + σ1 amp_down) P+``.
    """

    phi_p: Multivector
    up_part: Multivector
    down_part: Multivector
    amp_up: Multivector
    amp_down: Multivector

    def amplitudes(self) -> tuple[complex, complex]:
        """The two amplitudes with İ read as the imaginary unit."""
        top = SIGMA.size - 1
        return (
            complex(self.amp_up.scalar, self.amp_up.coeffs[top]),
            complex(self.amp_down.scalar, self.amp_down.coeffs[top]),
        )


def pauli_split(phi_p: Multivector, tol: float = TOL) -> PauliSplit:
    if phi_p.algebra.signature != SIGMA.signature:
        raise ValueError("pauli_split takes an element of Cl(3,0)")
    phi_p = phi_p.real()
    odd = phi_p - grade_project(phi_p, 0) - grade_project(phi_p, 2)
    if not odd.is_zero(tol):
        raise ValueError("Pauli spinor must be even (scalar plus bivector)")
    i3 = SIGMA.pseudoscalar
    # phi_p = a0 + a_k İσ_k
    a0 = phi_p.scalar
    a1, a2, a3 = (-((i3 * sk) * phi_p).scalar for sk in (sigma1, sigma2, sigma3))
    amp_up = a0 + i3 * a3
    amp_down = -a2 + i3 * a1
    return PauliSplit(phi_p, PAULI_UP * phi_p, PAULI_DOWN * phi_p, amp_up, amp_down)


def pauli_rotor_form(rho: float, theta: float) -> Multivector:
    """``ρ (cos θ/2 - İσ2 sin θ/2)``."""
    if rho < 0:
        raise ValueError("rho must be non-negative")
    i3 = SIGMA.pseudoscalar
    return (math.cos(theta / 2) - (i3 * sigma2) * math.sin(theta / 2)) * float(rho)
