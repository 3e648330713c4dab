"""Single spin-1/2 as a phased vector triplet in Σ = Cl(3,0).

A spin is half the sum of three orthonormal vectors: a phase-insensitive
axis plus an in-plane pair turned about that axis by a gauge phase.  The
phase lives in :class:`~phasedspin.phase.TrigPoly` coefficients, so phase
expectations are exact.  All quantities are in units of ħ (ħ² for squares).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .clifford import (
    I3,
    SIGMA,
    Multivector,
    _require_unit_vector,
    bracket,
    dot,
    grade_project,
    orientation,
    reflector,
    reverse,
    rotor,
    sandwich,
    sigma1,
    sigma2,
    sigma3,
    sigma_vector,
)
from .phase import PhaseVar, TrigPoly, fresh_phase

FRAME = (sigma1, sigma2, sigma3)
RIGHT, LEFT = "right", "left"


def phase_rotate(a: Multivector, axis: Multivector, phase: PhaseVar, offset: float = 0.0, sign: int = 1) -> Multivector:
    """Turn ``a`` about unit ``axis`` by the symbolic angle ``sign*phase + offset``.

    Same result as sandwiching with ``exp(-I axis angle/2)``, written in
    full angles so the coefficients stay integer harmonics of the phase.
    """
    par = dot(a, axis) * axis
    perp = a - par
    c = TrigPoly.cos(phase, sign, offset)
    s = TrigPoly.sin(phase, sign, offset)
    return par + perp * c + (perp * (I3 * axis)) * s


@dataclass(frozen=True)
class PhasedSpin:
    """Spin ``½(axis + first + second)`` with the pair carrying the phase.

    ``frame`` holds the three unit constituent vectors with their signs as
    written; handedness is their orientation.  ``offset`` is a label for the
    constant shift folded into the phase by rotations about the axis.
    """

    frame: tuple[Multivector, Multivector, Multivector]
    phase: PhaseVar
    offset: float = 0.0
    phase_sign: int = 1

    @property
    def mv(self) -> Multivector:
        a, b, c = self.frame
        return (a + b + c) * 0.5

    @property
    def axis(self) -> Multivector:
        return self.frame[0].real()

    @property
    def hand(self) -> str:
        return RIGHT if orientation(*self.frame) > 0 else LEFT

    def transform(self, fn: Callable[[Multivector], Multivector], **changes) -> "PhasedSpin":
        return replace(self, frame=tuple(fn(f) for f in self.frame), **changes)

    def square(self):
        """``mv * reverse(mv)``, a scalar TrigPoly (3/4 for every valid spin)."""
        return (self.mv * reverse(self.mv)).scalar

    def __neg__(self) -> "PhasedSpin":
        return improper_map(self, 0)


def make_spin(direction="up", phase: PhaseVar | None = None, offset: float = 0.0) -> PhasedSpin:
    """Reference spins: ``"up"``/``"down"`` along σ3, or frame spin ``j`` in 1..3.

    Spin down is the σ2 image of spin up, which runs its phase backwards.
    """
    if phase is None:
        phase = fresh_phase()
    if direction in ("up", 3):
        j = 3
    elif direction == "down":
        up = make_spin("up", phase, offset)
        return up.transform(lambda f: sigma2 * f * sigma2, phase_sign=-1)
    elif direction in (1, 2):
        j = direction
    else:
        raise ValueError(f"direction must be 'up', 'down' or 1..3, got {direction!r}")
    axis = FRAME[j - 1]
    first, second = FRAME[j % 3], FRAME[(j + 1) % 3]
    return PhasedSpin(
        (axis, phase_rotate(first, axis, phase, offset), phase_rotate(second, axis, phase, offset)),
        phase,
        offset,
    )


def spin_expectation(s: PhasedSpin) -> Multivector:
    return s.mv.expect([s.phase])


# -- rotations --------------------------------------------------------------


@dataclass(frozen=True)
class Turn:
    """Geometry carrying σ3 onto ``u``: polar angle, azimuth and the frame."""

    u: Multivector
    theta: float
    phi: float
    u_perp: Multivector  # azimuthal direction in the σ1σ2 plane
    u2: Multivector  # rotation-plane normal
    u1: Multivector  # image of u_perp

    @property
    def r_theta(self) -> Multivector:
        return rotor(self.u2, self.theta)

    @property
    def r_phi(self) -> Multivector:
        return rotor(sigma3, self.phi)

    @property
    def r_u(self) -> Multivector:
        return self.r_theta * self.r_phi


def turn_to(u: Multivector) -> Turn:
    """Decompose unit ``u`` as in the combined rotation ``R_theta R_phi``.

    When ``u`` is parallel to ±σ3 the azimuth is taken as 0, so the plane
    normal defaults to σ2 and ``u_perp`` to σ1.
    """
    _require_unit_vector(u)
    x, y, z = u.vector_part()
    rho = math.hypot(x, y)
    # atan2 keeps tiny polar angles that acos(z) rounds away
    theta = math.atan2(rho, z)
    phi = math.atan2(y, x) if rho > 1e-15 else 0.0
    u_perp = sigma_vector([math.cos(phi), math.sin(phi), 0.0])
    u2 = sigma_vector([-math.sin(phi), math.cos(phi), 0.0])
    u1 = sigma_vector([math.cos(theta) * math.cos(phi), math.cos(theta) * math.sin(phi), -math.sin(theta)])
    return Turn(u, theta, phi, u_perp, u2, u1)


def rotate_spin(s: PhasedSpin, u: Multivector) -> PhasedSpin:
    """Apply the rotor that carries σ3 onto ``u`` (two-sided)."""
    t = turn_to(u)
    r = t.r_u
    return s.transform(lambda f: grade_project(sandwich(r, f), 1), offset=s.offset + t.phi)


def improper_map(s: PhasedSpin, mu: int) -> PhasedSpin:
    """Inversion (``mu=0``) or reflection in a frame plane; flips handedness."""
    refl = reflector(mu, SIGMA)
    return s.transform(lambda f: grade_project(sandwich(refl, f, improper=True), 1))


# -- reduced spinors --------------------------------------------------------


@dataclass(frozen=True)
class ReducedSpinorPair:
    u_plus: Multivector
    u_minus: Multivector
    theta: float
    u2: Multivector
    up_rotor: Multivector  # R_theta
    down_rotor: Multivector  # -reverse(R_{pi - theta})

    def reconstruct(self) -> Multivector:
        return self.u_plus * math.cos(self.theta / 2) + self.u_minus * math.sin(self.theta / 2)


def reduced_spinors(u: Multivector, reference: Multivector = sigma3) -> ReducedSpinorPair:
    """Halfway vectors ``u+ = R_theta ref`` and ``u- = reverse(R_{pi-theta}) (-ref)``."""
    _require_unit_vector(reference)
    if reference.allclose(sigma3):
        t = turn_to(u)
        theta, u2 = t.theta, t.u2
    else:
        _require_unit_vector(u)
        theta, u2 = _turn_between(reference, u)
    r_theta = rotor(u2, theta)
    r_down = -reverse(rotor(u2, math.pi - theta))
    u_plus = r_theta * reference
    u_minus = r_down * reference
    return ReducedSpinorPair(
        grade_project(u_plus, 1), grade_project(u_minus, 1), theta, u2, r_theta, r_down
    )


def _turn_between(w: Multivector, u: Multivector) -> tuple[float, Multivector]:
    a, b = w.vector_part(), u.vector_part()
    n = np.cross(a, b)
    theta = math.atan2(float(np.linalg.norm(n)), float(a @ b))
    if np.linalg.norm(n) < 1e-12:
        # any normal works when u is parallel to w; take the least aligned axis
        n = np.cross(a, np.eye(3)[int(np.argmin(np.abs(a)))])
    return theta, sigma_vector(n / np.linalg.norm(n))


# -- measurement ------------------------------------------------------------


@dataclass(frozen=True)
class MeasurementRecord:
    p_coincide: float
    p_anti: float
    amp_coincide: float
    amp_anti: float
    outcome: PhasedSpin
    correlation: float


def sg_measure(s: PhasedSpin, detector: Multivector) -> MeasurementRecord:
    """Stern-Gerlach projection onto ``detector``.

    The outcome spin points along the detector with a fresh phase, so no
    phase correlation with the incoming spin survives.  ``correlation`` is
    the normalized ``<axis detector>_0``.
    """
    _require_unit_vector(detector)
    c = float(dot(s.axis, detector))
    c = max(-1.0, min(1.0, c))
    theta = math.acos(c)
    amp_c, amp_a = math.cos(theta / 2), math.sin(theta / 2)
    outcome = rotate_spin(make_spin("up", fresh_phase("φ'")), detector)
    return MeasurementRecord(amp_c**2, amp_a**2, amp_c, amp_a, outcome, c)


def phase_averaged_correlation(s: PhasedSpin, t: PhasedSpin) -> float:
    """``4 <<S_s S_t>_0>`` averaged over both (independent) phases."""
    prod = (s.mv * t.mv).scalar
    if isinstance(prod, TrigPoly):
        prod = float(prod.expect([s.phase, t.phase]))
    return 4.0 * prod


# -- spinor (one-sided) forms ----------------------------------------------


def spinor_terms(u: Multivector, phase: PhaseVar) -> tuple[Multivector, Multivector]:
    """The two one-sided terms whose sum is the spin along ``u``.

    The opposite basis spin is the half-turn of spin up about the rotation
    normal ``u2`` (σ2 when ``u`` lies in the σ3σ1 plane).
    """
    t = turn_to(u)
    up = make_spin("up", phase).mv
    down = t.u2 * up * t.u2
    r_down = reverse(rotor(t.u2, math.pi - t.theta))
    return (t.r_theta * up) * math.cos(t.theta / 2), (r_down * down) * math.sin(t.theta / 2)


def spinor_compose(u: Multivector, phase: PhaseVar | None = None) -> PhasedSpin:
    """Spin along ``u`` built only from one-sided rotor products."""
    if phase is None:
        phase = fresh_phase()
    t = turn_to(u)
    r_theta = t.r_theta
    r_down = reverse(rotor(t.u2, math.pi - t.theta))
    c, s = math.cos(t.theta / 2), math.sin(t.theta / 2)

    def compose(f: Multivector) -> Multivector:
        out = (r_theta * f) * c + (r_down * (t.u2 * f * t.u2)) * s
        residue = out - grade_project(out, 1)
        if not residue.is_zero(1e-10):
            raise ArithmeticError("one-sided composition left a non-vector part")
        return grade_project(out, 1)

    up = make_spin("up", phase)
    return up.transform(compose, offset=up.offset)


def spinor_gram(u: Multivector, reduced: bool = False) -> float:
    """Scalar overlap of the up/down spinor forms along ``u`` (always zero)."""
    t = turn_to(u)
    if reduced:
        pair = reduced_spinors(u)
        return float(dot(pair.u_plus, pair.u_minus))
    s = make_spin("up")
    left = t.r_theta * s.mv * (I3 * t.u2)
    right = t.r_theta * s.mv
    val = (reverse(left) * right).scalar
    if isinstance(val, TrigPoly):
        val = float(val.expect([s.phase]))
    return float(val)


@dataclass(frozen=True)
class SpinorTransform:
    """Result of a σ3-aligned Stern-Gerlach step written in spinor form."""

    mv: Multivector
    phase: PhaseVar
    coincide_term: Multivector
    anti_term: Multivector
    vector_form: Multivector
    theta: float


def sg_spinor_transform(s: PhasedSpin, u: Multivector) -> SpinorTransform:
    """``reverse(R_theta) S_u`` with the spin's phase replaced by a fresh one."""
    t = turn_to(u)
    if not s.axis.allclose(u, 1e-9):
        raise ValueError("incoming spin must point along u")
    phase = fresh_phase("φ'")
    r_theta = t.r_theta
    up = make_spin("up", phase)
    s_u = sandwich(r_theta, up.mv)
    mv = reverse(r_theta) * s_u
    c, sn = math.cos(t.theta / 2), math.sin(t.theta / 2)
    coincide = up.mv * c
    anti = (I3 * t.u2) * (t.u2 * up.mv * t.u2) * sn
    return SpinorTransform(mv, phase, coincide, anti, reverse(r_theta) * u, t.theta)


# -- bracket identities -----------------------------------------------------


def levi_civita(j: int, k: int, l: int) -> int:
    return (j - k) * (k - l) * (l - j) // 2


def expectation_commutator(j: int, k: int) -> Multivector:
    """``½[<S_j>, <S_k>]``."""
    return bracket(spin_expectation(make_spin(j)), spin_expectation(make_spin(k))) * 0.5


def expectation_anticommutator(j: int, k: int) -> Multivector:
    return bracket(spin_expectation(make_spin(j)), spin_expectation(make_spin(k)), "anticommutator")


def full_spin_bracket(j: int, k: int, kind: str = "commutator") -> Multivector:
    """Phase-expected bracket of full spins ``S_j``, ``S_k`` sharing one phase.

    Halved for the commutator.  For j != k the commutator is
    ``¼ I (σ1 + σ2 + σ3)`` whatever the pair; the anticommutator vanishes.
    """
    phase = fresh_phase()
    br = bracket(make_spin(j, phase).mv, make_spin(k, phase).mv, kind).expect([phase])
    return br * 0.5 if kind == "commutator" else br


def equal_phase_bracket(j: int, k: int, kind: str = "commutator") -> Multivector:
    """:func:`full_spin_bracket` turned about σ_l by a phase, then phase-averaged.

    The bracket is a bivector ``I b``; the turn acts on the dual vector ``b``.
    Only the component along σ_l survives the average.
    """
    if len({j, k}) != 2 or not {j, k} <= {1, 2, 3}:
        raise ValueError("j and k must be distinct frame indices 1..3")
    l = 6 - j - k
    br = full_spin_bracket(j, k, kind)
    if br.is_zero():
        return br
    if br.grades_present() != {2}:
        raise ArithmeticError("bracket is not a pure bivector")
    psi = fresh_phase("φ_l")
    dual = grade_project(-(I3 * br), 1)
    turned = phase_rotate(dual, FRAME[l - 1], psi)
    return (I3 * turned).expect([psi])


def eigen_table(s: PhasedSpin) -> tuple[float, float, float]:
    """``<sigma_j <S>>_0`` for j = 1, 2, 3."""
    e = spin_expectation(s)
    return tuple(float((FRAME[j] * e).scalar) for j in range(3))
