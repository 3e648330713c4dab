"""Two-spin states: Bell pairs related by improper rotations, and separable pairs.

A state is an equal-weight superposition of two ordered 2-spin
configurations.  Within a Bell configuration the partner spin is the
inversion (``mu=0``) or a frame-plane reflection (``mu=1,2,3``) of the
other, and both share one phase variable.  Expectation values average over
the two configurations.

Bipartite and partial values are normalized by (ħ/2)² and ħ/2
respectively, so they lie in [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .clifford import (
    SIGMA,
    Multivector,
    _require_unit_vector,
    dot,
    reflector,
    reverse,
    sandwich,
    sigma3,
)
from .phase import PhaseVar, TrigPoly, fresh_phase
from .spin import PhasedSpin, improper_map, make_spin

VARIANTS = ("Y", "Yprime", "YdoublePrime")

# Textbook Bell vector whose correlation E(u, v) each mu reproduces.  Found
# by sweeping all 16 pairings against the matrix oracle; pinned in tests.
STANDARD_STATE = {0: "Psi-", 1: "Phi-", 2: "Phi+", 3: "Psi+"}

# Base-spin sign per mu: spins up for mu = 0, 1 and down for mu = 2, 3.
_BASE_SIGN = {0: 1, 1: 1, 2: -1, 3: -1}
_DOUBLE_PRIME_SIGN = {1: 1, 2: -1}


def _config_signs(mu: int, variant: str, observed: bool) -> tuple[int, int]:
    """Signs (s_A, s_B) of the base object in the two configurations.

    ``observed`` selects the detector-vector form; the plain ``Y`` variant
    uses spin-up vectors there for every mu, and the full-spin rows of
    the explicit Bell table otherwise.
    """
    if variant == "Y":
        s = 1 if observed else _BASE_SIGN[mu]
        return s, s
    if variant == "Yprime":
        s = _BASE_SIGN[mu]
        return s, s
    s = _DOUBLE_PRIME_SIGN[mu]
    return s, -s


def _improper(mu: int, a: Multivector, frame_rotor: Multivector | None = None) -> Multivector:
    refl = reflector(mu, SIGMA)
    if frame_rotor is not None:
        refl = sandwich(frame_rotor, refl)
    return sandwich(refl, a, improper=True)


@dataclass(frozen=True)
class BellPair:
    """Maximally entangled pair ``Y_(mu)``.

    ``pair_a`` and ``pair_b`` are the two superposed ordered spin pairs;
    for the ``Y`` and ``Yprime`` variants ``pair_b`` is the swap of
    ``pair_a``.
    """

    mu: int
    variant: str
    pair_a: tuple[PhasedSpin, PhasedSpin]
    pair_b: tuple[PhasedSpin, PhasedSpin]
    phase: PhaseVar

    @property
    def configurations(self) -> tuple[tuple[PhasedSpin, PhasedSpin], ...]:
        return self.pair_a, self.pair_b

    def sg_configurations(self, u: Multivector, v: Multivector, frame_rotor: Multivector | None = None):
        """Detector-vector configurations for SG magnets along ``u`` and ``v``."""
        s_a, s_b = _config_signs(self.mu, self.variant, observed=True)
        return (
            (u * s_a, _improper(self.mu, v * s_a, frame_rotor)),
            (_improper(self.mu, u * s_b, frame_rotor), v * s_b),
        )


def bell_state(mu: int, variant: str = "Y", phase: PhaseVar | None = None) -> BellPair:
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"mu must be 0..3, got {mu}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if variant == "YdoublePrime" and mu not in (1, 2):
        raise ValueError("the YdoublePrime form exists only for mu = 1, 2")
    if phase is None:
        phase = fresh_phase()
    up = make_spin("up", phase)
    s_a, s_b = _config_signs(mu, variant, observed=False)
    base_a = up if s_a > 0 else -up
    base_b = up if s_b > 0 else -up
    pair_a = (base_a, improper_map(base_a, mu))
    pair_b = (improper_map(base_b, mu), base_b)
    return BellPair(mu, variant, pair_a, pair_b, phase)


# -- intrinsic (full-spin) quantities ----------------------------------------


@dataclass(frozen=True)
class TotalSpin:
    mv: Multivector
    square: object  # TrigPoly in the shared phase
    expected_square: float
    observed_square: float  # <S_tot>^2


def total_spin(b: BellPair) -> TotalSpin:
    """``S_(1) + S_(2)`` per configuration; squares averaged over both."""
    totals = [s1.mv + s2.mv for s1, s2 in b.configurations]
    squares = [(t * reverse(t)).scalar for t in totals]
    sq = (squares[0] + squares[1]) * 0.5
    if not isinstance(sq, TrigPoly):
        sq = TrigPoly.const(sq)
    mean_vec = totals[0].expect([b.phase])
    observed = float((mean_vec * mean_vec).scalar)
    return TotalSpin(totals[0], sq, float(sq.expect([b.phase])), observed)


def intrinsic_correlation(b: BellPair, averaged: bool = True):
    """``2 S_(1)·S_(2)``, phase-averaged unless ``averaged`` is False."""
    vals = [2.0 * dot(s1.mv, s2.mv) for s1, s2 in b.configurations]
    val = (vals[0] + vals[1]) * 0.5
    if not isinstance(val, TrigPoly):
        val = TrigPoly.const(val)
    return float(val.expect([b.phase])) if averaged else val


# -- observed (SG) expectations -----------------------------------------------


def _check_units(*vs: Multivector) -> None:
    for v in vs:
        _require_unit_vector(v)


def bipartite_paths(b: BellPair, u: Multivector, v: Multivector, frame_rotor: Multivector | None = None) -> dict[str, float]:
    """The normalized correlation ``E(u, v)`` by three independent routes.

    ``superposed``: average of ``<w1 w2>_0`` over the two configurations.
    ``alt``: scalar part of the summed product form, halved.
    ``bivector``: ``<(σ3 w1)^† σ3 w2>_0`` per configuration, averaged.
    ``per_config`` lists the two superposition contributions separately.
    """
    _check_units(u, v)
    configs = b.sg_configurations(u, v, frame_rotor)
    per_config = [float(dot(w1, w2)) for w1, w2 in configs]
    summed = configs[0][0] * configs[0][1] + configs[1][0] * configs[1][1]
    ref = sigma3 if frame_rotor is None else sandwich(frame_rotor, sigma3)
    biv = [float((reverse(ref * w1) * (ref * w2)).scalar) for w1, w2 in configs]
    return {
        "superposed": 0.5 * sum(per_config),
        "alt": 0.5 * float(summed.scalar),
        "bivector": 0.5 * sum(biv),
        "per_config": per_config,
    }


def bipartite_expectation(b: BellPair, u: Multivector, v: Multivector, frame_rotor: Multivector | None = None) -> float:
    paths = bipartite_paths(b, u, v, frame_rotor)
    return paths["superposed"]


def bipartite_closed_form(mu: int, u: Sequence[float], v: Sequence[float]) -> float:
    """``-u·v`` for the singlet, ``u·v - 2 u^j v^j`` for triplet ``j``."""
    u, v = np.asarray(u, float), np.asarray(v, float)
    if mu == 0:
        return -float(u @ v)
    return float(u @ v) - 2.0 * u[mu - 1] * v[mu - 1]


def partial_expectation(b: BellPair, direction: Multivector, which: int) -> float:
    """One-spin value ``½ Σ_configs <σ3 w_which>_0`` for a detector along ``direction``."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    _check_units(direction)
    u = v = direction
    configs = b.sg_configurations(u, v)
    return 0.5 * sum(float(dot(sigma3, cfg[which - 1])) for cfg in configs)


def partial_closed_form(mu: int, variant: str, direction: Sequence[float], which: int) -> float:
    """``ε u³`` for ``Yprime`` with mu = 1, 2 (ε = +1, -1); zero otherwise.

    The plain ``Y`` variant keeps spin-up detectors for mu = 2, so there
    ε = +1.
    """
    if mu in (0, 3) or variant == "YdoublePrime":
        return 0.0
    eps = 1.0 if (variant == "Y" or mu == 1) else -1.0
    return eps * float(direction[2])


# -- separable states ---------------------------------------------------------

SEPARABLE_KINDS = ("upDown", "downUp", "upUp", "downDown")


@dataclass(frozen=True)
class SeparablePair:
    """Cross-superposed pair built from pieces of two different Bell states."""

    kind: str

    def __post_init__(self):
        if self.kind not in SEPARABLE_KINDS:
            raise ValueError(f"kind must be one of {SEPARABLE_KINDS}")

    def configurations(self, u: Multivector, v: Multivector):
        P = _improper
        if self.kind == "upDown":
            return (u, P(0, v)), (-P(3, u), -v)
        if self.kind == "downUp":
            return (P(0, u), v), (-u, -P(3, v))
        if self.kind == "upUp":
            return (u, P(1, v)), (P(2, u), v)
        return (-u, P(1, -v)), (P(2, -u), -v)


@dataclass(frozen=True)
class SeparableResult:
    bipartite: float
    partials: tuple[float, float]


def separable_expectation(s: SeparablePair, u: Multivector, v: Multivector) -> SeparableResult:
    _check_units(u, v)
    configs = s.configurations(u, v)
    bip = 0.5 * sum(float(dot(w1, w2)) for w1, w2 in configs)
    p1 = 0.5 * sum(float(dot(sigma3, w1)) for w1, _ in configs)
    p2 = 0.5 * sum(float(dot(sigma3, w2)) for _, w2 in configs)
    return SeparableResult(bip, (p1, p2))


def pure_product_expectation(kind: str, u: Multivector, v: Multivector) -> float:
    """Product of two independent single-spin projections ``2<<S> w>_0``."""
    first, second = {"upDown": ("up", "down"), "downUp": ("down", "up"),
                     "upUp": ("up", "up"), "downDown": ("down", "down")}[kind]
    out = 1.0
    for direction, w in ((first, u), (second, v)):
        s = make_spin(direction)
        mean = s.mv.expect([s.phase])
        out *= 2.0 * float(dot(mean, w))
    return out


# -- spinor-form orthogonality ------------------------------------------------


def spinor_bell_gram(full: bool = True) -> np.ndarray:
    """Gram matrix ``<X_mu^† X_nu>_0`` of the one-sided forms ``X_mu = I σ_mu S``.

    ``full`` uses the phased spin up (units ħ², diagonal 3/4); otherwise the
    SG-observed spin vector σ3 (diagonal 1).
    """
    if full:
        s = make_spin("up")
        spin, phases = s.mv, [s.phase]
    else:
        spin, phases = sigma3, []
    forms = [reflector(mu, SIGMA) * spin for mu in range(4)]
    gram = np.zeros((4, 4))
    for m in range(4):
        left = reverse(forms[m])
        for n in range(4):
            val = (left * forms[n]).scalar
            if isinstance(val, TrigPoly):
                val = float(val.expect(phases))
            gram[m, n] = val
    return gram


def grade_parity(mu: int) -> set[int]:
    """Grades present in the spinor form ``-I σ_mu S`` (even for the singlet)."""
    s = make_spin("up")
    return (-(reflector(mu, SIGMA) * s.mv)).grades_present()
