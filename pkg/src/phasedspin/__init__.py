"""Spin-1/2 as a phased vector triplet in geometric algebra, with an
independent Pauli-matrix oracle for checking every observable."""

__version__ = "0.1.0"

from .clifford import (
    I3,
    SIGMA,
    STR,
    Algebra,
    Multivector,
    NotInvertible,
    SignatureMismatch,
    bracket,
    geometric_product,
    grade_project,
    reflector,
    reverse,
    rotor,
    sandwich,
    sigma1,
    sigma2,
    sigma3,
    sigma_vector,
    versor_inverse,
)
from .entangle import (
    STANDARD_STATE,
    BellPair,
    SeparablePair,
    bell_state,
    bipartite_expectation,
    intrinsic_correlation,
    partial_expectation,
    separable_expectation,
    spinor_bell_gram,
    total_spin,
)
from .phase import HarmonicCapError, MissingPhaseError, PhaseVar, TrigPoly, fresh_phase
from .spin import (
    PhasedSpin,
    improper_map,
    make_spin,
    reduced_spinors,
    rotate_spin,
    sg_measure,
    sg_spinor_transform,
    spinor_compose,
    spinor_gram,
)
