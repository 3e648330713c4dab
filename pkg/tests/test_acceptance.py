"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.  ``Exact`` claims on symbolic values are
checked with zero tolerance; on floating-point sweeps they are checked to
1e-15 (a few ulps for quantities bounded by 1).
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.linalg import expm

from phasedspin.clifford import I3, SIGMA, STR, identity_suite, rotor, sigma2, sigma3, sigma_vector
from phasedspin.entangle import (
    SEPARABLE_KINDS,
    STANDARD_STATE,
    SeparablePair,
    bell_state,
    bipartite_closed_form,
    bipartite_expectation,
    intrinsic_correlation,
    partial_expectation,
    pure_product_expectation,
    separable_expectation,
    spinor_bell_gram,
    total_spin,
)
from phasedspin.oracle import PAULI, oracle_bipartite, sigma_to_matrix
from phasedspin.phase import fresh_phase
from phasedspin.spin import (
    LEFT,
    RIGHT,
    eigen_table,
    equal_phase_bracket,
    expectation_anticommutator,
    expectation_commutator,
    improper_map,
    levi_civita,
    make_spin,
    reduced_spinors,
    rotate_spin,
    sg_measure,
    spin_expectation,
    spinor_compose,
    spinor_gram,
    turn_to,
)
from phasedspin.strext import (
    PAULI_DOWN,
    PAULI_UP,
    build_str_frame,
    pauli_rotor_form,
    pauli_split,
    sigma_product_table,
    spacetime_projectors,
)

from conftest import random_units

EXACT = 1e-15
SEED = 20240611


@pytest.fixture
def crit(record_property):
    def mark(n, detail):
        record_property("criterion", n)
        record_property("detail", detail)
    return mark


def test_criterion_01_algebra_suite(crit):
    start = time.perf_counter()
    errs = identity_suite(STR, np.random.default_rng(SEED), 10_000)
    errs3 = identity_suite(SIGMA, np.random.default_rng(SEED), 10_000)
    elapsed = time.perf_counter() - start
    worst = max(max(errs.values()), max(errs3.values()))
    crit(1, f"Cl(2,3)/Cl(3,0) identities x1e4, max err {worst:.2e}, {elapsed:.2f}s")
    assert set(errs) == {"associativity", "metric", "centrality", "reverse"}
    assert worst < 1e-12
    assert elapsed < 10


def test_criterion_02_isomorphism(crit):
    rng = np.random.default_rng(SEED)
    hom = 0.0
    for _ in range(10_000):
        a, b = SIGMA.random(rng), SIGMA.random(rng)
        hom = max(hom, np.abs(sigma_to_matrix(a * b) - sigma_to_matrix(a) @ sigma_to_matrix(b)).max())
    rot = 0.0
    axes = [np.eye(3)[i] for i in range(3)] + list(random_units(rng, 2))
    for n in axes:
        gen = sum(c * p for c, p in zip(n, PAULI))
        for theta in np.linspace(-2 * math.pi, 2 * math.pi, 100):
            want = expm(-0.5j * theta * gen)
            rot = max(rot, np.abs(sigma_to_matrix(rotor(sigma_vector(n), theta)) - want).max())
    crit(2, f"homomorphism max {hom:.2e}, rotor vs expm max {rot:.2e}")
    assert hom < 1e-12 and rot < 1e-12


def test_criterion_03_single_spin(crit):
    up, down = make_spin("up"), make_spin("down")
    assert spin_expectation(up).allclose(sigma3 * 0.5, 0.0)
    assert spin_expectation(down).allclose(sigma3 * -0.5, 0.0)
    rng = np.random.default_rng(SEED)
    sq_err = 0.0
    for u in random_units(rng, 200):
        r = rotate_spin(up, sigma_vector(u))
        terms = r.square().terms
        sq_err = max(sq_err, *(abs(c - (0.0 if m else 0.75)) for m, c in terms.items()))
        assert r.hand == RIGHT
    for mu in range(4):
        m = improper_map(up, mu)
        assert m.square() == 0.75 and m.square().is_constant(0.0)
        assert m.hand == LEFT
    assert eigen_table(up) == (0.0, 0.0, 0.5) and eigen_table(down) == (0.0, 0.0, -0.5)
    for j, k in ((1, 2), (2, 3), (3, 1), (2, 1)):
        l = 6 - j - k
        want = I3 * spin_expectation(make_spin(l)) * (0.5 * levi_civita(j, k, l))
        assert expectation_commutator(j, k).allclose(want, 0.0)
        assert equal_phase_bracket(j, k).allclose(want, EXACT)
        assert expectation_anticommutator(j, k).is_zero(0.0)
        assert equal_phase_bracket(j, k, "anticommutator").is_zero(EXACT)
    crit(3, f"<S>=±σ3/2 exact, square 3/4 (rotations max dev {sq_err:.1e}), (0,0,±1/2), brackets, handedness")
    assert sq_err < 1e-12


def test_criterion_04_spinor_equivalence(crit):
    rng = np.random.default_rng(SEED)
    worst = gram = 0.0
    for u in random_units(rng, 100):
        uv = sigma_vector(u)
        phase = fresh_phase()
        a = spinor_compose(uv, phase)
        b = rotate_spin(make_spin("up", phase, offset=-turn_to(uv).phi), uv)
        worst = max(worst, max((f - g).max_abs() for f, g in zip(a.frame, b.frame)))
        gram = max(gram, abs(spinor_gram(uv)), abs(spinor_gram(uv, reduced=True)))
    pair = reduced_spinors(sigma3)
    limit = pair.up_rotor.allclose(SIGMA.scalar(1.0)) and pair.down_rotor.allclose(-(I3 * sigma2), 1e-15)
    crit(4, f"compose vs rotate max {worst:.2e}, limit {{1, -Iσ2}} {limit}, gram max {gram:.2e}")
    assert worst < 1e-12 and limit and gram < 1e-12


def test_criterion_05_bell_intrinsic(crit):
    squares = [total_spin(bell_state(mu)).expected_square for mu in range(4)]
    corr = [intrinsic_correlation(bell_state(mu)) for mu in range(4)]
    crit(5, f"squares {squares}, correlations {corr}, closure {sum(corr)}")
    assert squares == [0.0, 2.0, 2.0, 2.0]
    assert corr == [-1.5, 0.5, 0.5, 0.5]
    assert sum(corr) == 0.0


def test_criterion_06_bell_correlations(crit):
    rng = np.random.default_rng(SEED)
    us, vs = random_units(rng, 1000), random_units(rng, 1000)
    start = time.perf_counter()
    closed = oracle = 0.0
    for mu in range(4):
        b = bell_state(mu)
        name = STANDARD_STATE[mu]
        for u, v in zip(us, vs):
            e = bipartite_expectation(b, sigma_vector(u), sigma_vector(v))
            closed = max(closed, abs(e - bipartite_closed_form(mu, u, v)))
            oracle = max(oracle, abs(e - oracle_bipartite(name, u, v)))
    elapsed = time.perf_counter() - start
    crit(6, f"4x1000 pairs, vs closed form {closed:.2e}, vs oracle {oracle:.2e}, {elapsed:.2f}s")
    assert closed < 1e-12 and oracle < 1e-12 and elapsed < 5


def test_criterion_07_partials(crit):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for u in random_units(rng, 200):
        uv = sigma_vector(u)
        for which in (1, 2):
            for mu in (0, 3):
                for variant in ("Y", "Yprime"):
                    worst = max(worst, abs(partial_expectation(bell_state(mu, variant), uv, which)))
            for mu, eps in ((1, 1.0), (2, -1.0)):
                got = partial_expectation(bell_state(mu, "Yprime"), uv, which)
                worst = max(worst, abs(got - eps * u[2]))
                worst = max(worst, abs(partial_expectation(bell_state(mu, "YdoublePrime"), uv, which)))
    crit(7, f"(0,0) mu=0,3; (εu3, εv3) Y' mu=1,2; 0 for Y''; max dev {worst:.1e}")
    assert worst <= EXACT


def test_criterion_08_separable(crit):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for u, v in zip(random_units(rng, 200), random_units(rng, 200)):
        uv, vv = sigma_vector(u), sigma_vector(v)
        for kind in SEPARABLE_KINDS:
            r = separable_expectation(SeparablePair(kind), uv, vv)
            sign = -1.0 if kind in ("upDown", "downUp") else 1.0
            worst = max(
                worst,
                abs(r.bipartite - sign * u[2] * v[2]),
                abs(r.partials[0] * r.partials[1] - r.bipartite),
                abs(r.bipartite - pure_product_expectation(kind, uv, vv)),
            )
    crit(8, f"-/+ u3 v3, factorizing partials, pure-product match; max dev {worst:.1e}")
    assert worst <= EXACT


def test_criterion_09_orthogonality(crit):
    full, sg = spinor_bell_gram(True), spinor_bell_gram(False)
    off = ~np.eye(4, dtype=bool)
    worst = max(np.abs(full[off]).max(), np.abs(sg[off]).max())
    crit(9, f"full diag {np.diag(full).tolist()}, SG diag {np.diag(sg).tolist()}, off-diag max {worst:.1e}")
    assert worst < 1e-12
    assert np.all(np.abs(np.diag(full)) > 0.1) and np.all(np.abs(np.diag(sg)) > 0.1)


def test_criterion_10_str_and_pauli_splits(crit):
    f = build_str_frame()
    table_ok = np.array_equal(f.sigma_table(), sigma_product_table())
    p_plus, p_minus = spacetime_projectors()
    one = STR.scalar(1.0)
    proj_ok = all([
        (p_plus * p_plus).allclose(p_plus, 0.0),
        (p_minus * p_minus).allclose(p_minus, 0.0),
        (p_plus * p_minus).is_zero(0.0),
        (p_plus + p_minus).allclose(one, 0.0),
        (PAULI_UP * PAULI_UP).allclose(PAULI_UP, 0.0),
        (PAULI_UP * PAULI_DOWN).is_zero(0.0),
        (PAULI_UP + PAULI_DOWN).allclose(SIGMA.scalar(1.0), 0.0),
    ])
    amp = 0.0
    for theta in np.linspace(0, math.pi, 91):
        a_up, a_down = pauli_split(pauli_rotor_form(1.0, theta)).amplitudes()
        rec = sg_measure(make_spin("up"), sigma_vector([math.sin(theta), 0.0, math.cos(theta)]))
        amp = max(amp, abs(a_up - math.cos(theta / 2)), abs(a_down - math.sin(theta / 2)),
                  abs(abs(a_up) ** 2 - rec.p_coincide), abs(abs(a_down) ** 2 - rec.p_anti))
    crit(10, f"Σ-in-STR table equal {table_ok}, projectors exact {proj_ok}, amplitude grid max {amp:.1e}")
    assert table_ok and proj_ok and amp < 1e-12


def test_criterion_11_cli(crit, tmp_path):
    cmd = [sys.executable, "-m", "phasedspin"]
    runs = [subprocess.run(cmd + ["difftest", "--seed", "42", "--format", "json"], capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == 0
    curve = subprocess.run(cmd + ["curve", "--state", "0", "--samples", "181", "--format", "json"], capture_output=True)
    rows = json.loads(curve.stdout)["rows"]
    dev = max(abs(r["E_model"] + math.cos(math.radians(r["theta_uv_deg"]))) for r in rows)
    crit(11, f"seeded difftest byte-identical {same}, curve 181 pts vs -cos max {dev:.1e}")
    assert same and curve.returncode == 0 and len(rows) == 181 and dev < 1e-12


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
