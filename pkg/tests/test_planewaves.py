import math

import numpy as np
import pytest

from dirac8 import matrices, planewaves as pw
from dirac8.dispersion import (ACOUSTIC_MINUS, ACOUSTIC_PLUS, BRANCHES,
                               OPTICAL_MINUS, OPTICAL_PLUS, branch_energy)
from dirac8.params import QuantumParams

QP = QuantumParams(epsilon=0.5)
RNG = np.random.default_rng(7)
POINTS = [(t, z) for t, z in RNG.uniform(-10, 10, size=(20, 2))]


def test_acoustic_amplitudes():
    amp = pw.amplitudes(ACOUSTIC_PLUS, 1.7, QP)
    assert (amp.b1, amp.b3, amp.d1, amp.d3) == (1.0, 1.0, 1.0, 1.0)
    amp = pw.amplitudes(ACOUSTIC_MINUS, 1.7, QP)
    assert (amp.b1, amp.b3, amp.d1, amp.d3) == (1.0, -1.0, 1.0, -1.0)


def test_optical_plus_amplitudes_at_rest():
    amp = pw.amplitudes(OPTICAL_PLUS, 0.0, QP)
    assert amp.b1 == 1.0
    assert amp.b3 == 0.0
    assert amp.d1 == pytest.approx(-0.25)
    assert amp.d3 == 0.0


def test_optical_plus_ratio_value():
    amp = pw.amplitudes(OPTICAL_PLUS, 1.0, QP)
    expected = 1.0 / (1.5 + math.sqrt(1.25))
    assert amp.b3 == pytest.approx(expected, rel=1e-14)


def test_optical_minus_rationalized_matches_printed_form():
    # the printed ratio -c p / (sqrt(...) - gap) and the rationalized
    # -(sqrt(...) + gap) / (c p) agree away from p = 0
    for p in (0.3, 1.0, -2.0):
        amp = pw.amplitudes(OPTICAL_MINUS, p, QP)
        E_abs = math.sqrt(p**2 + QP.gap_energy**2)
        printed = -p / (E_abs - QP.gap_energy)
        assert amp.b3 == pytest.approx(printed, rel=1e-10)
        assert amp.form == "rationalized"


def test_optical_minus_rest_limit():
    amp = pw.amplitudes(OPTICAL_MINUS, 0.0, QP)
    assert amp.form == "pz0-limit"
    assert amp.b1 == 0.0
    assert amp.b3 == 1.0
    assert amp.d3 == pytest.approx(-0.25)
    # it really is the rest-frame eigenvector at the negative optical energy
    H = matrices.spin_sector_hamiltonian(0.0, QP)
    v = np.array([amp.b1, amp.b3, amp.d1, amp.d3])
    E = branch_energy(OPTICAL_MINUS, 0.0, QP)
    assert np.linalg.norm(H @ v - E * v) < 1e-14


def test_amplitudes_zero_seed_rejected():
    with pytest.raises(ValueError):
        pw.amplitudes(ACOUSTIC_PLUS, 1.0, QP, b1=0.0)


def test_secondary_amplitude_scales_as_eps_squared():
    eps_grid = np.array([0.01, 0.03, 0.1, 0.3])
    ratios = [abs(pw.amplitudes(OPTICAL_PLUS, 1.0, QuantumParams(epsilon=e)).d1)
              for e in eps_grid]
    slope = np.polyfit(np.log(eps_grid), np.log(ratios), 1)[0]
    assert slope == pytest.approx(2.0, abs=1e-6)


def test_build_solution_evaluator():
    sol = pw.build_solution(ACOUSTIC_PLUS, "up", 0.9, QP)
    f0 = sol.evaluate(0.0, 0.0, QP)
    assert np.allclose(f0, sol.amplitudes)
    f = sol.evaluate(2.3, -1.1, QP)
    # all four occupied components stay equal at every point
    assert f[0] == f[2] == f[4] == f[6]
    assert f[1] == f[3] == f[5] == f[7] == 0


def test_acoustic_minus_cancellation():
    sol = pw.build_solution(ACOUSTIC_MINUS, "up", 1.3, QP)
    scale = np.abs(sol.amplitudes).max()
    for (t, z) in RNG.uniform(-20, 20, size=(100, 2)):
        f = sol.evaluate(t, z, QP)
        assert abs(f[0] + f[2]) < 1e-14 * scale
        assert abs(f[4] + f[6]) < 1e-14 * scale


def test_spin_flip_permutes_and_involutes():
    sol = pw.build_solution(ACOUSTIC_PLUS, "up", 1.0, QP)
    down = pw.spin_flip(sol)
    assert down.spin == "down"
    assert np.array_equal(down.amplitudes,
                          np.array([0, 1, 0, 1, 0, 1, 0, 1], dtype=complex))
    again = pw.spin_flip(down)
    assert again.spin == "up"
    assert np.array_equal(again.amplitudes, sol.amplitudes)
    assert pw.residual(down, POINTS, QP) < 1e-10


def test_residual_small_for_all_solutions():
    scale = QP.rest_energy
    for branch in BRANCHES:
        for spin in ("up", "down"):
            sol = pw.build_solution(branch, spin, 1.2, QP)
            r = pw.residual(sol, POINTS, QP) / (scale * np.abs(sol.amplitudes).max())
            assert r < 1e-10


def test_residual_detects_corrupted_amplitude():
    sol = pw.build_solution(OPTICAL_PLUS, "up", 1.0, QP)
    bad = np.array(sol.amplitudes)
    bad[2] *= 1.01
    corrupted = pw.PlaneWaveSolution(branch=sol.branch, spin=sol.spin, p_z=sol.p_z,
                                     E=sol.E, amplitudes=bad, form=sol.form)
    assert pw.residual(corrupted, POINTS, QP) > 1e-4 * QP.rest_energy


def test_residual_detects_wrong_energy():
    sol = pw.build_solution(ACOUSTIC_PLUS, "up", 1.0, QP)
    flipped = pw.PlaneWaveSolution(branch=sol.branch, spin=sol.spin, p_z=sol.p_z,
                                   E=-sol.E, amplitudes=sol.amplitudes, form=sol.form)
    assert pw.residual(flipped, POINTS, QP) > 0.1 * QP.rest_energy


def test_finite_difference_residual_cross_check():
    sol = pw.build_solution(OPTICAL_PLUS, "up", 1.0, QP)
    pts = POINTS[:5]
    h = 1e-5
    r_fd = pw.residual(sol, pts, QP, mode="fd", h=h)
    # exact solution: finite-difference residual is pure discretization error
    assert r_fd < 10 * h**2 * QP.rest_energy
    r_fd2 = pw.residual(sol, pts, QP, mode="fd", h=2 * h)
    assert 2.0 < r_fd2 / r_fd < 8.0  # second-order in the step


def test_catalog_eight_structure():
    sols = pw.catalog_eight(1.0, QP)
    assert len(sols) == 8
    labels = {(s.branch.label, s.spin) for s in sols}
    assert len(labels) == 8
    for s in sols:
        if s.spin == "down":
            assert np.all(s.amplitudes[[0, 2, 4, 6]] == 0)
        else:
            assert np.all(s.amplitudes[[1, 3, 5, 7]] == 0)


def test_catalog_linear_independence():
    sols = pw.catalog_eight(1.0, QP)
    M = pw.stacked_amplitude_matrix(sols)
    assert abs(np.linalg.det(M)) > 1e-8


def test_catalog_matches_null_space():
    p = 1.0
    for sol in pw.catalog_eight(p, QP):
        # spin-down solutions solve the index-relabeled system, equivalent to
        # the eight-component operator at reversed momentum
        H = matrices.hamiltonian_d8((0, 0, p if sol.spin == "up" else -p), QP)
        basis = matrices.null_space(H - sol.E * np.eye(8), tol=1e-8)
        assert basis
        v = sol.amplitudes / np.linalg.norm(sol.amplitudes)
        proj = sum(np.vdot(w, v) * w for w in basis)
        assert np.linalg.norm(v - proj) < 1e-10


def test_closed_form_vs_null_space_random_draws():
    rng = np.random.default_rng(42)
    for _ in range(50):
        p = rng.uniform(-5, 5)
        eps = rng.uniform(0.05, 2.0)
        qp = QuantumParams(epsilon=eps)
        for b in BRANCHES:
            sol = pw.build_solution(b, "up", p, qp)
            H = matrices.hamiltonian_d8((0, 0, p), qp)
            basis = matrices.null_space(H - sol.E * np.eye(8), tol=1e-8)
            v = sol.amplitudes / np.linalg.norm(sol.amplitudes)
            proj = sum(np.vdot(w, v) * w for w in basis)
            assert np.linalg.norm(v - proj) < 1e-10


def test_fault_hook():
    pw.set_fault("b3-ratio")
    try:
        sol = pw.build_solution(OPTICAL_PLUS, "up", 1.0, QP)
        assert pw.residual(sol, POINTS, QP) > 1e-4 * QP.rest_energy
    finally:
        pw.set_fault(None)
    with pytest.raises(ValueError):
        pw.set_fault("no-such-fault")
