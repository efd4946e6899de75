"""Closed-form plane-wave solutions of the 1-D first-order coupled system.

Eight linearly independent solutions exist at each momentum: two dispersion
branches x two energy signs x two spin orientations.  Spin-up solutions live
in wave-function components (1, 3) of each sector; spin-down solutions are
obtained by the index relabeling 1->2, 3->4.

Amplitude vectors are ordered (b1, b2, b3, b4, d1, d2, d3, d4), matching the
eight-component wave function (Psi_1..Psi_4, Phi_1..Phi_4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .dispersion import BRANCHES, Branch, branch_energy
from .matrices import spin_sector_hamiltonian
from .params import QuantumParams

# Fault-injection hooks for verifying that the checks are sensitive.
# Known fault names: "b3-ratio" (scales the positive-optical amplitude ratio).
_FAULTS: set[str] = set()

_UP_SLOTS = (0, 2, 4, 6)
_DOWN_SLOTS = (1, 3, 5, 7)


def set_fault(name: str | None) -> None:
    """Enable a named amplitude fault, or clear all faults with None."""
    _FAULTS.clear()
    if name is not None:
        if name != "b3-ratio":
            raise ValueError(f"unknown fault {name!r}")
        _FAULTS.add(name)


class Amplitudes(NamedTuple):
    b1: complex
    b3: complex
    d1: complex
    d3: complex
    form: str  # "closed-form" | "rationalized" | "pz0-limit"


def amplitudes(branch: Branch, p_z: float, params: QuantumParams,
               b1: complex = 1.0) -> Amplitudes:
    """Closed-form amplitudes (b1, b3, d1, d3) of one spin sector.

    Acoustic branches: b3 = +/- b1 and the secondary sector repeats the
    primary one.  Optical branches: d = -eps^2 b and b3/b1 is the ratio
    c p_z / (E + gap), which for the negative branch is evaluated in the
    rationalized form -(|E| + gap)/(c p_z) to avoid the cancellation at the
    printed denominator's zero.  At p_z = 0 exactly, the negative-optical
    eigenvector has no component on b1; the continuous limit (0, b3, 0, d3)
    is returned with the seed applied to b3.
    """
    if b1 == 0:
        raise ValueError("seed amplitude must be nonzero")
    eps2 = params.epsilon**2
    if branch.kind == "acoustic":
        s = branch.energy_sign
        return Amplitudes(b1, s * b1, b1, s * b1, "closed-form")

    gap = params.gap_energy
    cp = params.c * p_z
    E_abs = math.sqrt(cp**2 + gap**2)
    if branch.energy_sign > 0:
        ratio = cp / (E_abs + gap)
        if "b3-ratio" in _FAULTS:
            ratio *= 1.01
        form = "closed-form"
    else:
        if p_z == 0:
            # b1 drops out of the eigenvector; seed b3 instead.
            return Amplitudes(0.0, b1, 0.0, -eps2 * b1, "pz0-limit")
        ratio = -(E_abs + gap) / cp
        form = "rationalized"
    d1 = -eps2 * b1
    return Amplitudes(b1, ratio * b1, d1, ratio * d1, form)


@dataclass(frozen=True)
class PlaneWaveSolution:
    """A single plane-wave eigenmode with its eight complex amplitudes."""

    branch: Branch
    spin: str            # "up" | "down"
    p_z: float
    E: float
    amplitudes: np.ndarray  # shape (8,), complex
    form: str

    def __post_init__(self):
        if self.spin not in ("up", "down"):
            raise ValueError(f"spin must be 'up' or 'down', got {self.spin!r}")

    def evaluate(self, t: float, z: float, params: QuantumParams) -> np.ndarray:
        """Field values at (t, z): amplitudes times exp(-i (E t - p_z z)/hbar)."""
        phase = np.exp(-1j * (self.E * t - self.p_z * z) / params.hbar)
        return self.amplitudes * phase

    @property
    def sector_amplitudes(self) -> np.ndarray:
        """The four amplitudes of the occupied spin sector, ordered (b, b', d, d')."""
        slots = _UP_SLOTS if self.spin == "up" else _DOWN_SLOTS
        return self.amplitudes[list(slots)]


def build_solution(branch: Branch, spin: str, p_z: float, params: QuantumParams,
                   b1: complex = 1.0) -> PlaneWaveSolution:
    """Construct the cataloged plane-wave solution for one (branch, spin)."""
    amp = amplitudes(branch, p_z, params, b1=b1)
    vec = np.zeros(8, dtype=complex)
    slots = _UP_SLOTS if spin == "up" else _DOWN_SLOTS
    vec[list(slots)] = (amp.b1, amp.b3, amp.d1, amp.d3)
    return PlaneWaveSolution(branch=branch, spin=spin, p_z=p_z,
                             E=branch_energy(branch, p_z, params),
                             amplitudes=vec, form=amp.form)


def spin_flip(solution: PlaneWaveSolution) -> PlaneWaveSolution:
    """Swap component indices 1<->2 and 3<->4 in both sectors (an involution)."""
    perm = [1, 0, 3, 2, 5, 4, 7, 6]
    return replace(solution,
                   spin="down" if solution.spin == "up" else "up",
                   amplitudes=solution.amplitudes[perm])


def residual(solution: PlaneWaveSolution, sample_points, params: QuantumParams,
             mode: str = "exact", h: float = 1e-5) -> float:
    """Max modulus of the four sector equations evaluated on the solution.

    'exact' applies the plane-wave derivatives analytically
    (d/dt -> -iE/hbar, d/dz -> i p_z/hbar); 'fd' uses central finite
    differences of step h as an independent cross-check.
    """
    H = spin_sector_hamiltonian(solution.p_z, params)
    slots = list(_UP_SLOTS if solution.spin == "up" else _DOWN_SLOTS)
    worst = 0.0
    if mode == "exact":
        v = solution.amplitudes[slots]
        base = solution.E * v - H @ v
        for (t, z) in sample_points:
            phase = np.exp(-1j * (solution.E * t - solution.p_z * z) / params.hbar)
            worst = max(worst, float(np.max(np.abs(base * phase))))
        return worst
    if mode != "fd":
        raise ValueError(f"unknown residual mode {mode!r}")

    hbar, c = params.hbar, params.c
    me, mf = params.mu_e, params.mu_f
    for (t, z) in sample_points:
        def fld(tt, zz):
            return solution.evaluate(tt, zz, params)[slots]

        dt = (fld(t + h, z) - fld(t - h, z)) / (2 * h)
        dz = (fld(t, z + h) - fld(t, z - h)) / (2 * h)
        f = fld(t, z)
        r = np.empty(4, dtype=complex)
        r[0] = 1j * hbar * dt[0] + 1j * hbar * c * dz[1] - me * (f[0] - f[2])
        r[1] = 1j * hbar * dt[1] + 1j * hbar * c * dz[0] + me * (f[1] - f[3])
        r[2] = 1j * hbar * dt[2] + 1j * hbar * c * dz[3] - mf * (f[2] - f[0])
        r[3] = 1j * hbar * dt[3] + 1j * hbar * c * dz[2] + mf * (f[3] - f[1])
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


def catalog_eight(p_z: float, params: QuantumParams) -> list[PlaneWaveSolution]:
    """All eight solutions at momentum p_z: branches x energy signs x spins."""
    out = []
    for branch in BRANCHES:
        for spin in ("up", "down"):
            out.append(build_solution(branch, spin, p_z, params))
    return out


def stacked_amplitude_matrix(solutions) -> np.ndarray:
    """8x8 matrix whose rows are the solutions' amplitude vectors."""
    return np.array([s.amplitudes for s in solutions])
