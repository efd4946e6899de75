"""Analytic dispersion relations: the coupled continuum system, the four
relativistic branches, phase/group velocities, and table generation.

Note on the optical branch: the implemented frequency form is
Omega^2 = c^2 k_z^2 + omega_O^2 + omega_A^2 (a single momentum term),
consistent with the determinant factorization and the energy form
E^2 = c^2 p_z^2 + (1 + eps^2) m_e^2 c^4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ContinuumParams, QuantumParams

OPTICAL_FORM_NOTE = (
    "optical branch implemented as Omega^2 = c^2 k_z^2 + omega_O^2 + omega_A^2 "
    "(single momentum term), the form consistent with the determinant roots"
)


@dataclass(frozen=True)
class Branch:
    """One of the four dispersion branches: {acoustic, optical} x {+, -}."""

    kind: str        # "acoustic" | "optical"
    energy_sign: int  # +1 | -1

    def __post_init__(self):
        if self.kind not in ("acoustic", "optical"):
            raise ValueError(f"unknown branch kind {self.kind!r}")
        if self.energy_sign not in (1, -1):
            raise ValueError("energy_sign must be +1 or -1")

    @property
    def label(self) -> str:
        return self.kind + ("+" if self.energy_sign > 0 else "-")


ACOUSTIC_PLUS = Branch("acoustic", 1)
ACOUSTIC_MINUS = Branch("acoustic", -1)
OPTICAL_PLUS = Branch("optical", 1)
OPTICAL_MINUS = Branch("optical", -1)
BRANCHES = (ACOUSTIC_PLUS, ACOUSTIC_MINUS, OPTICAL_PLUS, OPTICAL_MINUS)


def parse_branch(label: str) -> Branch:
    """Parse a label like 'optical+' or 'acoustic-'."""
    for b in BRANCHES:
        if b.label == label:
            return b
    raise ValueError(f"unknown branch label {label!r}")


def continuum_dispersion(k: float, params: ContinuumParams) -> tuple[float, float]:
    """Both squared-frequency roots of the coupled continuum system, ascending.

    Roots of det [[W - s_m^2 k^2 - w_O^2, w_O^2], [w_A^2, W - s_M^2 k^2 - w_A^2]] = 0
    in W = Omega^2.  For s_m = s_M = c these are exactly c^2 k^2 and
    c^2 k^2 + w_O^2 + w_A^2.
    """
    a = params.s_m**2 * k**2 + params.omega_O**2
    b = params.s_M**2 * k**2 + params.omega_A**2
    # W^2 - (a+b) W + (a b - w_O^2 w_A^2) = 0
    half = 0.5 * (a + b)
    disc = half**2 - (a * b - params.omega_O**2 * params.omega_A**2)
    root = math.sqrt(max(disc, 0.0))
    return half - root, half + root


def dirac_determinant(E: float, p_z: float, params: QuantumParams) -> float:
    """Characteristic determinant (E^2 - c^2 p_z^2)(E^2 - c^2 p_z^2 - gap^2)."""
    x = E**2 - (params.c * p_z) ** 2
    return x * (x - params.gap_energy**2)


def branch_energy(branch: Branch, p_z: float, params: QuantumParams) -> float:
    """Energy of the given branch at momentum p_z.

    Acoustic: +/- c p_z.  Optical: +/- sqrt(c^2 p_z^2 + (1 + eps^2) m_e^2 c^4).
    """
    if branch.kind == "acoustic":
        return branch.energy_sign * params.c * p_z
    return branch.energy_sign * math.sqrt(
        (params.c * p_z) ** 2 + params.gap_energy**2)


def branch_frequency(branch: Branch, k_z: float, params: QuantumParams) -> float:
    """Signed angular frequency Omega of the branch at wavenumber k_z."""
    if branch.kind == "acoustic":
        return branch.energy_sign * params.c * k_z
    return branch.energy_sign * math.sqrt(
        (params.c * k_z) ** 2 + params.omega_O**2 + params.omega_A**2)


def phase_velocity(branch: Branch, k_z: float, params: QuantumParams) -> float:
    """Omega / k_z.  Undefined (domain error) at k_z = 0."""
    if k_z == 0:
        raise ValueError("phase velocity undefined at k_z = 0")
    return branch_frequency(branch, k_z, params) / k_z


def group_velocity(branch: Branch, k_z: float, params: QuantumParams) -> float:
    """d Omega / d k_z: +/- c on the acoustic branches, c^2 k_z / Omega on the optical."""
    if branch.kind == "acoustic":
        return branch.energy_sign * params.c
    return params.c**2 * k_z / branch_frequency(branch, k_z, params)


FIGURE2_COLUMNS = ("p_z", "E_acoustic_plus", "E_acoustic_minus",
                   "E_optical_plus", "E_optical_minus")


def figure2_table(epsilon: float, p_grid, params: QuantumParams | None = None) -> np.ndarray:
    """Branch energies on a momentum grid for the given mass ratio.

    Returns an array of rows (p_z, E_A+, E_A-, E_O+, E_O-); at eps = 0 the
    optical columns reduce to the standard single-mass hyperbola.
    """
    base = params if params is not None else QuantumParams()
    qp = base.replace_epsilon(epsilon)
    rows = np.empty((len(p_grid), 5), dtype=float)
    for i, p in enumerate(p_grid):
        rows[i] = (p,
                   branch_energy(ACOUSTIC_PLUS, p, qp),
                   branch_energy(ACOUSTIC_MINUS, p, qp),
                   branch_energy(OPTICAL_PLUS, p, qp),
                   branch_energy(OPTICAL_MINUS, p, qp))
    return rows
