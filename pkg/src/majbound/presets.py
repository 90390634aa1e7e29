"""Measurement sets for the three standard worked examples."""

from __future__ import annotations

import numpy as np

from .quantum import Measurement


def qubit_xz(theta: float) -> list[Measurement]:
    """Eigenbases of ``X(theta) = cos(theta) Z + sin(theta) sigma_x`` and of ``Z``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    x_basis = np.array([[c, s], [s, -c]])
    return [Measurement.projective(x_basis), Measurement.projective(np.eye(2))]


def three_pauli() -> list[Measurement]:
    """Eigenbases of sigma_x, sigma_y, sigma_z (first column = +1 eigenvector)."""
    r = 1 / np.sqrt(2)
    x = np.array([[r, r], [r, -r]])
    y = np.array([[r, r], [1j * r, -1j * r]])
    return [Measurement.projective(x), Measurement.projective(y), Measurement.projective(np.eye(2))]


def qutrit_coles() -> list[Measurement]:
    """Computational basis and the qutrit basis with columns
    (1/sqrt3, 1/sqrt2, 1/sqrt6), (1/sqrt3, 0, -sqrt(2/3)), (1/sqrt3, -1/sqrt2, 1/sqrt6)."""
    y = np.array(
        [
            [1 / np.sqrt(3), 1 / np.sqrt(3), 1 / np.sqrt(3)],
            [1 / np.sqrt(2), 0.0, -1 / np.sqrt(2)],
            [1 / np.sqrt(6), -np.sqrt(2 / 3), 1 / np.sqrt(6)],
        ]
    )
    return [Measurement.projective(np.eye(3)), Measurement.projective(y)]


PRESETS = {
    "qubit-xz": qubit_xz,
    "three-pauli": three_pauli,
    "qutrit-coles": qutrit_coles,
}
