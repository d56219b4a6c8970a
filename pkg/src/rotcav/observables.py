"""Equal-time photon statistics of a two-mode state.

Second-order correlations at zero delay,

    g2_aa(0) = Tr{a^dag^2 a^2 rho} / Tr{a^dag a rho}^2,

and likewise for mode b, plus mean occupations and the joint Fock
population map.  g2 of an (almost) empty mode is a 0/0; rather than
letting NaN propagate, the guard raises :class:`VacuumModeError` so
sweep drivers can mark the grid point as undefined instead of silently
recording garbage.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .fock import ModeOperator
from .dynamics import DensityMatrix

VACUUM_OCCUPATION_EPS = 1e-12
IMAG_RESIDUE_TOL = 1e-12


class VacuumModeError(ArithmeticError):
    """g2 requested for a mode with occupation below the 0/0 guard."""


class Mode(enum.Enum):
    A = "a"
    B = "b"


@dataclass(frozen=True)
class PhotonStatistics:
    """Steady-state statistics; g2 fields are None when the mode is empty."""

    g2_aa: float | None
    g2_bb: float | None
    n_a: float
    n_b: float
    populations: dict[tuple[int, int], float]

    @property
    def vacuum_undefined(self) -> bool:
        return self.g2_aa is None or self.g2_bb is None


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_RESIDUE_TOL * max(1.0, abs(value.real)):
        raise ValueError(f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def _g2(rho: DensityMatrix, op: ModeOperator, label: str) -> float:
    c = op.matrix
    cd = op.dag()
    occupation = _real(rho.expectation(cd @ c), f"<{label}^dag {label}>")
    if occupation <= VACUUM_OCCUPATION_EPS:
        raise VacuumModeError(
            f"mode {label} occupation {occupation:.3e} below guard; g2 undefined"
        )
    pair = _real(rho.expectation(cd @ cd @ c @ c), f"<{label}^dag^2 {label}^2>")
    return pair / occupation**2


def g2_aa(rho: DensityMatrix, a: ModeOperator) -> float:
    """Zero-delay second-order correlation of the fundamental mode."""
    return _g2(rho, a, "a")


def g2_bb(rho: DensityMatrix, b: ModeOperator) -> float:
    """Zero-delay second-order correlation of the second-harmonic mode."""
    return _g2(rho, b, "b")


def mean_photon(rho: DensityMatrix, mode: Mode) -> float:
    """Mean occupation Tr{c^dag c rho} of the requested mode."""
    basis = rho.basis
    occ = np.array(basis.occupations())
    diag = np.real(np.diag(rho.matrix))
    column = 0 if mode is Mode.A else 1
    return float(np.sum(diag * occ[:, column]))


def populations(rho: DensityMatrix) -> dict[tuple[int, int], float]:
    """Joint Fock-state probabilities p(n_a, n_b) from the diagonal."""
    diag = np.real(np.diag(rho.matrix))
    return {occ: float(p) for occ, p in zip(rho.basis.occupations(), diag)}


def photon_statistics(
    rho: DensityMatrix, a: ModeOperator, b: ModeOperator
) -> PhotonStatistics:
    """All observables at once; vacuum-undefined g2 values become None."""
    try:
        val_aa = g2_aa(rho, a)
    except VacuumModeError:
        val_aa = None
    try:
        val_bb = g2_bb(rho, b)
    except VacuumModeError:
        val_bb = None
    return PhotonStatistics(
        g2_aa=val_aa,
        g2_bb=val_bb,
        n_a=mean_photon(rho, Mode.A),
        n_b=mean_photon(rho, Mode.B),
        populations=populations(rho),
    )
