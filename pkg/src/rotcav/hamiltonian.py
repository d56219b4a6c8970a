"""Model Hamiltonians of the rotating two-mode chi(2) cavity.

Two circulating cavity modes, a fundamental (a) and its second harmonic
(b) with omega_b = 2 * omega_a, couple through the three-wave term
g (b a^dag^2 + b^dag a^2).  Rotation of the resonator drags the modes
by a direction-dependent Fizeau shift delta_f (and 2*delta_f for the
second harmonic).  In the frame rotating at the pump frequency,

    H_eff = (delta + delta_f) a^dag a + 2 (delta + delta_f) b^dag b
            + g (b a^dag^2 + b^dag a^2) + F (a + a^dag),

with hbar = 1.  All dynamical quantities are expressed in units of the
fundamental loss rate kappa1; the only SI-valued helpers are
:func:`fizeau_shift` and :func:`drive_strength_from_power`, which the
caller bridges to simulation units via an explicit kappa1-in-rad/s.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import FockBasis, ModeOperator, annihilator_a, annihilator_b

SPEED_OF_LIGHT = 299_792_458.0  # m/s
HBAR = 1.054_571_817e-34  # J s

HERMITICITY_TOL = 1e-10


class DriveDirection(enum.Enum):
    """Which port the pump enters; fixes the sign of the Fizeau shift."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class SystemParams:
    """Model parameters in units of kappa1 (hbar = 1).

    delta is the pump detuning omega_a - omega_L, g the mode hopping
    interaction, drive_strength the pump amplitude F, and delta_f the
    signed Fizeau shift of the fundamental mode.  Driving from the left
    port means the pump runs against the rotation (delta_f >= 0);
    driving from the right means delta_f <= 0.  When no direction is
    given it is inferred from the sign of delta_f.
    """

    delta: float = 0.0
    g: float = 0.0
    kappa1: float = 1.0
    kappa2: float = 1.0
    drive_strength: float = 0.0
    delta_f: float = 0.0
    drive_direction: DriveDirection | None = None

    def __post_init__(self):
        if self.kappa1 <= 0 or self.kappa2 <= 0:
            raise ValueError("loss rates kappa1, kappa2 must be positive")
        if self.drive_strength < 0:
            raise ValueError("drive_strength must be >= 0")
        if self.g < 0:
            raise ValueError("g must be >= 0")
        if self.drive_direction is None:
            inferred = (
                DriveDirection.LEFT if self.delta_f >= 0 else DriveDirection.RIGHT
            )
            object.__setattr__(self, "drive_direction", inferred)
        elif self.delta_f > 0 and self.drive_direction is not DriveDirection.LEFT:
            raise ValueError("delta_f > 0 requires left drive")
        elif self.delta_f < 0 and self.drive_direction is not DriveDirection.RIGHT:
            raise ValueError("delta_f < 0 requires right drive")


@dataclass(frozen=True)
class FizeauParams:
    """SI-unit geometry of the spinning resonator.

    Defaults describe a millimetre-scale silica toroid pumped at
    1550 nm; they are placeholders for order-of-magnitude estimates,
    not measured device values.
    """

    n: float = 1.4  # refractive index
    r: float = 1.1e-3  # cavity radius, m
    omega_rot: float = 2 * math.pi * 6.6e3  # angular velocity, rad/s
    wavelength: float = 1550e-9  # pump wavelength, m
    dn_dlambda: float = 0.0  # dispersion dn/dlambda, 1/m
    omega1: float = 2 * math.pi * SPEED_OF_LIGHT / 1550e-9  # rad/s

    def __post_init__(self):
        if self.n <= 1:
            raise ValueError("refractive index must exceed 1")
        if self.r <= 0 or self.wavelength <= 0 or self.omega1 <= 0:
            raise ValueError("r, wavelength, omega1 must be positive")


@dataclass(frozen=True)
class EigenLevels:
    """Lowest eigenvalues (ascending) and eigenvectors (columns)."""

    energies: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        self.energies.setflags(write=False)
        self.states.setflags(write=False)


def fizeau_shift(fp: FizeauParams, direction: DriveDirection) -> float:
    """Rotation-induced shift of the fundamental mode, in rad/s.

    shift = +/- (n r Omega omega1 / c) (1 - 1/n^2 - (lambda/n) dn/dlambda),
    positive when driving from the left (pump counter-propagating with
    the rotation), negative from the right.
    """
    drag = 1.0 - 1.0 / fp.n**2 - (fp.wavelength / fp.n) * fp.dn_dlambda
    magnitude = fp.n * fp.r * fp.omega_rot * fp.omega1 / SPEED_OF_LIGHT * drag
    return magnitude if direction is DriveDirection.LEFT else -magnitude


def drive_strength_from_power(kappa1: float, power: float, omega_l: float) -> float:
    """Pump amplitude F = sqrt(2 kappa1 P / (hbar omega_L)), in rad/s.

    kappa1 and omega_l are in rad/s, power in watts.  power = 0 is
    allowed and gives F = 0.
    """
    if kappa1 <= 0 or omega_l <= 0:
        raise ValueError("kappa1 and omega_l must be positive")
    if power < 0:
        raise ValueError("power must be >= 0")
    return math.sqrt(2.0 * kappa1 * power / (HBAR * omega_l))


def _three_wave(g: float, a: ModeOperator, b: ModeOperator) -> np.ndarray:
    """g (b a^dag^2 + b^dag a^2)."""
    ad = a.dag()
    half = b.matrix @ ad @ ad
    return g * (half + half.conj().T)


def build_h_eff(p: SystemParams, basis: FockBasis) -> np.ndarray:
    """Driven Hamiltonian in the frame rotating at the pump frequency.

    Only the sum delta + delta_f enters; the second harmonic carries
    twice that shift because omega_b = 2 omega_a is hard-wired.
    """
    a = annihilator_a(basis)
    b = annihilator_b(basis)
    dp = p.delta + p.delta_f
    h = dp * (a.dag() @ a.matrix) + 2.0 * dp * (b.dag() @ b.matrix)
    h += _three_wave(p.g, a, b)
    h += p.drive_strength * (a.matrix + a.dag())
    return h


def build_h_lab(omega1: float, p: SystemParams, basis: FockBasis) -> np.ndarray:
    """Undriven lab-frame Hamiltonian with omega_b = 2 omega_a enforced."""
    a = annihilator_a(basis)
    b = annihilator_b(basis)
    h = (omega1 + p.delta_f) * (a.dag() @ a.matrix)
    h += 2.0 * (omega1 + p.delta_f) * (b.dag() @ b.matrix)
    h += _three_wave(p.g, a, b)
    return h


def eigenlevels(h: np.ndarray, k: int) -> EigenLevels:
    """k lowest eigenpairs of a Hermitian matrix, ascending.

    Dense Hermitian decomposition; exact to machine precision at the
    dimensions used here.  Rejects matrices with max |H - H^dag| above
    1e-10.
    """
    defect = np.max(np.abs(h - h.conj().T))
    if defect > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (max |H - H^dag| = {defect:.3e})")
    if not 1 <= k <= h.shape[0]:
        raise ValueError(f"k must be in [1, {h.shape[0]}], got {k}")
    energies, states = np.linalg.eigh(h)
    return EigenLevels(energies[:k].copy(), states[:, :k].copy())


def resonance_angular_condition(g: float) -> float:
    """Fizeau-shift magnitude at which right-side driving hits the
    two-photon resonance: delta_f = (sqrt(2)/4) g."""
    return math.sqrt(2.0) / 4.0 * g
