"""Weak-drive amplitude model of the two-mode cavity.

For pump strengths well below the loss rates the state stays in the
low-excitation sector and can be truncated to nine Fock components,

    |psi> = c00|0,0> + c10|1,0> + c20|2,0> + c30|3,0> + c40|4,0>
            + c01|0,1> + c11|1,1> + c21|2,1> + c02|0,2>,

evolving under the non-Hermitian decay Hamiltonian

    H' = H_eff - i (kappa1/2) a^dag a - i (kappa2/2) b^dag b.

Setting the time derivatives to zero and pinning c00 = 1 (the
perturbative hierarchy keeps |c00| ~ 1 >> |c10| >> the rest) turns the
equations of motion into a 9 x 9 linear system for the steady
amplitudes.  Four of the drive couplings feed a higher-occupation
amplitude back into a lower one and are subleading in the pump
strength; dropping them (the default) makes the c02 = 0 condition
solvable in closed form, which is where :func:`optimal_g` comes from:
the interference null of the two-photon amplitude in the second
harmonic sits at

    g = sqrt(4 F^2 + (2 kappa1 + kappa2)(kappa1 + kappa2)) / (2 sqrt(2)).

Nonzero detunings are supported by keeping the diagonal of H_eff; that
is an extension of the resonant model, useful for cross-checks against
the full master equation away from resonance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import SystemParams
from .observables import VACUUM_OCCUPATION_EPS

# Ansatz members in fixed order; index map used by the linear system.
ANSATZ_STATES: tuple[tuple[int, int], ...] = (
    (0, 0),
    (1, 0),
    (2, 0),
    (3, 0),
    (4, 0),
    (0, 1),
    (1, 1),
    (2, 1),
    (0, 2),
)
_INDEX = {state: i for i, state in enumerate(ANSATZ_STATES)}

# Drive couplings that pull a higher a-occupation back into a lower row;
# their coefficients are one order higher in F than the terms kept.
_SUBLEADING = (
    ((1, 0), (2, 0)),
    ((2, 0), (3, 0)),
    ((3, 0), (4, 0)),
    ((1, 1), (2, 1)),
)


@dataclass(frozen=True)
class AmplitudeModelOptions:
    """keep_subleading retains the higher-order drive couplings."""

    keep_subleading: bool = False


@dataclass(frozen=True)
class AmplitudeState:
    """Steady amplitudes of the nine ansatz components."""

    c00: complex
    c10: complex
    c20: complex
    c30: complex
    c40: complex
    c01: complex
    c11: complex
    c21: complex
    c02: complex

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.c00,
                self.c10,
                self.c20,
                self.c30,
                self.c40,
                self.c01,
                self.c11,
                self.c21,
                self.c02,
            ],
            dtype=complex,
        )


def _decay_hamiltonian(p: SystemParams, keep_subleading: bool) -> np.ndarray:
    """H' restricted to the nine ansatz states."""
    n = len(ANSATZ_STATES)
    mat = np.zeros((n, n), dtype=complex)
    dp = p.delta + p.delta_f
    for (ja, jb), i in _INDEX.items():
        mat[i, i] = dp * (ja + 2 * jb) - 0.5j * (ja * p.kappa1 + jb * p.kappa2)

    def couple(row: tuple[int, int], col: tuple[int, int], value: complex) -> None:
        if row in _INDEX and col in _INDEX:
            mat[_INDEX[row], _INDEX[col]] += value

    for ja, jb in ANSATZ_STATES:
        # pump F (a + a^dag): row <- neighbouring a-occupations
        couple((ja, jb), (ja + 1, jb), p.drive_strength * math.sqrt(ja + 1))
        if ja >= 1:
            couple((ja, jb), (ja - 1, jb), p.drive_strength * math.sqrt(ja))
        # g b a^dag^2: row <- (ja-2, jb+1)
        if ja >= 2:
            couple(
                (ja, jb),
                (ja - 2, jb + 1),
                p.g * math.sqrt(jb + 1) * math.sqrt(ja * (ja - 1)),
            )
        # g b^dag a^2: row <- (ja+2, jb-1)
        if jb >= 1:
            couple(
                (ja, jb),
                (ja + 2, jb - 1),
                p.g * math.sqrt(jb) * math.sqrt((ja + 1) * (ja + 2)),
            )

    if not keep_subleading:
        for row, col in _SUBLEADING:
            mat[_INDEX[row], _INDEX[col]] = 0.0
    return mat


def amplitude_system(
    p: SystemParams, opts: AmplitudeModelOptions = AmplitudeModelOptions()
) -> tuple[np.ndarray, np.ndarray]:
    """Steady-state linear system (matrix, rhs) with c00 pinned to 1.

    Row 0 is the normalization c00 = 1; the remaining rows are the
    equations of motion with time derivatives set to zero.
    """
    mat = _decay_hamiltonian(p, opts.keep_subleading)
    mat[0, :] = 0.0
    mat[0, 0] = 1.0
    rhs = np.zeros(len(ANSATZ_STATES), dtype=complex)
    rhs[0] = 1.0
    return mat, rhs


def steady_amplitudes(
    p: SystemParams, opts: AmplitudeModelOptions = AmplitudeModelOptions()
) -> AmplitudeState:
    """Solve the pinned steady-state system for the nine amplitudes."""
    mat, rhs = amplitude_system(p, opts)
    try:
        sol = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"amplitude system is singular: {exc}")
    residual = float(np.max(np.abs(mat @ sol - rhs)))
    if not np.all(np.isfinite(sol)) or residual > 1e-8 * max(1.0, float(np.max(np.abs(sol)))):
        raise ValueError(f"amplitude system is ill-conditioned (residual {residual:.3e})")
    return AmplitudeState(*sol)


def optimal_g(kappa1: float, kappa2: float, f: float) -> float:
    """Hopping interaction that nulls the two-photon amplitude c02.

    g = sqrt(4 f^2 + (2 kappa1 + kappa2)(kappa1 + kappa2)) / (2 sqrt(2)).
    """
    if kappa1 <= 0 or kappa2 <= 0:
        raise ValueError("loss rates must be positive")
    return math.sqrt(4.0 * f**2 + (2.0 * kappa1 + kappa2) * (kappa1 + kappa2)) / (
        2.0 * math.sqrt(2.0)
    )


def g2_from_amplitudes(s: AmplitudeState) -> tuple[float | None, float | None]:
    """Zero-delay correlations of the normalized truncated state.

    Returns (g2_aa, g2_bb); a mode whose normalized occupation falls
    below the vacuum guard yields None, mirroring the density-matrix
    observables.  The a-mode value is exact on the ansatz but the
    ansatz itself truncates at n_a = 4, so it degrades sooner than the
    b-mode value as g grows.
    """
    amps = s.as_array()
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    if norm_sq == 0.0:
        raise ValueError("amplitude state is identically zero")
    probs = np.abs(amps) ** 2 / norm_sq

    occ_a = np.array([ja for ja, _ in ANSATZ_STATES], dtype=float)
    occ_b = np.array([jb for _, jb in ANSATZ_STATES], dtype=float)

    mean_a = float(np.sum(probs * occ_a))
    mean_b = float(np.sum(probs * occ_b))
    pair_a = float(np.sum(probs * occ_a * (occ_a - 1.0)))
    pair_b = float(np.sum(probs * occ_b * (occ_b - 1.0)))

    val_aa = pair_a / mean_a**2 if mean_a > VACUUM_OCCUPATION_EPS else None
    val_bb = pair_b / mean_b**2 if mean_b > VACUUM_OCCUPATION_EPS else None
    return val_aa, val_bb
