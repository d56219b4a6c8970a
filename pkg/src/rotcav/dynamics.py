"""Lindblad dynamics: Liouvillian build, steady state, time evolution.

The master equation

    drho/dt = -i [H, rho] + (kappa1/2)(2 a rho a^dag - a^dag a rho - rho a^dag a)
                          + (kappa2/2)(2 b rho b^dag - b^dag b rho - rho b^dag b)

is vectorized by column stacking: vec(rho) stacks the columns of rho
(numpy order='F'), in the same n_a-major index order as the Fock basis,
so that vec(A rho B) = (B^T kron A) vec(rho) and

    L = -i (I kron H  -  H^T kron I)
        + sum_c (kappa_c/2) (2 conj(c) kron c - I kron c^dag c - (c^dag c)^T kron I).

The steady state solves L vec(rho) = 0 with the trace condition imposed
by replacing the first row of L (a diagonal-entry row, made redundant by
trace preservation) with vec(I)^dag, and LU-factoring the resulting
square system.  Dense direct solves are exact at the default dimension
(D = 28, so L is 784 x 784); sparse and iterative methods are
deliberately not used.

The time integrator is an independent cross-check of the linear solve.
One fixed step h of classical fourth-order Runge-Kutta on the linear
system dv/dt = L v is the polynomial map

    P(h) = I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24,

and n steps compose to P^n, which is applied to vec(rho0) by binary
powering.  This is bit-for-bit the same method as naive stepping up to
floating-point reassociation, but costs O(log n) matrix products
instead of O(n) matrix-vector products.  Because vec(I)^dag L = 0, RK4
preserves the trace exactly in exact arithmetic; the residual trace
drift over a run measures roundoff plus any defect in L, which is why
renormalizing along the way is forbidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .fock import FockBasis, ModeOperator

STEADY_RESIDUAL_TOL = 1e-10
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-8
TRACE_DRIFT_TOL = 1e-8


class SteadyStateError(RuntimeError):
    """Steady-state solve failed (singular or inaccurate system)."""


class NonUniqueSteadyStateError(SteadyStateError):
    """The Liouvillian nullspace has dimension > 1."""


class TraceDriftError(RuntimeError):
    """Trace drifted beyond tolerance during time evolution."""


@dataclass(frozen=True)
class DensityMatrix:
    """D x D complex state with its basis."""

    matrix: np.ndarray
    basis: FockBasis

    def __post_init__(self):
        d = self.basis.dim
        if self.matrix.shape != (d, d):
            raise ValueError(
                f"state shape {self.matrix.shape} does not match basis dim {d}"
            )

    def trace(self) -> complex:
        return np.trace(self.matrix)

    def expectation(self, op: np.ndarray) -> complex:
        return np.trace(op @ self.matrix)

    def validate(self) -> None:
        """Enforce Hermiticity, unit trace, and positivity tolerances."""
        herm = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if herm > HERMITICITY_TOL:
            raise ValueError(f"state not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = abs(self.trace() - 1.0)
        if tr > TRACE_TOL:
            raise ValueError(f"state trace off unity by {tr:.3e}")
        min_eig = float(np.min(scipy.linalg.eigvalsh(self.matrix)))
        if min_eig < POSITIVITY_TOL:
            raise ValueError(f"state not positive: min eigenvalue {min_eig:.3e}")


@dataclass(frozen=True)
class Liouvillian:
    """D^2 x D^2 superoperator acting on column-stacked states."""

    matrix: np.ndarray
    basis: FockBasis
    kappa1: float
    kappa2: float
    h_norm: float  # spectral norm of the Hamiltonian used in the build

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.dim


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a matrix (order='F')."""
    return rho.reshape(-1, order="F")


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return vec.reshape((dim, dim), order="F")


def _add_sandwich(
    out4: np.ndarray, scale: complex, left: np.ndarray, right: np.ndarray
) -> None:
    """Accumulate scale * (right^T kron left) into the 4-index view of L.

    With column stacking, vec(left @ rho @ right) = (right^T kron left)
    vec(rho); entry ((j,i),(l,k)) of that Kronecker product is
    right[l,j] * left[i,k], so each nonzero of `right` contributes one
    dense block.  Writing blocks directly avoids materializing full
    D^2 x D^2 temporaries for every term.
    """
    for l, j in zip(*np.nonzero(right)):
        out4[j, :, l, :] += scale * right[l, j] * left


def build_liouvillian(
    h_eff: np.ndarray,
    a: ModeOperator,
    b: ModeOperator,
    kappa1: float,
    kappa2: float,
) -> Liouvillian:
    """Assemble the master-equation generator for the given Hamiltonian."""
    if kappa1 < 0 or kappa2 < 0:
        raise ValueError("loss rates must be non-negative")
    basis = a.basis
    d = basis.dim
    if h_eff.shape != (d, d) or b.matrix.shape != (d, d):
        raise ValueError("Hamiltonian/operator dimensions do not match the basis")

    eye = np.eye(d)
    lio = np.zeros((d * d, d * d), dtype=complex)
    out4 = lio.reshape(d, d, d, d)
    _add_sandwich(out4, -1j, h_eff, eye)  # -i H rho
    _add_sandwich(out4, +1j, eye, h_eff)  # +i rho H
    for op, kappa in ((a, kappa1), (b, kappa2)):
        c = op.matrix
        n_op = op.dag() @ c
        _add_sandwich(out4, kappa, c, op.dag())  # kappa * c rho c^dag
        _add_sandwich(out4, -kappa / 2.0, n_op, eye)
        _add_sandwich(out4, -kappa / 2.0, eye, n_op)
    h_norm = float(np.max(np.abs(scipy.linalg.eigvalsh(h_eff))))
    return Liouvillian(lio, basis, kappa1, kappa2, h_norm)


def _trace_row(d: int) -> np.ndarray:
    row = np.zeros(d * d, dtype=complex)
    row[:: d + 1] = 1.0  # diagonal entries of a column-stacked matrix
    return row


def steady_state(lio: Liouvillian) -> DensityMatrix:
    """Solve L vec(rho) = 0 with Tr rho = 1 by trace-row replacement.

    Raises :class:`NonUniqueSteadyStateError` when the nullspace of L is
    more than one-dimensional, and :class:`SteadyStateError` when the
    augmented system is singular or the residual exceeds tolerance.
    """
    d = lio.dim
    mod = lio.matrix.copy()
    mod[0, :] = _trace_row(d)
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0
    try:
        vec = scipy.linalg.solve(mod, rhs, overwrite_a=True, check_finite=False)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        _diagnose_singular(lio)
        raise SteadyStateError(f"augmented steady-state system is singular: {exc}")

    if not np.all(np.isfinite(vec)):
        _diagnose_singular(lio)
        raise SteadyStateError("steady-state solve produced non-finite entries")

    residual = float(np.max(np.abs(lio.matrix @ vec)))
    if residual > STEADY_RESIDUAL_TOL:
        _diagnose_singular(lio)
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds {STEADY_RESIDUAL_TOL:.0e}"
        )

    rho = DensityMatrix(unvectorize(vec, d), lio.basis)
    rho.validate()
    return rho


def _diagnose_singular(lio: Liouvillian) -> None:
    """Distinguish a non-unique steady state from a plain solver failure."""
    svals = scipy.linalg.svdvals(lio.matrix)
    scale = svals[0] if svals[0] > 0 else 1.0
    nullity = int(np.sum(svals < 1e-10 * scale))
    if nullity > 1:
        raise NonUniqueSteadyStateError(
            f"Liouvillian nullspace dimension {nullity}; steady state is not unique"
        )


def _rk4_step_matrix(lio_matrix: np.ndarray, h: float) -> np.ndarray:
    """One-step RK4 propagator P(h) for dv/dt = L v."""
    b1 = h * lio_matrix
    b2 = b1 @ b1
    p = np.eye(lio_matrix.shape[0], dtype=complex) + b1 + b2 / 2.0
    p += (b2 @ b1) / 6.0 + (b2 @ b2) / 24.0
    return p


def evolve(
    rho0: DensityMatrix, lio: Liouvillian, t_final: float, dt: float
) -> DensityMatrix:
    """Propagate vec(rho) by fixed-step RK4 to t_final.

    dt must satisfy dt <= 0.01 / max(kappa1, kappa2, ||H||); the actual
    step is t_final/n for the smallest n with t_final/n <= dt.  Raises
    :class:`TraceDriftError` if |Tr rho(t_final) - Tr rho(0)| > 1e-8
    (no renormalization is ever applied).
    """
    if rho0.basis is not lio.basis and rho0.basis != lio.basis:
        raise ValueError("state and Liouvillian bases differ")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if t_final == 0:
        return DensityMatrix(rho0.matrix.copy(), rho0.basis)

    dt_max = 0.01 / max(lio.kappa1, lio.kappa2, lio.h_norm)
    if dt > dt_max * (1 + 1e-12):
        raise ValueError(
            f"dt = {dt:.3e} exceeds stability bound 0.01/max(kappa1, kappa2, ||H||) "
            f"= {dt_max:.3e}"
        )
    if dt <= 0:
        raise ValueError("dt must be positive")

    n_steps = max(1, math.ceil(t_final / dt - 1e-12))
    step = t_final / n_steps

    vec = vectorize(rho0.matrix).astype(complex)
    trace_in = np.real(np.sum(vec[:: lio.dim + 1]))

    base = _rk4_step_matrix(lio.matrix, step)
    n = n_steps
    while n:
        if n & 1:
            vec = base @ vec
        n >>= 1
        if n:
            base = base @ base

    trace_out = np.real(np.sum(vec[:: lio.dim + 1]))
    drift = abs(trace_out - trace_in)
    if drift > TRACE_DRIFT_TOL:
        raise TraceDriftError(
            f"trace drifted by {drift:.3e} over the run (> {TRACE_DRIFT_TOL:.0e}); "
            "reduce dt or check the generator"
        )
    return DensityMatrix(unvectorize(vec, lio.dim), lio.basis)
