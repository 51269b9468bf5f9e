"""Brute-force time-sliced evaluation of the restricted propagator.

This module is the package's independent referee.  It never touches the
ODE machinery: the propagator is written as an (N-1)-dimensional complex
Gaussian integral over the positions at the interior time slices and
reduced exactly, so the only error is the O(eps**2) discretization error
of the sliced action, which Richardson extrapolation then estimates and
removes.

Discrete action on x_0 = x', x_N = x'' with eps = T/N (midpoint rule;
w2, F and the record are sampled at t_k + eps/2):

    S_N = sum_k [ m (x_{k+1} - x_k)^2 / (2 eps)
                  - eps (m/2) w2_k (x_k^2 + x_{k+1}^2)/2
                  + eps F_k (x_k + x_{k+1})/2 ]

The symmetric attachment of the potential and drive to both slice ends
is what makes the error genuinely O(eps**2); attaching them to the left
end only (the ``sampling="left"`` flag) drops it to O(eps), which the
convergence tests use as a negative control.

Collecting interior coordinates y: S_N = (1/2) y^T P y + b^T y + c with
P tridiagonal, P_jj = (m/eps) d_j, d_j = 2 - eps^2 (w_{j-1} + w_j)/2,
off-diagonal -m/eps.  Sequential elimination of the quadratic form gives
dimensionless pivots

    delta_1 = d_1,   delta_j = d_j - 1/delta_{j-1},

(the discrete determinant recurrence) and the log-amplitude

    log K = (1/2) Log(m / (2 pi i hbar eps)) - (1/2) sum_j Log delta_j
            + (i/hbar) c - (i/(2 hbar)) b^T P^{-1} b
            - (2/(T da^2)) * eps * sum_k a_k^2,

the last line being the record-norm weight at the same midpoints.  All
per-pivot logs are principal; the pivot product is never formed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadGridError, SingularSliceError
from .propagator import PropagatorInputs
from .records import record_forcing_scale
from .trapmodel import effective_frequency

#: pivot magnitudes below this, relative to the slice scale 2, are a
#: discrete caustic
_PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class SlicedLattice:
    """Uniform slicing of the window into N intervals.

    N must be a power of two so lattices chain into Richardson pairs
    (N, 2N) without remapping.
    """

    t_start: float
    t_end: float
    n_slices: int

    def __post_init__(self):
        if self.n_slices < 2 or self.n_slices & (self.n_slices - 1):
            raise BadGridError(
                f"n_slices must be a power of two >= 2, got {self.n_slices}",
                field="numerics.oracle_n",
            )
        if not self.t_end > self.t_start:
            raise BadGridError("window must have positive duration", field="window")

    @property
    def epsilon(self) -> float:
        return (self.t_end - self.t_start) / self.n_slices

    @property
    def midpoints(self) -> np.ndarray:
        eps = self.epsilon
        return self.t_start + (np.arange(self.n_slices) + 0.5) * eps

    @property
    def endpoints(self) -> np.ndarray:
        return self.t_start + self.epsilon * np.arange(self.n_slices + 1)

    def doubled(self) -> "SlicedLattice":
        return SlicedLattice(self.t_start, self.t_end, 2 * self.n_slices)


def _eliminate(diag: np.ndarray, b: np.ndarray):
    """Pivots and P^{-1} b for the unit-offdiagonal tridiagonal form.

    diag holds d_j; the matrix is (m/eps) tridiag(-1, d_j, -1), but the
    m/eps scale is factored out by the caller, so here the off-diagonal
    entries are exactly -1.  Returns (sum of Log pivots, b^T P^-1 b in
    the scaled metric), i.e. everything still carries the caller's
    m/eps bookkeeping.
    """
    n = diag.size
    delta = np.empty(n, dtype=complex)
    g = np.empty(n, dtype=complex)
    log_sum = 0.0 + 0.0j
    prev = 0.0 + 0.0j
    prev_g = 0.0 + 0.0j
    for j in range(n):
        piv = diag[j] - (1.0 / prev if j else 0.0)
        if abs(piv) < _PIVOT_RTOL * 2.0:
            raise SingularSliceError(
                f"elimination pivot {j + 1} of {n} underflowed: {piv:.3e}"
            )
        # forward substitution for L z = b with unit lower off-diagonal -1/prev
        z = b[j] + (prev_g / prev if j else 0.0)
        delta[j] = piv
        g[j] = z
        log_sum += cmath.log(piv)
        prev = piv
        prev_g = z
    # back substitution for U y = z, U upper bidiagonal with -1 off-diagonal
    quad = 0.0 + 0.0j
    nxt = 0.0 + 0.0j
    for j in range(n - 1, -1, -1):
        y = (g[j] + nxt) / delta[j]
        quad += y * b[j]
        nxt = y
    return log_sum, quad


def discrete_propagator(
    inputs: PropagatorInputs,
    n_slices: int,
    sampling: str = "midpoint",
) -> complex:
    """Log-amplitude of the sliced restricted propagator.

    ``sampling`` chooses where w2, F and the record are read within each
    slice: "midpoint" (the O(eps**2) production rule) or "left" (the
    O(eps) variant kept for order-of-convergence demonstrations; it also
    attaches the potential and drive to the left slice end only).

    Raises SingularSliceError on a discrete caustic.
    """
    lat = SlicedLattice(inputs.bc.t_start, inputs.bc.t_end, n_slices)
    params = inputs.params
    m, hbar = params.mass, params.hbar
    eps = lat.epsilon
    spec = effective_frequency(inputs.coeffs, inputs.meas, params)
    scale = record_forcing_scale(inputs.meas, params)

    if sampling == "midpoint":
        ts = lat.midpoints
    elif sampling == "left":
        ts = lat.endpoints[:-1]
    else:
        raise BadGridError(
            f"sampling must be 'midpoint' or 'left', got {sampling!r}",
            field="numerics.oracle_sampling",
        )
    w = spec.w_squared(ts)
    a = inputs.record(ts)
    f = -1j * scale * a

    xa, xb = inputs.bc.x_start, inputs.bc.x_end
    n_int = n_slices - 1
    if sampling == "midpoint":
        diag = 2.0 - (eps**2) * (w[:-1] + w[1:]) / 2.0
        b = (eps / 2.0) * (f[:-1] + f[1:])
        c = (
            m / (2.0 * eps) * (xa**2 + xb**2)
            - eps * (m / 4.0) * (w[0] * xa**2 + w[-1] * xb**2)
            + (eps / 2.0) * (f[0] * xa + f[-1] * xb)
        )
    else:
        # left rule: potential/drive attach to x_k for k = 0..N-1, so the
        # interior j = 1..N-1 sees only w_j, and x'' carries no potential
        diag = 2.0 - (eps**2) * w[1:]
        b = eps * f[1:].astype(complex)
        c = (
            m / (2.0 * eps) * (xa**2 + xb**2)
            - eps * (m / 2.0) * w[0] * xa**2
            + eps * f[0] * xa
        )
    b = b.astype(complex)
    b[0] -= (m / eps) * xa
    b[-1] -= (m / eps) * xb

    log_sum, quad_scaled = _eliminate(diag.astype(complex), b)
    # quad_scaled is b^T Q^{-1} b with Q = tridiag(-1, d, -1); P = (m/eps) Q
    quad = (eps / m) * quad_scaled

    log_k = (
        0.5 * cmath.log(m / (2.0j * math.pi * hbar * eps))
        - 0.5 * log_sum
        + 1j * c / hbar
        - 0.5j * quad / hbar
    )
    # the record-norm weight, discretized at the same sample times
    rec_term = -inputs.meas.weight_rate * eps * float(np.sum(a * a))
    return complex(log_k + rec_term)


def richardson(v_n: complex, v_2n: complex) -> tuple[complex, float]:
    """One O(eps**2) Richardson step on a (N, 2N) pair of log-amplitudes.

    Returns the extrapolated value (4 v_2N - v_N)/3 and the error
    estimate |v_2N - v_N|/3 (the magnitude of the correction applied).
    """
    extr = (4.0 * v_2n - v_n) / 3.0
    return extr, abs(v_2n - v_n) / 3.0
