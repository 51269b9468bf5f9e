"""Measurement records: candidate readouts a(t) of the monitored position.

A record lives on a uniform grid spanning exactly the measurement window
and is interpreted piecewise-linearly between samples.  Three analytic
families cover the use cases: a constant level, a sinusoid
A*cos(Omega*t + phi), and externally supplied samples.

Two derived quantities feed the propagator:

* the record norm  integral a(t)**2 dt,  taken exactly on the
  piecewise-linear interpolant (each segment contributes
  dt*(a0**2 + a0*a1 + a1**2)/3);
* the complex drive  F(t) = -4i hbar a(t) / (T da**2)  that the weight
  functional adds to the equation of motion.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadGridError, OutOfRangeError, RecordWindowError
from .trapmodel import MeasurementConfig, TrapParameters

#: relative slack when checking that a record spans a measurement window
_WINDOW_RTOL = 1e-9


@dataclass(frozen=True)
class MeasurementRecord:
    """Uniformly sampled record a(t_k), meters."""

    t_start: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", vals)
        if vals.ndim != 1 or vals.size < 2:
            raise BadGridError("record needs at least two samples", field="record.values_m")
        if not np.all(np.isfinite(vals)):
            raise BadGridError("record samples must be finite", field="record.values_m")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise BadGridError("record step must be positive and finite", field="record.dt")

    @property
    def n_samples(self) -> int:
        return int(self.samples.size)

    @property
    def t_end(self) -> float:
        return self.t_start + self.dt * (self.n_samples - 1)

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n_samples)

    def __call__(self, t):
        """Piecewise-linear evaluation at time(s) ``t`` (clamped ends)."""
        return np.interp(np.asarray(t, dtype=float), self.times, self.samples)


# --- analytic record families -------------------------------------------


@dataclass(frozen=True)
class ConstantRecord:
    amplitude: float
    kind = "constant"


@dataclass(frozen=True)
class SinusoidRecord:
    """a(t) = amplitude * cos(omega * t + phase), absolute time."""

    amplitude: float
    omega: float
    phase: float = 0.0
    kind = "sinusoid"


@dataclass(frozen=True)
class SampledRecord:
    """Raw samples to be laid out uniformly across the window."""

    values: tuple[float, ...]
    kind = "samples"


RecordSpec = ConstantRecord | SinusoidRecord | SampledRecord


def render(spec: RecordSpec, meas: MeasurementConfig, n_samples: int = 2001) -> MeasurementRecord:
    """Realize a record family on the measurement window's uniform grid."""
    if isinstance(spec, SampledRecord):
        vals = np.asarray(spec.values, dtype=float)
        if vals.size < 2:
            raise BadGridError("sampled record needs >= 2 values", field="record.values_m")
        n = vals.size
    else:
        if n_samples < 2:
            raise OutOfRangeError("n_samples must be >= 2", field="numerics.n_samples")
        n = n_samples
    dt = meas.duration / (n - 1)
    t = meas.t_start + dt * np.arange(n)
    if isinstance(spec, ConstantRecord):
        vals = np.full(n, float(spec.amplitude))
    elif isinstance(spec, SinusoidRecord):
        vals = spec.amplitude * np.cos(spec.omega * t + spec.phase)
    elif not isinstance(spec, SampledRecord):
        raise OutOfRangeError(f"unknown record family {type(spec).__name__}", field="record.kind")
    return MeasurementRecord(t_start=meas.t_start, dt=dt, samples=vals)


def check_spans_window(rec: MeasurementRecord, meas: MeasurementConfig) -> None:
    """Raise unless the record covers exactly the measurement window."""
    tol = _WINDOW_RTOL * max(abs(meas.t_start), abs(meas.t_end), meas.duration)
    if abs(rec.t_start - meas.t_start) > tol or abs(rec.t_end - meas.t_end) > tol:
        raise RecordWindowError(
            f"record spans [{rec.t_start}, {rec.t_end}], window is "
            f"[{meas.t_start}, {meas.t_end}]",
            field="record",
        )


def record_norm_integral(rec: MeasurementRecord) -> float:
    """Exact integral of a(t)**2 over the record's span for the
    piecewise-linear interpolant."""
    a0 = rec.samples[:-1]
    a1 = rec.samples[1:]
    return float(rec.dt * np.sum(a0 * a0 + a0 * a1 + a1 * a1) / 3.0)


@dataclass(frozen=True)
class Forcing:
    """Sampled complex drive F(t_k), newtons, interpolated linearly."""

    t_start: float
    dt: float
    values: np.ndarray  # complex

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.values.size)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        re = np.interp(t, self.times, self.values.real)
        im = np.interp(t, self.times, self.values.imag)
        out = re + 1j * im
        if out.ndim == 0:
            return complex(out)
        return out


def record_forcing_scale(meas: MeasurementConfig, params: TrapParameters) -> float:
    """The real scale 4 hbar / (T da**2) mapping record samples to |F|.

    Zero when the measurement is off (infinite resolution).
    """
    return 2.0 * params.hbar * meas.weight_rate


def forcing(rec: MeasurementRecord, meas: MeasurementConfig, params: TrapParameters) -> Forcing:
    """Complex drive F(t) = -4i hbar a(t) / (T da**2) on the record grid.

    Identically zero (still a valid object) when the measurement is off.
    """
    check_spans_window(rec, meas)
    vals = -1j * record_forcing_scale(meas, params) * rec.samples
    return Forcing(t_start=rec.t_start, dt=rec.dt, values=vals.astype(complex))


# --- CSV interchange ------------------------------------------------------

_CSV_HEADER = ["time_s", "value_m"]


def write_record_csv(rec: MeasurementRecord, path: str | Path) -> None:
    """Write a record as two-column CSV with the required header row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CSV_HEADER)
        for t, v in zip(rec.times, rec.samples):
            writer.writerow([f"{t:.12e}", f"{v:.12e}"])


def read_record_csv(path: str | Path) -> MeasurementRecord:
    """Read a record written by :func:`write_record_csv`.

    The grid must be uniform; the header row is mandatory.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row and not row[0].lstrip().startswith("#")]
    if not rows or [c.strip() for c in rows[0]] != _CSV_HEADER:
        raise BadGridError(
            f"first line must be the header {','.join(_CSV_HEADER)}", field=str(path)
        )
    try:
        data = np.array([[float(c) for c in row[:2]] for row in rows[1:]], dtype=float)
    except ValueError as exc:
        raise BadGridError(f"non-numeric cell: {exc}", field=str(path)) from exc
    if data.shape[0] < 2:
        raise BadGridError("need at least two samples", field=str(path))
    t, v = data[:, 0], data[:, 1]
    steps = np.diff(t)
    dt = steps[0]
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise BadGridError("time grid must be uniform and increasing", field=str(path))
    return MeasurementRecord(t_start=float(t[0]), dt=float(dt), samples=v)
