"""Restricted propagator of a continuously monitored Paul trap.

The package computes the quadratic-path-integral propagator of a charged
particle in a quadrupole trap whose position is monitored with Gaussian
resolution, along with the log-probabilities of candidate measurement
records, and verifies both against a time-sliced lattice oracle.
"""

__version__ = "0.1.0"

from .errors import (
    BadGridError,
    CausticOnWindowError,
    ConfigError,
    ConjugatePointError,
    NumericalError,
    OutOfRangeError,
    PaulpathError,
    PhaseBudgetError,
    RecordWindowError,
    SingularSliceError,
    ToleranceNotMetError,
    ZeroQError,
)
from .trapmodel import (
    HBAR_SI,
    Axis,
    DimensionlessParams,
    EffectiveFrequencySpec,
    FrequencyCoefficients,
    MeasurementConfig,
    TrapParameters,
    derive_frequency_coefficients,
    dimensionless,
    effective_frequency,
    with_resolution,
)
from .mathieu import (
    OdeSolution,
    SeriesCoefficients,
    TruncationStiffness,
    evaluate_f,
    evaluate_f_derivative,
    evaluate_f_second_derivative,
    integrate_mathieu_ode,
    mathieu_series,
    residual_bound,
    residual_coefficients,
    residual_max_magnitude,
)
from .records import (
    ConstantRecord,
    Forcing,
    MeasurementRecord,
    RecordSpec,
    SampledRecord,
    SinusoidRecord,
    check_spans_window,
    forcing,
    read_record_csv,
    record_forcing_scale,
    record_norm_integral,
    render,
    write_record_csv,
)
from .propagator import (
    BoundaryConditions,
    ClassicalSolution,
    ClosedFormReport,
    PrefactorTrack,
    PropagatorInputs,
    PropagatorResult,
    boundary_action,
    classical_action,
    classical_trajectory,
    closed_form_prefactor,
    closed_form_report,
    fluctuation_prefactor_from_f,
    fluctuation_prefactor_robust,
    prefactor_track,
    restricted_propagator,
)
from .oracle import SlicedLattice, discrete_propagator, richardson
from .probability import (
    LogProbability,
    RankedRecord,
    joint_probability,
    probability_x,
    probability_z,
    rank_records,
)

__all__ = [
    "__version__",
    "HBAR_SI",
    "Axis",
    "BadGridError",
    "BoundaryConditions",
    "CausticOnWindowError",
    "ClassicalSolution",
    "ClosedFormReport",
    "ConfigError",
    "ConjugatePointError",
    "ConstantRecord",
    "DimensionlessParams",
    "EffectiveFrequencySpec",
    "Forcing",
    "FrequencyCoefficients",
    "LogProbability",
    "MeasurementConfig",
    "MeasurementRecord",
    "NumericalError",
    "OdeSolution",
    "OutOfRangeError",
    "PaulpathError",
    "PhaseBudgetError",
    "PrefactorTrack",
    "PropagatorInputs",
    "PropagatorResult",
    "RankedRecord",
    "RecordSpec",
    "RecordWindowError",
    "SampledRecord",
    "SeriesCoefficients",
    "SinusoidRecord",
    "SingularSliceError",
    "SlicedLattice",
    "ToleranceNotMetError",
    "TrapParameters",
    "TruncationStiffness",
    "ZeroQError",
    "boundary_action",
    "check_spans_window",
    "classical_action",
    "classical_trajectory",
    "closed_form_prefactor",
    "closed_form_report",
    "derive_frequency_coefficients",
    "dimensionless",
    "discrete_propagator",
    "effective_frequency",
    "evaluate_f",
    "evaluate_f_derivative",
    "evaluate_f_second_derivative",
    "fluctuation_prefactor_from_f",
    "fluctuation_prefactor_robust",
    "forcing",
    "integrate_mathieu_ode",
    "joint_probability",
    "mathieu_series",
    "prefactor_track",
    "probability_x",
    "probability_z",
    "rank_records",
    "read_record_csv",
    "record_forcing_scale",
    "record_norm_integral",
    "render",
    "residual_bound",
    "residual_coefficients",
    "residual_max_magnitude",
    "restricted_propagator",
    "richardson",
    "with_resolution",
    "write_record_csv",
]
