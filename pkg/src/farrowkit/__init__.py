"""farrowkit: Farrow-structure resamplers on Lagrange and Hermite-spline
segments, FIR differentiator design, and a response-analysis toolkit."""

from .analysis import (
    ImpulseResponse,
    SpectrumAnalysis,
    flat_band,
    frequency_response,
    group_delay,
    image_suppression,
    impulse_response,
    sidelobe_level,
)
from .differentiators import (
    DifferentiatorFilter,
    DifferentiatorSpec,
    apply_fir,
    design_differentiator,
    group_delay_of,
)
from .engine import (
    FarrowResampler,
    OutputSample,
    PhaseAccumulator,
    ResamplerConfig,
    make_resampler,
)
from .splines import (
    InterpolatorKind,
    SampleWindow,
    SplineCoefficients,
    constant_multiplier_set,
    eval_horner,
    hermite3_coeffs,
    hermite5_coeffs,
    hermite7_coeffs,
    lagrange3_coeffs,
    solve_constraint_system,
)

__version__ = "0.1.0"

__all__ = [
    "DifferentiatorFilter",
    "DifferentiatorSpec",
    "FarrowResampler",
    "ImpulseResponse",
    "InterpolatorKind",
    "OutputSample",
    "PhaseAccumulator",
    "ResamplerConfig",
    "SampleWindow",
    "SpectrumAnalysis",
    "SplineCoefficients",
    "apply_fir",
    "constant_multiplier_set",
    "design_differentiator",
    "eval_horner",
    "flat_band",
    "frequency_response",
    "group_delay",
    "group_delay_of",
    "hermite3_coeffs",
    "hermite5_coeffs",
    "hermite7_coeffs",
    "image_suppression",
    "impulse_response",
    "lagrange3_coeffs",
    "make_resampler",
    "sidelobe_level",
    "solve_constraint_system",
]
