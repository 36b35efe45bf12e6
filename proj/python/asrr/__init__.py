"""Active split-ring resonator analysis and pixel synthesis."""

from ._asrr import (  # noqa: F401
    ConfigError,
    DomainError,
    Line,
    NumericalError,
    OscillationError,
    Srr,
    boosted_resistance,
    design_reference,
    equivalent,
    optimum_k,
    optimum_q,
    phase_slope,
    q_on,
    reference_noise,
    s_parameters,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
