"""GL and positivity-preserving NSFD solvers for Caputo fractional systems."""

from ._core import (
    ContractViolation,
    DecomposedSystem,
    GLWeights,
    ParameterError,
    SolverError,
    Trajectory,
    ValidationReport,
    check_quasi_monotone,
    discrete_caputo_gl,
    eig2,
    gl_weights,
    integrate,
    make_model,
    model_names,
    predator_prey_equilibria,
    rate_table,
    stability_report,
    validate_decomposition,
)

__all__ = [
    "ContractViolation",
    "DecomposedSystem",
    "GLWeights",
    "ParameterError",
    "SolverError",
    "Trajectory",
    "ValidationReport",
    "check_quasi_monotone",
    "discrete_caputo_gl",
    "eig2",
    "gl_weights",
    "integrate",
    "make_model",
    "model_names",
    "predator_prey_equilibria",
    "rate_table",
    "stability_report",
    "validate_decomposition",
]
