"""Thermodynamic uncertainty relations for the three-level maser."""

from ._core import (
    Bound,
    ConfigError,
    Cumulants,
    DomainError,
    EigenvalueCumulants,
    NumericalError,
    Params,
    SteadyState,
    TurReport,
    bound,
    fano,
    monte_carlo,
    oracle_cumulants,
    steady_state,
    sweep,
    tur,
)

__all__ = [
    "Bound",
    "ConfigError",
    "Cumulants",
    "DomainError",
    "EigenvalueCumulants",
    "NumericalError",
    "Params",
    "SteadyState",
    "TurReport",
    "bound",
    "fano",
    "monte_carlo",
    "oracle_cumulants",
    "steady_state",
    "sweep",
    "tur",
]
