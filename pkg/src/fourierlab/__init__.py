"""Fourier series, discrete transforms and their applications."""
from .periodic import (
    CATALOG,
    CoefficientTable,
    PeriodicSignal,
    TrigCoefficientTable,
    coeff_exact,
    coeff_numeric,
    exact_table,
    frac_part,
    numeric_table,
)

__all__ = [
    "CATALOG",
    "CoefficientTable",
    "PeriodicSignal",
    "TrigCoefficientTable",
    "coeff_exact",
    "coeff_numeric",
    "exact_table",
    "frac_part",
    "numeric_table",
]
__version__ = "0.1.0"
