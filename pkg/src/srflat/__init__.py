"""Symbolic analysis and flatness certification for Riemannian and
sub-Riemannian structures given by coordinate or constant-structure
frames."""

from .polycore import BACKEND
from .symexpr import Chart, Expr, SampleConfig, ZeroVerdict, is_zero, parse

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Chart",
    "Expr",
    "SampleConfig",
    "ZeroVerdict",
    "is_zero",
    "parse",
    "__version__",
]
