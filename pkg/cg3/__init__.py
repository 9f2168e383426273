"""Exact Clebsch–Gordan coefficients for gl3 in the Gelfand–Tsetlin basis."""

__version__ = "0.1.0"
