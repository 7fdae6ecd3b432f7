"""Numerical laboratory for Hilbert-type integral operators on spaces of analytic functions."""

__version__ = "0.1.0"
