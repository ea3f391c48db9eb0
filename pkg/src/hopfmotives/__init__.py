"""Hopf-algebraic motive computations for twisted flag varieties."""

__version__ = "0.1.0"
