"""Finite-dimensional CAR/CCR representations, symmetric qubit powers and graded tapes."""

__version__ = "0.1.0"
