"""Numerical Atangana-Baleanu fractional calculus for complex orders."""

__version__ = "0.1.0"
