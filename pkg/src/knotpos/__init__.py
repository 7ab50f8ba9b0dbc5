"""Oriented link diagrams, skein polynomials, signatures, and positivity."""

__version__ = "0.1.0"
