"""Husimi distributions for coherent states of hyperbolic Landau levels."""

__version__ = "0.1.0"
