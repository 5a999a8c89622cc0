"""Exact-arithmetic tools for quadratic points on cyclic covers of projective space."""

__version__ = "0.1.0"
