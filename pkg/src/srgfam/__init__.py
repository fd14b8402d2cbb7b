"""Exact construction and verification of the strongly regular graphs
((n^2+3n-1)^2, n^2(n+3), 1, n(n+1)) and their F_3 / projective-cap structure."""

__version__ = "0.1.0"
