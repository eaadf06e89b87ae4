"""Topological fixed-point laboratory: exact set algebra, space/map catalog,
contraction and fixed-point verifiers, hyperspace and numeric checks."""

__version__ = "0.1.0"
