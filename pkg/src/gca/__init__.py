"""Exact computations for the centrally extended planar Galilean conformal algebra."""

__version__ = "0.1.0"
