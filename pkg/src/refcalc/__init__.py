"""Exact reference calculator for support families, polars and finite-dimensional bialgebras."""

__version__ = "0.1.0"
