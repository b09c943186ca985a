"""Exact McKay-correspondence computations for finite subgroups of SL(n, C)."""

__version__ = "0.1.0"
