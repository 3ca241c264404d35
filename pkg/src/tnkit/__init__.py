"""Exact lattice computations around Tate-Nakayama duality for finite groups."""

__version__ = "0.1.0"
