"""Exact-arithmetic toolkit for congruence lattices around the vol3 group."""

__version__ = "0.1.0"
