"""Exact invariants and triviality criteria for weighted-homogeneous families of germs."""

__version__ = "0.1.0"
