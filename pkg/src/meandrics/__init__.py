"""Exact combinatorics of meanders, fatgraphs and matrix-model series."""

__version__ = "0.1.0"
