"""Exact-arithmetic toolkit for the tripartite no-signaling polytope."""

__version__ = "0.1.0"
