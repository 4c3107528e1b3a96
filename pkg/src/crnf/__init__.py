"""Exact normal forms and moving-frame derivations for 5-dimensional
totally nondegenerate CR submanifolds of C^4."""

__version__ = "0.1.0"
