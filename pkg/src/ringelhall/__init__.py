"""Symmetric functions, classical and cyclic-quiver Hall algebras, exact arithmetic."""

__version__ = "0.1.0"
