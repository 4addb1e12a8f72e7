"""Exact models for transverse Kähler foliations: Hirsch extensions, minimal
models, Dolbeault-type models and mixed Hodge bigradings over Q and Q(i)."""

__version__ = "0.1.0"
