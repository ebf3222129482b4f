"""Exact computations with stable exterior forms."""

__version__ = "0.1.0"
