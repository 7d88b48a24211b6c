"""Exact computations with constructive Krull dimension."""

__version__ = "0.1.0"
