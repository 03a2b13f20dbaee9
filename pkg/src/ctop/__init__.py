"""Combinatorial controlled spaces and their fundamental categories."""

__version__ = "0.1.0"
