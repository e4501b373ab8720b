"""Obstruction engine for odd-dimensional ADE singularities."""

__version__ = "0.1.0"
