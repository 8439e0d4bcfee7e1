"""Batch rendering of threshold-scan CSV files into publication figures."""

__version__ = "0.1.0"
