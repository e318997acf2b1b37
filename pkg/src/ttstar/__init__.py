"""Exact data dictionary and radial solver for the two-function tt*-Toda equations."""

__version__ = "0.1.0"
