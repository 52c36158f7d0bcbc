"""Exact-arithmetic toolkit for hypergeometric differential systems."""

__version__ = "0.1.0"
