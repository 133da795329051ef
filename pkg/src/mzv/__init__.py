"""Exact computer algebra for multiple zeta values, polylogarithms and
associators in two non-commuting letters."""

__version__ = "0.1.0"
