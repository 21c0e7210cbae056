"""Kummer elements and Kummer spaces in cyclic algebras of prime degree."""

__version__ = "0.1.0"
