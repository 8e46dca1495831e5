"""Exact-arithmetic machinery for quivers with relations and sections.

Everything is computed over Q (fractions) or Z (arbitrary-precision ints);
no floating point is used anywhere.
"""

__version__ = "0.1.0"
