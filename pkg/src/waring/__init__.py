"""Exact Waring decompositions of monomials from structured rational apolar sets."""

__version__ = "0.1.0"
