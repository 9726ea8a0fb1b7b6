"""Palindromic automorphism groups of free groups: word algebra, admissible
trees, quotient moduli complexes, exact homology and Farrell tables."""

__version__ = "0.1.0"
