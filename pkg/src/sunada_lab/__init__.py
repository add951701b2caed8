"""Exact verification of Sunada triples, transplantation, orbifold covers, and
congruence S4 constructions over small prime moduli."""

__version__ = "0.1.0"
