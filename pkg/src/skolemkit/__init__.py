"""Skolem and Langford sequences, their pairwise intersections, and the cyclic triple systems built from them."""

__version__ = "0.1.0"
