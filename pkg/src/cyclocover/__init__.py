"""Exact arithmetic for cyclic covers of the projective line over finite fields."""

__version__ = "0.1.0"
