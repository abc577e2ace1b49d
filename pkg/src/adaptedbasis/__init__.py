"""Adapted homology bases for finite groups acting on Riemann surfaces."""

__version__ = "0.1.0"
