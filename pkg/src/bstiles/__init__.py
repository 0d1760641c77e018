"""Aperiodic subshifts of finite type on Baumslag-Solitar groups."""

__version__ = "0.1.0"
