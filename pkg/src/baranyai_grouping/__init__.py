"""Commuting-group measurement compiler for second-quantised Hamiltonians."""

__version__ = "0.1.0"
