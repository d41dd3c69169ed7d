"""Jacobian arithmetic on (n,s) curves via interpolation determinants."""

__version__ = "0.1.0"
