"""Exact homological algebra for finite dimensional Hopf algebras over F_p."""
__version__ = "0.1.0"
