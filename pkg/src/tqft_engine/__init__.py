"""Exact quantum topology engine for ribbon Hopf algebras given by structure constants."""

__version__ = "0.1.0"
