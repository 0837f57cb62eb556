"""Exact certificates for level-7 modular forms and the 3-local cubical-curve Hopf algebroid."""

__version__ = "0.1.0"
