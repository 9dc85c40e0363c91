"""Spectra of 5×5 nonnegative bisymmetric matrices: feasibility and explicit construction"""

__version__ = "1.0"
