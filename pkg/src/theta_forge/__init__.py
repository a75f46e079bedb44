"""Theta constants, period matrices and automorphism loci of low-genus curves."""

__version__ = "0.1.0"
