"""
bisectd

Conforming newest-vertex bisection of d-dimensional simplicial meshes with
exact generation bookkeeping, and an analyzer that builds the regularized
mesh size function and checks its grading.
"""

__version__ = "0.1.0"
__author__ = "bisectd developers"

__all__ = ["__version__"]
