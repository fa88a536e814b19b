"""Exact moments of Biane–Perelomov–Popov quantum random matrices."""

from .permutations import ExponentFunction, Permutation
from .polynomials import RationalFunctionOfN, SparsePoly

__version__ = "0.1.0"

__all__ = ["Permutation", "ExponentFunction", "RationalFunctionOfN", "SparsePoly", "__version__"]
