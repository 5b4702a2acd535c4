"""Exact tools for y^m = g_T(x), sums of Pochhammer-type products.

The modules build on one another: ``exact`` (polynomials over Q and integer
root finding), ``family`` (the g_T family), ``runge`` (Runge's method),
``pell``, ``search`` and ``curves``. ``cli`` wraps them as ``runge-kit``.
"""

__version__ = "0.1.0"

from .exact import Poly, IntInterval, InexactDivision
from .family import g_poly, product_poly, enumerate_tuples, InvalidTuple
from .runge import runge_solve, RungeInapplicable
from .kernels import BACKEND

__all__ = [
    "__version__",
    "Poly",
    "IntInterval",
    "InexactDivision",
    "g_poly",
    "product_poly",
    "enumerate_tuples",
    "InvalidTuple",
    "runge_solve",
    "RungeInapplicable",
    "BACKEND",
]
