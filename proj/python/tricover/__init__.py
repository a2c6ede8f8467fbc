"""Numerics on the real projective line, the three-fold cover kappa, the
tangent-addition group law and the averaged metric on moduli of marked points.

Points of P1(R) are floats (``math.inf`` for the point at infinity), string
tokens such as ``"1/3"`` or ``"inf"``, or homogeneous pairs ``(a, b)``.
"""

from ._core import *  # noqa: F401,F403
from ._core import InputError, NumericalError, TricoverError

__all__ = [name for name in dir() if not name.startswith("_")]
