"""The numerical Mukai lattice ``Z + Num(X) + Z`` of a bielliptic surface.

Coordinates are ``(r, s1, s2, t)``: rank, the coefficients of ``F1/lambda1``
and ``F2/lambda2`` in ``ch1``, and the degree ``ch2``.  In this basis the two
divisor generators meet with intersection number 1, so every form below has
integer coefficients independent of the surface type.
"""

from __future__ import annotations

import operator
from math import gcd
from typing import NamedTuple

from .surface_model import SurfaceType

__all__ = [
    "MukaiVector",
    "POINT",
    "pairing",
    "euler_chi",
    "divisor_square",
    "divisor_chi",
    "fiber_degree",
    "is_isotropic",
    "is_primitive",
    "as_vector",
]


class MukaiVector(NamedTuple):
    r: int
    s1: int
    s2: int
    t: int

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.s1, -self.s2, -self.t)

    def to_list(self) -> list[int]:
        return [self.r, self.s1, self.s2, self.t]


POINT = MukaiVector(0, 0, 0, 1)


def as_vector(v) -> MukaiVector:
    """Coerce any length-4 integer sequence, rejecting non-integers."""
    if isinstance(v, MukaiVector):
        return v
    items = list(v)
    if len(items) != 4:
        raise ValueError(f"a Mukai vector has 4 entries, got {len(items)}")
    out = []
    for x in items:
        # numpy integers pass operator.index; floats and bools do not
        if isinstance(x, bool):
            raise TypeError("boolean is not a lattice coordinate")
        out.append(operator.index(x))
    return MukaiVector(*out)


def pairing(v, w) -> int:
    """Mukai pairing ``s1 s2' + s2 s1' - r t' - t r'``."""
    r, s1, s2, t = as_vector(v)
    r_, s1_, s2_, t_ = as_vector(w)
    return s1 * s2_ + s2 * s1_ - r * t_ - t * r_


def euler_chi(v, w) -> int:
    # K_X is numerically trivial and chi(O_X) = 0, so chi is minus the pairing
    return -pairing(v, w)


def divisor_square(s1: int, s2: int) -> int:
    return 2 * s1 * s2


def divisor_chi(s1: int, s2: int) -> int:
    """``chi(O(D)) = D^2 / 2`` for the divisor with coordinates ``(s1, s2)``."""
    return s1 * s2


def fiber_degree(v, i: int, st: SurfaceType) -> int:
    """Degree ``c1 . F_i`` of ``v`` on a fiber of the ``i``-th fibration.

    ``(F2/lambda2) . F1 = lambda1`` and ``(F1/lambda1) . F2 = lambda2``, so
    ``d1 = lambda1 * s2`` and ``d2 = lambda2 * s1``.
    """
    v = as_vector(v)
    if i == 1:
        return st.lambda1 * v.s2
    if i == 2:
        return st.lambda2 * v.s1
    raise ValueError(f"fibration index must be 1 or 2, got {i!r}")


def is_isotropic(v) -> bool:
    v = as_vector(v)
    return v.r * v.t == v.s1 * v.s2


def is_primitive(v) -> bool:
    v = as_vector(v)
    return gcd(gcd(v.r, v.s1), gcd(v.s2, v.t)) == 1
