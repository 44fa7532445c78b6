"""Independent oracles shared by the test modules."""

from itertools import product
from math import gcd


def orbit_closed_form(v, st) -> bool:
    """Point-class orbit membership from the rank-one structure of ``[[r, s1], [s2, t]]``.

    The image of the point under ``A1 (x) A2`` is the outer product of the
    second columns of ``A1`` and ``A2``.  A primitive pair ``(p, q)`` is such
    a column in ``Gamma(lam)`` exactly when ``lam | p``.
    """
    r, s1, s2, t = v
    if r * t != s1 * s2 or gcd(gcd(r, s1), gcd(s2, t)) != 1:
        return False
    return gcd(r, s1) % st.lambda1 == 0 and gcd(r, s2) % st.lambda2 == 0


def isotropic_primitive_box(bound: int):
    for v in product(range(-bound, bound + 1), repeat=4):
        r, s1, s2, t = v
        if r * t == s1 * s2 and gcd(gcd(r, s1), gcd(s2, t)) == 1:
            yield v


def matvec(rows, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in rows)


def mat2_inv_apply(W, vec):
    # W has det 1, so W^-1 = [[b, -a], [-d, c]]
    c, a, d, b = W.flat()
    x, y = vec
    return (b * x - a * y, -d * x + c * y)
