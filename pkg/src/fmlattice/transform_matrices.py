"""Exact integer 2x2 / 4x4 matrices for the generators of the autoequivalence action.

Conventions
-----------
* ``Mat2(c, a, d, b)`` is the matrix ``[[c, a], [d, b]]``; ``a`` is the
  upper-right entry, the one constrained by ``Gamma(lambda)``.
* ``kron(A, B)`` is the block matrix ``[[a11 B, a12 B], [a21 B, a22 B]]``.
  It acts on Mukai vectors grouped as ``((r, s1), (s2, t))``: writing the
  vector as the 2x2 array ``V = [[r, s1], [s2, t]]`` the action is
  ``V -> A V B^T``.  ``A`` therefore moves the rank together with ``s2``
  (the first fibration's degree) and ``B`` moves the rank together with
  ``s1``.
* Matrices act on column vectors.

All entries are Python integers; nothing here overflows or rounds.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

from .errors import InvalidGenerator
from .mukai_lattice import MukaiVector, as_vector
from .surface_model import SurfaceType

__all__ = [
    "Mat2",
    "Mat4",
    "Twist",
    "Shift",
    "Rfm1",
    "Rfm2",
    "GeneratorSpec",
    "gram",
    "kron",
    "twist_matrix",
    "shift_matrix",
    "rfm_matrix",
    "normalized_rfm_matrix",
    "gamma_factor",
    "generator_matrix",
    "is_in_gamma",
    "preserves_pairing",
    "kron_factor",
    "tensor_group_member",
    "isometry_inverse",
    "apply",
]


@dataclass(frozen=True)
class Mat2:
    c: int
    a: int
    d: int
    b: int

    @classmethod
    def from_rows(cls, rows) -> "Mat2":
        (c, a), (d, b) = rows
        return cls(c, a, d, b)

    @classmethod
    def from_flat(cls, entries: Iterable[int]) -> "Mat2":
        vals = [operator.index(x) for x in entries]
        if len(vals) != 4:
            raise ValueError(f"a 2x2 matrix has 4 entries, got {len(vals)}")
        return cls(*vals)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.c, self.a), (self.d, self.b))

    def flat(self) -> tuple[int, int, int, int]:
        return (self.c, self.a, self.d, self.b)

    def det(self) -> int:
        return self.c * self.b - self.a * self.d

    def __neg__(self) -> "Mat2":
        return Mat2(-self.c, -self.a, -self.d, -self.b)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.c * other.c + self.a * other.d,
                self.c * other.a + self.a * other.b,
                self.d * other.c + self.b * other.d,
                self.d * other.a + self.b * other.b,
            )
        x, y = other
        return (self.c * x + self.a * y, self.d * x + self.b * y)

    def inverse(self) -> "Mat2":
        det = self.det()
        if det not in (1, -1):
            raise ValueError(f"matrix {self.rows()} is not unimodular (det {det})")
        return Mat2(det * self.b, -det * self.a, -det * self.d, det * self.c)


@dataclass(frozen=True)
class Mat4:
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != 16:
            raise ValueError(f"a 4x4 matrix has 16 entries, got {len(self.entries)}")

    @classmethod
    def from_flat(cls, entries: Iterable[int]) -> "Mat4":
        return cls(tuple(operator.index(x) for x in entries))

    @classmethod
    def from_rows(cls, rows) -> "Mat4":
        return cls.from_flat(x for row in rows for x in row)

    @classmethod
    def identity(cls) -> "Mat4":
        return cls(tuple(int(i == j) for i in range(4) for j in range(4)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[4 * i + j]

    def rows(self) -> list[list[int]]:
        e = self.entries
        return [list(e[4 * i : 4 * i + 4]) for i in range(4)]

    def transpose(self) -> "Mat4":
        e = self.entries
        return Mat4(tuple(e[4 * j + i] for i in range(4) for j in range(4)))

    def __neg__(self) -> "Mat4":
        return Mat4(tuple(-x for x in self.entries))

    def __matmul__(self, other):
        e = self.entries
        if isinstance(other, Mat4):
            f = other.entries
            return Mat4(
                tuple(
                    sum(e[4 * i + k] * f[4 * k + j] for k in range(4))
                    for i in range(4)
                    for j in range(4)
                )
            )
        v = as_vector(other)
        return MukaiVector(*(sum(e[4 * i + k] * v[k] for k in range(4)) for i in range(4)))


# -- generator descriptions -------------------------------------------------


@dataclass(frozen=True)
class Twist:
    """Tensor with ``O(u1/lambda1 F1 + u2/lambda2 F2)``."""

    u1: int
    u2: int
    kind = "twist"

    def to_record(self) -> dict:
        return {"kind": self.kind, "u1": self.u1, "u2": self.u2}


@dataclass(frozen=True)
class Shift:
    n: int
    kind = "shift"

    def to_record(self) -> dict:
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class _Rfm:
    c: int
    a: int
    d: int
    b: int
    s: int = 0

    @property
    def fiber_matrix(self) -> Mat2:
        """The 2x2 law on (rank, fiber degree)."""
        return Mat2(self.c, self.a, self.d, self.b)

    def to_record(self) -> dict:
        return {"kind": self.kind, "c": self.c, "a": self.a, "d": self.d, "b": self.b, "s": self.s}


@dataclass(frozen=True)
class Rfm1(_Rfm):
    """Relative Fourier-Mukai transform along the smooth fibration ``f1``."""

    kind = "rfm1"
    fibration = 1


@dataclass(frozen=True)
class Rfm2(_Rfm):
    """Relative Fourier-Mukai transform along ``f2`` (the one with multiple fibers)."""

    kind = "rfm2"
    fibration = 2


GeneratorSpec = Union[Twist, Shift, Rfm1, Rfm2]


# -- constructors -----------------------------------------------------------

_GRAM = Mat4.from_rows([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
_LOWER = lambda u: Mat2(1, 0, u, 1)  # noqa: E731


def gram() -> Mat4:
    """Gram matrix of the Mukai pairing in the ``(r, s1, s2, t)`` basis."""
    return _GRAM


def kron(A: Mat2, B: Mat2) -> Mat4:
    a = A.rows()
    b = B.rows()
    return Mat4(tuple(a[i][k] * b[j][l] for i in range(2) for j in range(2) for k in range(2) for l in range(2)))


def twist_matrix(u1: int, u2: int) -> Mat4:
    return kron(_LOWER(u2), _LOWER(u1))


def shift_matrix(n: int) -> Mat4:
    # the lattice only sees the parity of the shift
    return -Mat4.identity() if n % 2 else Mat4.identity()


def _validate_rfm(spec: _Rfm, lam: int) -> None:
    if spec.c * spec.b - spec.a * spec.d != 1:
        raise InvalidGenerator(
            f"{spec.kind}: det {spec.c * spec.b - spec.a * spec.d} != 1", spec=spec.to_record()
        )
    if spec.d % lam:
        raise InvalidGenerator(f"{spec.kind}: lambda={lam} does not divide d={spec.d}", spec=spec.to_record())
    if spec.a <= 0:
        raise InvalidGenerator(f"{spec.kind}: a={spec.a} must be positive", spec=spec.to_record())


def gamma_factor(c: int, a: int, d: int, b: int, lam: int) -> Mat2:
    """``[[c, a lam], [d / lam, b]]``: the lattice image of a fiber law ``[[c, a], [d, b]]``."""
    return Mat2(c, a * lam, d // lam, b)


def rfm_matrix(spec: Rfm1 | Rfm2, st: SurfaceType) -> Mat4:
    lam = st.lam(spec.fibration)
    _validate_rfm(spec, lam)
    G = gamma_factor(spec.c, spec.a, spec.d, spec.b, lam)
    if spec.fibration == 1:
        return kron(G, _LOWER(spec.s))
    return kron(_LOWER(spec.s), G)


def normalized_rfm_matrix(c: int, a: int, d: int, b: int, st: SurfaceType, fibration: int) -> Mat4:
    """Relative transform with its shear removed by a twist."""
    cls = Rfm1 if fibration == 1 else Rfm2 if fibration == 2 else None
    if cls is None:
        raise ValueError(f"fibration must be 1 or 2, got {fibration!r}")
    return rfm_matrix(cls(c, a, d, b, 0), st)


def generator_matrix(g: GeneratorSpec, st: SurfaceType) -> Mat4:
    if isinstance(g, Twist):
        return twist_matrix(g.u1, g.u2)
    if isinstance(g, Shift):
        return shift_matrix(g.n)
    if isinstance(g, (Rfm1, Rfm2)):
        return rfm_matrix(g, st)
    raise TypeError(f"not a generator: {g!r}")


# -- predicates and factorization --------------------------------------------


def is_in_gamma(A: Mat2, lam: int) -> bool:
    return A.det() == 1 and A.a % lam == 0


def preserves_pairing(M: Mat4) -> bool:
    return M.transpose() @ _GRAM @ M == _GRAM


def _content(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def kron_factor(M: Mat4) -> tuple[Mat2, Mat2] | None:
    """Split ``M = A (x) B`` with ``det A, det B = +-1``, or return ``None``.

    The pair is only defined up to ``(-A, -B)``; the returned ``B`` has a
    positive first nonzero entry in row-major order.
    """
    blocks = [[tuple(M[2 * i + j, 2 * k + l] for j in range(2) for l in range(2)) for k in range(2)] for i in range(2)]
    pivot = next((blk for row in blocks for blk in row if any(blk)), None)
    if pivot is None:
        return None
    # det B = +-1 forces B to be primitive, so B is the pivot block up to sign
    g = _content(pivot)
    B = [x // g for x in pivot]
    j0 = next(i for i, x in enumerate(B) if x)
    if B[j0] < 0:
        B = [-x for x in B]
    coeffs = []
    for row in blocks:
        for blk in row:
            if blk[j0] % B[j0]:
                return None
            q = blk[j0] // B[j0]
            if any(x != q * y for x, y in zip(blk, B)):
                return None
            coeffs.append(q)
    A2, B2 = Mat2(*coeffs), Mat2(*B)
    if A2.det() not in (1, -1) or B2.det() not in (1, -1):
        return None
    return A2, B2


def tensor_group_member(M: Mat4, st: SurfaceType) -> bool:
    """True iff ``M = A1 (x) A2`` with ``A_i`` in ``Gamma(lambda_i)``."""
    fac = kron_factor(M)
    if fac is None:
        return False
    A, B = fac
    for sA, sB in ((A, B), (-A, -B)):
        if is_in_gamma(sA, st.lambda1) and is_in_gamma(sB, st.lambda2):
            return True
    return False


def isometry_inverse(M: Mat4) -> Mat4:
    """Inverse of a pairing-preserving matrix: ``G M^T G`` since ``G^2 = I``."""
    if not preserves_pairing(M):
        raise ValueError("matrix does not preserve the Mukai pairing")
    return _GRAM @ M.transpose() @ _GRAM


def apply(M: Mat4, v) -> MukaiVector:
    return M @ v
