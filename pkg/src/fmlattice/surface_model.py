"""Registry of the thirteen bielliptic surface types and their invariants.

A bielliptic surface is ``(A x B)/G`` with ``G = H x G0``.  Each row below
records the order of ``G0``, the rank of ``H`` as a group scheme, the order of
the canonical bundle, the minimal fiber intersections ``lambda1``/``lambda2``,
``F1.F2`` and the multiple-fiber multiplicities of the second fibration.

The numbers are stored as printed in the classification table and are
cross-checked against the identities that relate them (see
:func:`check_invariants`), so a typo in the data fails at import time.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import InvalidCharacteristic, LatticeError, UnknownType

__all__ = [
    "CharConstraint",
    "SurfaceType",
    "all_types",
    "lookup_type",
    "parse_label",
    "rank_of_G",
    "check_invariants",
]

MU2 = "mu2"


@dataclass(frozen=True)
class CharConstraint:
    """Predicate on the base-field characteristic.

    ``equals`` pins the characteristic to one prime; otherwise every value
    not listed in ``excludes`` is accepted (characteristic 0 included).
    """

    equals: int | None = None
    excludes: tuple[int, ...] = ()

    def __call__(self, p: int) -> bool:
        if self.equals is not None:
            return p == self.equals
        return p not in self.excludes

    def __str__(self) -> str:
        if self.equals is not None:
            return f"={self.equals}"
        return "!=" + ",".join(map(str, self.excludes))

    def to_record(self) -> dict:
        return {"text": str(self), "equals": self.equals, "excludes": list(self.excludes)}


@dataclass(frozen=True)
class SurfaceType:
    type_label: tuple[int, int | str]
    char_constraint: CharConstraint
    h_group: str
    g0_order: int
    h_rank: int
    ord_omega: int
    lambda1: int
    lambda2: int
    f1_dot_f2: int
    multiplicities: tuple[tuple[int, ...], ...]
    mu: int

    @property
    def label_text(self) -> str:
        s, t = self.type_label
        return f"{s},{t}"

    @property
    def is_mu2(self) -> bool:
        return self.type_label[1] == MU2

    def lam(self, i: int) -> int:
        """lambda_i for fibration index ``i`` in {1, 2}."""
        if i == 1:
            return self.lambda1
        if i == 2:
            return self.lambda2
        raise ValueError(f"fibration index must be 1 or 2, got {i!r}")

    def to_record(self) -> dict:
        return {
            "type_label": [self.type_label[0], self.type_label[1]],
            "char_constraint": self.char_constraint.to_record(),
            "h_group": self.h_group,
            "g0_order": self.g0_order,
            "h_rank": self.h_rank,
            "ord_omega": self.ord_omega,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "f1_dot_f2": self.f1_dot_f2,
            "multiplicities": [list(m) for m in self.multiplicities],
            "mu": self.mu,
        }

    def __str__(self) -> str:
        return f"({self.label_text}) char{self.char_constraint}"


def _row(label, char, h_group, g0, h_rank, ord_omega, l1, l2, f1f2, mults, mu):
    return SurfaceType(
        type_label=label,
        char_constraint=char,
        h_group=h_group,
        g0_order=g0,
        h_rank=h_rank,
        ord_omega=ord_omega,
        lambda1=l1,
        lambda2=l2,
        f1_dot_f2=f1f2,
        multiplicities=tuple(tuple(m) for m in mults),
        mu=mu,
    )


_NE2 = CharConstraint(excludes=(2,))
_EQ2 = CharConstraint(equals=2)
_NE3 = CharConstraint(excludes=(3,))
_EQ3 = CharConstraint(equals=3)
_NE23 = CharConstraint(excludes=(2, 3))

# Columns: label, char(k), H, |G0|, rank H, ord(omega), lambda1, lambda2,
# F1.F2, multiplicity variants, mu.
_TABLE = (
    _row((2, 1), _NE2, "e", 2, 1, 2, 1, 2, 2, [[2, 2, 2, 2]], 2),
    _row((2, 1), _EQ2, "e", 2, 1, 1, 1, 2, 2, [[2], [2, 2]], 2),
    _row((2, 2), _NE2, "Z/2Z", 2, 2, 2, 2, 2, 4, [[2, 2, 2, 2]], 2),
    _row((2, MU2), _EQ2, "mu2", 2, 2, 1, 2, 2, 4, [[2], [2, 2]], 2),
    _row((3, 1), _NE3, "e", 3, 1, 3, 1, 3, 3, [[3, 3, 3]], 3),
    _row((3, 1), _EQ3, "e", 3, 1, 1, 1, 3, 3, [[3]], 3),
    _row((3, 3), _NE3, "Z/3Z", 3, 3, 3, 3, 3, 9, [[3, 3, 3]], 3),
    _row((4, 1), _NE2, "e", 4, 1, 4, 1, 4, 4, [[2, 4, 4]], 4),
    _row((4, 1), _EQ2, "e", 4, 1, 1, 1, 4, 4, [[4]], 4),
    _row((4, 2), _NE2, "Z/2Z", 4, 2, 4, 2, 4, 8, [[2, 4, 4]], 4),
    _row((6, 1), _NE23, "e", 6, 1, 6, 1, 6, 6, [[2, 3, 6]], 6),
    _row((6, 1), _EQ2, "e", 6, 1, 3, 1, 6, 6, [[6, 3]], 6),
    _row((6, 1), _EQ3, "e", 6, 1, 2, 1, 6, 6, [[6, 2]], 6),
)


def rank_of_G(st: SurfaceType) -> int:
    """Rank of ``G = H x G0`` as a finite group scheme."""
    return st.g0_order * st.h_rank


def check_invariants(st: SurfaceType) -> None:
    """Raise :class:`LatticeError` if the row violates any numerical identity."""
    problems = []
    if st.f1_dot_f2 % st.mu or st.lambda1 != st.f1_dot_f2 // st.mu:
        problems.append("lambda1 != F1.F2 / mu")
    if st.lambda2 != st.mu:
        problems.append("lambda2 != mu")
    if st.f1_dot_f2 != rank_of_G(st):
        problems.append("F1.F2 != rank(G)")
    if not st.multiplicities or any(lcm(*m) != st.mu for m in st.multiplicities):
        problems.append("mu != lcm(multiplicities)")
    if st.lambda2 not in (2, 3, 4, 6):
        problems.append("lambda2 not in {2,3,4,6}")
    if problems:
        raise LatticeError(f"inconsistent row {st}: " + "; ".join(problems))


for _st in _TABLE:
    check_invariants(_st)
if len({(st.type_label, st.char_constraint) for st in _TABLE}) != len(_TABLE):
    raise LatticeError("duplicate (label, characteristic) rows")


def all_types() -> list[SurfaceType]:
    return list(_TABLE)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def parse_label(text) -> tuple[int, int | str]:
    """Accept ``"2,1"``, ``"2,mu2"``, ``"2,μ₂"`` or a ready-made tuple."""
    if isinstance(text, tuple):
        s, t = text
    else:
        parts = str(text).strip().strip("()").replace(" ", "").split(",")
        if len(parts) != 2:
            raise UnknownType(f"cannot parse type label {text!r}", label=str(text))
        s, t = parts
    try:
        s = int(s)
    except ValueError:
        raise UnknownType(f"cannot parse type label {text!r}", label=str(text)) from None
    if isinstance(t, str):
        low = t.lower()
        if low in ("mu2", "μ2", "μ₂", "mu_2"):
            t = MU2
        else:
            try:
                t = int(t)
            except ValueError:
                raise UnknownType(f"cannot parse type label {text!r}", label=str(text)) from None
    return (s, t)


def lookup_type(label, characteristic: int) -> SurfaceType:
    """Return the unique row matching ``label`` over a field of the given characteristic."""
    if characteristic != 0 and not _is_prime(characteristic):
        raise InvalidCharacteristic(
            f"characteristic must be 0 or a prime, got {characteristic}",
            characteristic=characteristic,
        )
    key = parse_label(label)
    for st in _TABLE:
        if st.type_label == key and st.char_constraint(characteristic):
            return st
    raise UnknownType(
        f"no bielliptic type {key[0]},{key[1]} in characteristic {characteristic}",
        label=f"{key[0]},{key[1]}",
        characteristic=characteristic,
    )
