"""Reduce an admissible Mukai vector to the point class by explicit generators.

The reduction runs in three moves.  A relative transform along ``f1`` kills
the rank (or, when the rank/degree gcd condition fails, the first fiber
degree, followed by a rank-kill along ``f2``).  The surviving rank-zero
isotropic vector is ``(0, a lambda_i, 0, b)``-shaped for one fibration, and a
final relative transform along that fibration carries the point class onto
it.

The engine records the generators in the *forward* direction: the returned
word, applied left to right to ``(0, 0, 0, 1)``, produces the input vector.
Every report is checked by exact matrix multiplication before it is
returned.

:func:`orbit_bfs_oracle` is an independent brute-force check: a
breadth-first search over short words in bounded generators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from . import _kernels
from .errors import (
    BothZero,
    FractionalFiberClass,
    HypothesisFailed,
    InvalidGenerator,
    LatticeError,
    NonpositiveA,
    NotCoprime,
    NotInOrbit,
    NotIsotropic,
    NotPrimitive,
    ZeroRank,
)
from .mukai_lattice import POINT, MukaiVector, as_vector, fiber_degree, is_isotropic, is_primitive
from .surface_model import SurfaceType
from .transform_matrices import (
    GeneratorSpec,
    Mat2,
    Mat4,
    Rfm1,
    Rfm2,
    Shift,
    Twist,
    gamma_factor,
    generator_matrix,
    is_in_gamma,
    isometry_inverse,
    kron,
    shift_matrix,
    twist_matrix,
)

__all__ = [
    "GeneratorWord",
    "ReductionReport",
    "ext_gcd",
    "erd_rank_kill",
    "erd_degree_kill",
    "solve_final_rfm",
    "reduce_vector",
    "realize_tensor",
    "orbit_bfs_oracle",
    "bfs_reachable",
    "default_bfs_cap",
]


# -- words and reports ------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """Generators applied left to right; ``matrix`` is ``g_k ... g_2 g_1``."""

    factors: tuple[GeneratorSpec, ...]
    matrix: Mat4

    @classmethod
    def build(cls, factors, st: SurfaceType) -> "GeneratorWord":
        factors = tuple(factors)
        M = Mat4.identity()
        for g in factors:
            M = generator_matrix(g, st) @ M
        return cls(factors, M)

    def __len__(self) -> int:
        return len(self.factors)

    def to_record(self) -> list[dict]:
        return [g.to_record() for g in self.factors]


@dataclass
class ReductionReport:
    input: MukaiVector
    word: GeneratorWord
    trace: list[MukaiVector]
    verified: bool
    steps: list[dict] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "input": self.input.to_list(),
            "word": self.word.to_record(),
            "trace": [v.to_list() for v in self.trace],
            "matrix": list(self.word.matrix.entries),
            "verified": self.verified,
            "steps": self.steps,
        }


# -- Bezout-type constructions ----------------------------------------------


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``a x + b y = g``."""
    if a == 0 and b == 0:
        raise BothZero("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def erd_rank_kill(r: int, d: int, lam: int) -> Mat2:
    """Fiber law ``W`` in Gamma-form with ``W^-1 (r, d) = (0, gcd(r, d))``.

    Requires ``gcd(lam, d/h) = 1`` where ``h = gcd(r, d)``; the lower-left
    entry of ``W`` is then made divisible by ``lam``.
    """
    if r == 0:
        raise ZeroRank("rank-kill needs a nonzero rank", r=r, d=d)
    h = gcd(r, d)
    rh, dh = r // h, d // h
    if gcd(lam, dh) != 1:
        raise HypothesisFailed(
            f"gcd(lambda, d/h) = gcd({lam}, {dh}) != 1", r=r, d=d, lam=lam, h=h
        )
    _, x, y = ext_gcd(dh, rh)
    y = -y  # x d/h - y r/h = 1
    n = next(k for k in range(lam) if (y - k * dh) % lam == 0)
    return Mat2(x - n * rh, rh, y - n * dh, dh)


def erd_degree_kill(r: int, d: int, lam: int) -> Mat2:
    """Fiber law ``W = [[r/h, y], [d/h, x]]`` with ``y > 0`` and ``W^-1 (r, d) = (h, 0)``."""
    _, _, _ = ext_gcd(r, d)  # rejects (0, 0)
    h = gcd(r, d)
    rh, dh = r // h, d // h
    if dh % lam:
        raise HypothesisFailed(f"lambda={lam} does not divide d/h={dh}", r=r, d=d, lam=lam, h=h)
    _, x, y = ext_gcd(rh, dh)
    y = -y  # x r/h - y d/h = 1
    if rh:
        m = abs(rh)
        y_new = (y - 1) % m + 1
        k = (y_new - y) // rh
        x, y = x + k * dh, y_new
    elif y <= 0:
        raise HypothesisFailed("no solution with positive upper-right entry", r=r, d=d, lam=lam)
    return Mat2(rh, y, dh, x)


def solve_final_rfm(a: int, b: int, lam: int) -> Mat2:
    """Fiber law ``[[c, a], [d, b]]`` sending the point class to ``(0, a F, b)``.

    ``c`` is the least positive residue of ``b^-1`` modulo ``a lam``.
    """
    if a <= 0:
        raise NonpositiveA(f"a={a} must be positive", a=a, b=b, lam=lam)
    m = a * lam
    if gcd(m, b) != 1:
        raise NotCoprime(f"gcd(a*lambda, b) = gcd({m}, {b}) != 1", a=a, b=b, lam=lam)
    c = (pow(b, -1, m) - 1) % m + 1
    return Mat2(c, a, (c * b - 1) // a, b)


# -- the reduction pipeline ---------------------------------------------------


def _rfm(fibration: int, W: Mat2) -> Rfm1 | Rfm2:
    cls = Rfm1 if fibration == 1 else Rfm2
    return cls(W.c, W.a, W.d, W.b, 0)


def _rank_obstruction(v: MukaiVector, st: SurfaceType) -> None:
    # Images of a point have rank divisible by ord(omega); for trivial omega the
    # unit-rank classes are twists of +-(1,0,0,0), which no autoequivalence reaches.
    if abs(v.r) == 1:
        raise NotInOrbit(
            "rank +-1 classes are not images of a point", stage="rank-obstruction", r=v.r
        )
    if v.r % st.ord_omega:
        raise NotInOrbit(
            f"rank {v.r} is not divisible by ord(omega)={st.ord_omega}",
            stage="rank-obstruction",
            r=v.r,
            ord_omega=st.ord_omega,
        )


def _mu2_contradiction(w: MukaiVector, st: SurfaceType, steps: list[dict]) -> None:
    """Carry ``(r', s, 0, 0)`` with odd ``r'`` to ``(1, 0, 0, 0)`` and give up."""
    lam2 = st.lambda2
    r_, s = w.r, w.s1
    _, y, x = ext_gcd(r_, s)  # y r' + x s = 1
    n = -((x - 1) // r_)  # smallest n with x + n r' >= 1
    while (x + n * r_) % lam2:
        n += 1
    g = Rfm2(y - s * n, (x + n * r_) // lam2, -s * lam2, r_, 0)
    w2 = generator_matrix(g, st) @ w
    if w2.r != 1 or w2.s1 != 0 or w2.t != 0:
        raise LatticeError(f"internal: mu2 construction produced {w2}")
    tw = Twist(0, -w2.s2)
    w3 = generator_matrix(tw, st) @ w2
    steps.append(
        {"stage": "mu2-branch", "x": x, "y": y, "n": n, "rfm2": g.to_record(), "twist": tw.to_record(),
         "after_rfm2": w2.to_list(), "terminal": w3.to_list()}
    )
    raise NotInOrbit(
        "type (2,mu2) branch reaches (1,0,0,0), which is not the image of a point",
        stage="mu2-branch",
        terminal=w3.to_list(),
        steps=steps,
    )


def reduce_vector(v, st: SurfaceType) -> ReductionReport:
    """Factor ``v`` as the image of the point class under a generator word."""
    v = as_vector(v)
    if not is_isotropic(v):
        raise NotIsotropic(f"{tuple(v)} has pairing {2 * (v.s1 * v.s2 - v.r * v.t)} != 0", vector=v.to_list())
    if not is_primitive(v):
        raise NotPrimitive(f"{tuple(v)} is not primitive", vector=v.to_list())
    _rank_obstruction(v, st)

    lam1, lam2 = st.lambda1, st.lambda2
    outer: list[GeneratorSpec] = []  # v = outer[0] outer[1] ... w
    steps: list[dict] = []
    w = v

    def peel(g: GeneratorSpec) -> None:
        nonlocal w
        outer.append(g)
        w = isometry_inverse(generator_matrix(g, st)) @ w

    if w.r:
        if w.r < 0:
            peel(Shift(1))
            steps.append({"stage": "sign", "vector": w.to_list()})
        d1 = fiber_degree(w, 1, st)
        h = gcd(w.r, d1)
        r0 = w.r
        if lam1 == 1 or gcd(lam1 * r0, d1) == h:
            W = erd_rank_kill(r0, d1, lam1)
            peel(_rfm(1, W))
            steps.append({"stage": "rank-kill-f1", "r": r0, "d": d1, "h": h, "W": list(W.flat()), "vector": w.to_list()})
        else:
            W = erd_degree_kill(r0, d1, lam1)
            peel(_rfm(1, W))
            steps.append({"stage": "degree-kill-f1", "r": r0, "d": d1, "h": h, "W": list(W.flat()), "vector": w.to_list()})
            # isotropy with d1 = 0 and r != 0 leaves (r', s, 0, 0)
            if w.r % lam2 == 0:
                r1, d2 = w.r, fiber_degree(w, 2, st)
                W2 = erd_rank_kill(r1, d2, lam2)
                peel(_rfm(2, W2))
                steps.append({"stage": "rank-kill-f2", "r": r1, "d": d2, "h": gcd(r1, d2), "W": list(W2.flat()), "vector": w.to_list()})
            elif st.is_mu2:
                _mu2_contradiction(w, st, steps)
            else:
                raise NotInOrbit(
                    f"rank {w.r} after the f1 step is not divisible by lambda2={lam2}",
                    stage="rank-f2",
                    vector=w.to_list(),
                    steps=steps,
                )
        if w.r != 0:
            raise LatticeError(f"internal: rank not killed, got {w}")

    # rank 0 and isotropic: s1 * s2 = 0
    if w.s1 == 0 and w.s2 == 0:
        if w.t == -1:
            peel(Shift(1))
    else:
        i, coord = (1, w.s1) if w.s2 == 0 else (2, w.s2)
        lam = st.lam(i)
        if coord % lam:
            raise FractionalFiberClass(
                f"fiber coefficient {coord} along f{i} is not in {lam}Z",
                fibration=i,
                coefficient=coord,
                lam=lam,
                vector=w.to_list(),
            )
        a, b = coord // lam, w.t
        if a < 0:
            peel(Shift(1))
            a, b = -a, -b
        W = solve_final_rfm(a, b, lam)
        peel(_rfm(i, W))
        steps.append({"stage": f"final-f{i}", "a": a, "b": b, "W": list(W.flat())})
    if w != POINT:
        raise LatticeError(f"internal: reduction ended at {w}")

    word = GeneratorWord.build(reversed(outer), st)
    trace = []
    x = POINT
    for g in word.factors:
        x = generator_matrix(g, st) @ x
        trace.append(x)
    verified = word.matrix @ POINT == v and (not trace or trace[-1] == v)
    if not verified:
        raise LatticeError(f"internal: word does not reproduce {tuple(v)}")
    return ReductionReport(v, word, trace, verified, steps)


# -- surjectivity: words for arbitrary A1 (x) A2 -------------------------------


def _realize_factor(A: Mat2, lam: int, fibration: int) -> list[GeneratorSpec]:
    if not is_in_gamma(A, lam):
        raise InvalidGenerator(f"{A.rows()} is not in Gamma({lam})", matrix=list(A.flat()), lam=lam)
    a = A.a // lam
    if a > 0:
        return [_rfm(fibration, Mat2(A.c, a, A.d * lam, A.b))]
    if a < 0:
        return [_rfm(fibration, Mat2(-A.c, -a, -A.d * lam, -A.b)), Shift(1)]
    # lower triangular: +-[[1, 0], [k, 1]]
    sign = A.c
    k = A.d * sign
    tw = Twist(0, k) if fibration == 1 else Twist(k, 0)
    return [tw] if sign == 1 else [tw, Shift(1)]


def realize_tensor(A1: Mat2, A2: Mat2, st: SurfaceType) -> GeneratorWord:
    """Generator word whose matrix is exactly ``A1 (x) A2``."""
    factors = _realize_factor(A2, st.lambda2, 2) + _realize_factor(A1, st.lambda1, 1)
    word = GeneratorWord.build(factors, st)
    if word.matrix != kron(A1, A2):
        raise LatticeError("internal: realized word does not match the target")
    return word


# -- brute-force orbit oracle -------------------------------------------------


def default_bfs_cap(param_bound: int) -> int:
    env = os.environ.get("FM_LATTICE_BFS_CAP")
    if env:
        return int(env)
    return 10 * param_bound


def _completion(a: int, b: int, lam: int) -> tuple[int, int] | None:
    # scan c = 0, 1, -1, 2, -2, ... for c b = 1 mod a lam
    m = a * lam
    for k in range(2 * m + 1):
        c = (k + 1) // 2 * (1 if k % 2 else -1)
        if (c * b - 1) % m == 0:
            return c, (c * b - 1) // a
    return None


@lru_cache(maxsize=None)
def _bfs_generators(lam1: int, lam2: int, param_bound: int) -> np.ndarray:
    B = param_bound
    mats = [shift_matrix(1)]
    mats += [twist_matrix(u1, u2) for u1 in range(-B, B + 1) for u2 in range(-B, B + 1) if u1 or u2]
    for fibration, lam in ((1, lam1), (2, lam2)):
        for a in range(1, B + 1):
            for b in range(-B, B + 1):
                cd = _completion(a, b, lam)
                if cd is None:
                    continue
                G = gamma_factor(cd[0], a, cd[1], b, lam)
                mats.append(kron(G, Mat2.identity()) if fibration == 1 else kron(Mat2.identity(), G))
    return np.array([m.rows() for m in mats], dtype=np.int64)


@lru_cache(maxsize=64)
def _bfs_reachable_keys(lam1: int, lam2: int, word_len: int, param_bound: int, cap: int, backend: str) -> np.ndarray:
    gens = _bfs_generators(lam1, lam2, param_bound)
    chunk = max(1, 2_000_000 // len(gens))
    visited = _kernels.encode(np.array([POINT], dtype=np.int64), cap)
    frontier = np.array([POINT], dtype=np.int64)
    for _ in range(word_len):
        parts = [_kernels.expand(frontier[i : i + chunk], gens, cap, backend) for i in range(0, len(frontier), chunk)]
        cand = np.unique(np.concatenate(parts))
        new = np.setdiff1d(cand, visited, assume_unique=True)
        if new.size == 0:
            break
        visited = np.union1d(visited, new)
        frontier = _kernels.decode(new, cap)
    visited.setflags(write=False)
    return visited


def bfs_reachable(st: SurfaceType, word_len: int, param_bound: int, cap: int | None = None,
                  backend: str | None = None) -> np.ndarray:
    """All vectors reached from the point class, as an ``(n, 4)`` array (sorted by key)."""
    if word_len < 1 or param_bound < 1:
        raise ValueError("word_len and param_bound must be >= 1")
    cap = default_bfs_cap(param_bound) if cap is None else cap
    keys = _bfs_reachable_keys(st.lambda1, st.lambda2, word_len, param_bound, cap, backend or _kernels.BACKEND)
    return _kernels.decode(keys, cap)


def orbit_bfs_oracle(v, st: SurfaceType, word_len: int, param_bound: int, cap: int | None = None,
                     backend: str | None = None) -> bool:
    """Whether some word of length <= ``word_len`` in bounded generators reaches ``v``.

    One-sided: ``False`` may only mean the bounds are too small.  Generators
    are the shift, twists with ``|u_i| <= param_bound`` and relative
    transforms along either fibration whose point image ``(a, b)`` has
    ``1 <= a <= param_bound``, ``|b| <= param_bound``.  States leaving the box
    ``|entry| <= cap`` are discarded.
    """
    if word_len < 1 or param_bound < 1:
        raise ValueError("word_len and param_bound must be >= 1")
    v = as_vector(v)
    cap = default_bfs_cap(param_bound) if cap is None else cap
    if max(map(abs, v)) > cap:
        return False
    keys = _bfs_reachable_keys(st.lambda1, st.lambda2, word_len, param_bound, cap, backend or _kernels.BACKEND)
    key = int(_kernels.encode(np.array(v, dtype=np.int64), cap))
    i = int(np.searchsorted(keys, key))
    return i < len(keys) and int(keys[i]) == key
