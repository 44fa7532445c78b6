"""Frontier expansion for the breadth-first orbit search.

The search state is a Mukai vector with every entry in ``[-cap, cap]``,
packed into one int64 key (base ``2*cap + 1``).  Expanding a frontier means
multiplying every state by every generator matrix, dropping images outside the
box and packing the survivors.  Two interchangeable implementations:

* a numba ``@njit`` loop (default when numba imports), and
* a vectorised numpy path.

Set ``FM_LATTICE_DISABLE_NUMBA=1`` to force the numpy path.  Both return the
same multiset of keys in the same order.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "MAX_CAP",
    "encode",
    "decode",
    "expand_numpy",
    "expand_numba",
    "expand",
]

# (2*cap + 1)**4 must stay below 2**63
MAX_CAP = 27_000

_DISABLED = os.environ.get("FM_LATTICE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by FM_LATTICE_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

BACKEND = "numba" if njit is not None else "numpy"


def _check_cap(cap: int) -> None:
    if not 1 <= cap <= MAX_CAP:
        raise ValueError(f"cap must be in [1, {MAX_CAP}], got {cap}")


def encode(vecs: np.ndarray, cap: int) -> np.ndarray:
    _check_cap(cap)
    base = 2 * cap + 1
    v = np.asarray(vecs, dtype=np.int64) + cap
    return v[..., 0] + base * (v[..., 1] + base * (v[..., 2] + base * v[..., 3]))


def decode(keys: np.ndarray, cap: int) -> np.ndarray:
    _check_cap(cap)
    base = 2 * cap + 1
    k = np.asarray(keys, dtype=np.int64)
    out = np.empty(k.shape + (4,), dtype=np.int64)
    for i in range(4):
        out[..., i] = k % base - cap
        k = k // base
    return out


def expand_numpy(frontier: np.ndarray, gens: np.ndarray, cap: int) -> np.ndarray:
    _check_cap(cap)
    images = np.einsum("gik,nk->ngi", gens, frontier)
    keep = np.all(np.abs(images) <= cap, axis=-1)
    return encode(images[keep], cap)


if njit is not None:

    @njit(cache=True)
    def _expand_kernel(frontier, gens, cap):
        n_states = frontier.shape[0]
        n_gens = gens.shape[0]
        base = 2 * cap + 1
        out = np.empty(n_states * n_gens, dtype=np.int64)
        m = 0
        for n in range(n_states):
            for g in range(n_gens):
                key = 0
                scale = 1
                inside = True
                for i in range(4):
                    acc = 0
                    for k in range(4):
                        acc += gens[g, i, k] * frontier[n, k]
                    if acc > cap or acc < -cap:
                        inside = False
                        break
                    key += (acc + cap) * scale
                    scale *= base
                if inside:
                    out[m] = key
                    m += 1
        return out[:m]

    def expand_numba(frontier: np.ndarray, gens: np.ndarray, cap: int) -> np.ndarray:
        _check_cap(cap)
        return _expand_kernel(
            np.ascontiguousarray(frontier, dtype=np.int64),
            np.ascontiguousarray(gens, dtype=np.int64),
            np.int64(cap),
        )

else:
    expand_numba = None


def expand(frontier: np.ndarray, gens: np.ndarray, cap: int, backend: str | None = None) -> np.ndarray:
    """Packed keys of all in-box images ``g @ v`` (duplicates kept)."""
    backend = backend or BACKEND
    if backend == "numba":
        if expand_numba is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return expand_numba(frontier, gens, cap)
    if backend == "numpy":
        return expand_numpy(frontier, gens, cap)
    raise ValueError(f"unknown backend {backend!r}")
