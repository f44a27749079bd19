"""Graded-lexicographic multi-index enumeration and product tables.

The orthonormal monomial basis of total degree <= N in n complex variables
is indexed here once per (n, N) pair; operator assembly reuses the cached
shift and product tables instead of redoing dictionary algebra per column.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["IndexSpace", "index_space", "basis_indices", "space_dim"]


def space_dim(n: int, N: int) -> int:
    """Number of multi-indices with |alpha| <= N in n variables."""
    return math.comb(N + n, n)


def basis_indices(n: int, N: int) -> list[tuple[int, ...]]:
    """All multi-indices of length n with |alpha| <= N in graded-lex order.

    Graded first by total degree, then lexicographically on the tuple; the
    ordering is what makes serialized matrices reproducible.
    """
    out: list[tuple[int, ...]] = []
    for deg in range(N + 1):
        out.extend(sorted(_compositions(deg, n)))
    return out


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, n - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class IndexSpace:
    """Cached index bookkeeping for one (n, N) truncation."""

    n: int
    N: int
    indices: tuple[tuple[int, ...], ...]
    position: dict
    degrees: np.ndarray
    # shift[v][i] = position of indices[i] + e_v, or -1 when that exceeds N
    shift: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.indices)

    def positions_up_to(self, degree: int) -> np.ndarray:
        """Positions of all indices with total degree <= degree."""
        return np.nonzero(self.degrees <= degree)[0]

    def mul_table(self) -> np.ndarray:
        """table[i, j] = position of indices[i] + indices[j], or -1."""
        return _mul_table(self.n, self.N)


@lru_cache(maxsize=32)
def index_space(n: int, N: int) -> IndexSpace:
    if n < 1 or N < 0:
        raise ValueError(f"need n >= 1 and N >= 0, got n={n}, N={N}")
    idx = tuple(basis_indices(n, N))
    pos = {a: i for i, a in enumerate(idx)}
    degrees = np.array([sum(a) for a in idx], dtype=np.int64)
    shift = np.full((n, len(idx)), -1, dtype=np.int64)
    for i, a in enumerate(idx):
        for v in range(n):
            b = a[:v] + (a[v] + 1,) + a[v + 1 :]
            shift[v, i] = pos.get(b, -1)
    return IndexSpace(n=n, N=N, indices=idx, position=pos, degrees=degrees, shift=shift)


@lru_cache(maxsize=16)
def _mul_table(n: int, N: int) -> np.ndarray:
    space = index_space(n, N)
    dim = space.dim
    table = np.full((dim, dim), -1, dtype=np.int64)
    for i, a in enumerate(space.indices):
        for j, b in enumerate(space.indices):
            s = tuple(x + y for x, y in zip(a, b))
            table[i, j] = space.position.get(s, -1)
    return table
