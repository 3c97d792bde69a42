"""Integer quadratic functions on a box, and the exhaustive check of their sign.

For a symmetric integer matrix ``a`` with unit diagonal and non-positive
off-diagonal entries, and a vector ``n`` of positive integers,

    f(m) = sum_{k,l} a[k][l] * m_k * (n_l - m_l),    0 <= m <= n.

If ``f(e_l) <= 0`` for every unit vector, then ``f <= 0`` on the whole box.
:func:`quad_lemma_check` verifies that statement by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidInputError, SizeLimitError

BOX_LIMIT = 1_000_000


@dataclass(frozen=True)
class QuadForm:
    a: Tuple[Tuple[int, ...], ...]
    n_vec: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.a)
        n_vec = tuple(int(x) for x in self.n_vec)
        r = len(n_vec)
        if r == 0 or len(a) != r or any(len(row) != r for row in a):
            raise InvalidInputError("a must be r x r with r = len(n_vec) >= 1")
        if any(x < 1 for x in n_vec):
            raise InvalidInputError(f"n_vec entries must be positive, got {n_vec}")
        for k in range(r):
            if a[k][k] != 1:
                raise InvalidInputError(f"diagonal entry a[{k}][{k}] must be 1")
            for l in range(r):
                if a[k][l] != a[l][k]:
                    raise InvalidInputError("a must be symmetric")
                if k != l and a[k][l] > 0:
                    raise InvalidInputError("off-diagonal entries must be <= 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "n_vec", n_vec)

    @property
    def r(self) -> int:
        return len(self.n_vec)

    def unit(self, l: int) -> Tuple[int, ...]:
        return tuple(int(k == l) for k in range(self.r))

    def box(self) -> Iterator[Tuple[int, ...]]:
        return product(*(range(nk + 1) for nk in self.n_vec))

    @property
    def box_size(self) -> int:
        return prod(nk + 1 for nk in self.n_vec)


def quad_f(Q: QuadForm, m: Sequence[int]) -> int:
    m = tuple(int(x) for x in m)
    if len(m) != Q.r or any(not 0 <= mk <= nk for mk, nk in zip(m, Q.n_vec)):
        raise InvalidInputError(f"m = {m} lies outside the box 0 <= m <= {Q.n_vec}")
    return sum(
        Q.a[k][l] * m[k] * (Q.n_vec[l] - m[l])
        for k in range(Q.r)
        for l in range(Q.r)
    )


@dataclass(frozen=True)
class QuadLemmaResult:
    """``premise`` is whether all ``f(e_l) <= 0``; ``holds`` is meaningful only then."""

    premise: bool
    holds: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.premise and self.holds


def quad_table(Q: QuadForm, limit: int = BOX_LIMIT) -> np.ndarray:
    """``f`` at every box point, as an array indexed by ``m`` itself."""
    if Q.box_size > limit:
        raise SizeLimitError(f"box has {Q.box_size} points, limit is {limit}")
    a = np.array(Q.a, dtype=np.int64)
    n = np.array(Q.n_vec, dtype=np.int64)
    M = np.indices([nk + 1 for nk in Q.n_vec], dtype=np.int64).reshape(Q.r, -1).T
    values = ((M @ a) * (n - M)).sum(axis=1)
    return values.reshape([nk + 1 for nk in Q.n_vec])


def quad_lemma_check(Q: QuadForm, limit: int = BOX_LIMIT) -> QuadLemmaResult:
    """Exhaustively confirm ``f <= 0`` on the box when ``f(e_l) <= 0`` for all ``l``."""
    F = quad_table(Q, limit)
    if any(F[Q.unit(l)] > 0 for l in range(Q.r)):
        return QuadLemmaResult(premise=False, holds=False)
    bad = np.argwhere(F > 0)
    if bad.size:
        return QuadLemmaResult(premise=True, holds=False, witness=tuple(int(x) for x in bad[0]))
    return QuadLemmaResult(premise=True, holds=True)


def recursion_defect(Q: QuadForm, m: Sequence[int], l: int) -> int:
    """``f(m) - [f(m - e_l) + f(e_l) + 2 - 2 sum_k a[k][l] m_k]``; zero when ``m_l >= 1``."""
    m = tuple(m)
    if m[l] < 1:
        raise InvalidInputError(f"m[{l}] must be >= 1")
    shifted = tuple(x - (k == l) for k, x in enumerate(m))
    rhs = quad_f(Q, shifted) + quad_f(Q, Q.unit(l)) + 2 - 2 * sum(Q.a[k][l] * m[k] for k in range(Q.r))
    return quad_f(Q, m) - rhs
