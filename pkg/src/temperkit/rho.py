"""Exact evaluation and maximization of the piecewise-linear functions rho_V.

For a multiset ``V`` of integer weights with multiplicities, and an integer
test vector ``Y``,

    rho2(V, Y) = sum over entries of  mult * |<weight, Y>|,

which is twice the usual half-sum.  Working with the doubled value keeps all
arithmetic in the integers; every comparison below is an integer
cross-multiplication and every ratio is a ``fractions.Fraction``.

Batch routines accept an ``(N, rank)`` integer array of test vectors and
evaluate with numpy ``int64`` arithmetic, chunked so that the intermediate
``N x len(V)`` product stays small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateDenominatorError, InvalidInputError

Vector = Tuple[int, ...]

# upper bound on the number of int64 cells materialised per chunk
_CHUNK_CELLS = 1 << 22


def as_vector(v: Iterable[int]) -> Vector:
    raw = list(v)
    out = tuple(int(x) for x in raw)
    if any(x != y for x, y in zip(out, raw)):
        raise InvalidInputError(f"non-integer coordinate in {tuple(raw)!r}")
    return out


@dataclass(frozen=True)
class WeightMultiset:
    """Integer weights with positive multiplicities, all of length ``rank``.

    Repeated weights are allowed; they simply add up.  The zero weight is
    allowed and contributes nothing.
    """

    entries: Tuple[Tuple[Vector, int], ...]
    rank: int

    def __post_init__(self):
        if int(self.rank) != self.rank or self.rank < 1:
            raise InvalidInputError(f"rank must be a positive integer, got {self.rank!r}")
        normalized = []
        for weight, mult in self.entries:
            weight = as_vector(weight)
            if len(weight) != self.rank:
                raise InvalidInputError(
                    f"weight {weight} has length {len(weight)}, expected rank {self.rank}"
                )
            if int(mult) != mult or mult < 1:
                raise InvalidInputError(f"multiplicity must be a positive integer, got {mult!r}")
            normalized.append((weight, int(mult)))
        object.__setattr__(self, "entries", tuple(normalized))

    @classmethod
    def from_weights(cls, weights: Iterable[Sequence[int]], rank: int, multiplicity: int = 1):
        return cls(tuple((tuple(w), multiplicity) for w in weights), rank)

    @classmethod
    def empty(cls, rank: int) -> "WeightMultiset":
        return cls((), rank)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        if other.rank != self.rank:
            raise InvalidInputError(f"rank mismatch: {self.rank} vs {other.rank}")
        return WeightMultiset(self.entries + other.entries, self.rank)

    def scaled(self, factor: int) -> "WeightMultiset":
        """Same weights, every multiplicity multiplied by ``factor``."""
        return WeightMultiset(tuple((w, m * factor) for w, m in self.entries), self.rank)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    @cached_property
    def weight_array(self) -> np.ndarray:
        arr = np.array([w for w, _ in self.entries], dtype=np.int64)
        return arr.reshape(len(self.entries), self.rank)

    @cached_property
    def mult_array(self) -> np.ndarray:
        return np.array([m for _, m in self.entries], dtype=np.int64)


@dataclass(frozen=True)
class RatioResult:
    """Exact maximum of a ratio of two rho functions over a candidate set.

    ``attained`` is False exactly when the numerator vanishes at every
    admissible candidate (the maximum is then the degenerate value 0).
    """

    value: Fraction
    argmax: Vector
    attained: bool


class Domination(NamedTuple):
    holds: bool
    witness: Optional[Vector]


def _check_rank(V: WeightMultiset, rank: int):
    if V.rank != rank:
        raise InvalidInputError(f"rank mismatch: weights have rank {V.rank}, test vector {rank}")


def rho2_eval(V: WeightMultiset, Y: Sequence[int]) -> int:
    """Return ``2 * rho_V(Y) = sum_lambda m_lambda |lambda(Y)|`` exactly."""
    Y = as_vector(Y)
    _check_rank(V, len(Y))
    total = 0
    for weight, mult in V.entries:
        total += mult * abs(sum(a * b for a, b in zip(weight, Y)))
    return total


def candidate_array(candidates, rank: Optional[int] = None) -> np.ndarray:
    """Coerce a list of vectors (or an array) into a 2-d int64 array."""
    arr = np.asarray(candidates, dtype=np.int64)
    if arr.ndim == 1:
        if arr.size == 0:
            arr = arr.reshape(0, rank or 0)
        else:
            arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise InvalidInputError("candidates must be a list of vectors")
    if rank is not None and arr.shape[1] != rank:
        raise InvalidInputError(f"rank mismatch: candidates have length {arr.shape[1]}, expected {rank}")
    return arr


def rho2_batch(V: WeightMultiset, Ys) -> np.ndarray:
    """Vectorised :func:`rho2_eval` over the rows of ``Ys``."""
    Ys = candidate_array(Ys, V.rank)
    out = np.zeros(Ys.shape[0], dtype=np.int64)
    if len(V) == 0 or Ys.shape[0] == 0:
        return out
    W = V.weight_array.T
    m = V.mult_array
    step = max(1, _CHUNK_CELLS // len(V))
    for start in range(0, Ys.shape[0], step):
        block = np.abs(Ys[start:start + step] @ W)
        out[start:start + step] = block @ m
    return out


def best_fraction(nums: np.ndarray, dens: np.ndarray) -> Tuple[Fraction, int]:
    """Exact maximum of ``nums[i] / dens[i]`` (all ``dens > 0``) and its first index.

    Dinkelbach iteration in integers: from the current ratio ``a/b`` jump to
    the index maximizing ``nums * b - dens * a`` until nothing beats it.
    """
    nums = np.asarray(nums, dtype=np.int64)
    dens = np.asarray(dens, dtype=np.int64)
    i = 0
    while True:
        gain = nums * dens[i] - dens * nums[i]
        j = int(np.argmax(gain))
        if gain[j] <= 0:
            break
        i = j
    best = Fraction(int(nums[i]), int(dens[i]))
    hits = np.flatnonzero(nums * best.denominator == dens * best.numerator)
    return best, int(hits[0])


def max_ratio(num: WeightMultiset, den: WeightMultiset, candidates) -> RatioResult:
    """Maximize ``rho_num / rho_den`` over the candidates with ``rho_den > 0``.

    Ties go to the first candidate in the supplied order.  Candidates where the
    denominator vanishes (central directions) are skipped.
    """
    if num.rank != den.rank:
        raise InvalidInputError(f"rank mismatch: {num.rank} vs {den.rank}")
    C = candidate_array(candidates, num.rank)
    if C.shape[0] == 0:
        raise InvalidInputError("candidate list is empty")
    nums = rho2_batch(num, C)
    dens = rho2_batch(den, C)
    admissible = np.flatnonzero(dens > 0)
    if admissible.size == 0:
        raise DegenerateDenominatorError(
            "denominator vanishes at every candidate (central directions only)"
        )
    value, k = best_fraction(nums[admissible], dens[admissible])
    idx = int(admissible[k])
    return RatioResult(value, tuple(int(x) for x in C[idx]), value > 0)


def dominates(c_num: int, V: WeightMultiset, c_den: int, W: WeightMultiset, candidates) -> Domination:
    """Check ``c_num * rho_V <= c_den * rho_W`` at every candidate.

    On failure the first violating candidate is returned as witness.
    """
    if V.rank != W.rank:
        raise InvalidInputError(f"rank mismatch: {V.rank} vs {W.rank}")
    C = candidate_array(candidates, V.rank)
    bad = np.flatnonzero(c_num * rho2_batch(V, C) > c_den * rho2_batch(W, C))
    if bad.size == 0:
        return Domination(True, None)
    return Domination(False, tuple(int(x) for x in C[bad[0]]))
