"""Temperedness and L^p criteria for a-stable subalgebras of gl_n.

A subalgebra ``h`` of ``gl_n`` stable under the diagonal Cartan ``a`` is
recorded by its incidence matrix ``eps[i][j] = 1`` iff ``E_ij`` lies in ``h``.
We always store ``h + a``, so the diagonal is identically 1; this changes
neither the image dimensions of ``ad(E_ii)`` nor the temperedness of
``L^2(G/H)``.

Indices follow the mathematical convention: rows, columns, the ``i`` of
:func:`ad_image_dim` and the subsets ``I`` reported as witnesses are 1-based.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    InvalidInputError,
    InvalidSubalgebraError,
    SizeLimitError,
    UnsupportedExponentError,
)
from .rho import WeightMultiset, best_fraction, rho2_batch

EXHAUSTIVE_LIMIT = 20

Composition = Tuple[int, ...]
Subset = Tuple[int, ...]


def field_multiplicity(field: str) -> int:
    """Root-space dimension over R: 1 for GL_n(R), 2 for GL_n(C)."""
    key = str(field).strip().upper()
    if key in ("R", "REAL"):
        return 1
    if key in ("C", "COMPLEX"):
        return 2
    raise InvalidInputError(f"field must be 'R' or 'C', got {field!r}")


# -- compositions -----------------------------------------------------------

def check_composition(parts: Sequence[int], n: Optional[int] = None, strict: bool = True) -> Composition:
    """Validate block sizes.  ``strict`` requires ``sum(parts) == n``, otherwise ``<= n``."""
    parts = tuple(parts)
    if not parts:
        raise InvalidInputError("a composition needs at least one part")
    if any(int(x) != x or x < 1 for x in parts):
        raise InvalidInputError(f"parts must be positive integers, got {parts}")
    parts = tuple(int(x) for x in parts)
    if n is not None:
        total = sum(parts)
        if strict and total != n:
            raise InvalidInputError(f"parts {parts} sum to {total}, expected {n}")
        if not strict and total > n:
            raise InvalidInputError(f"parts {parts} sum to {total} > n = {n}")
    return parts


def parse_composition(text: str) -> Composition:
    """Parse ``"3,1"`` into ``(3, 1)``."""
    try:
        parts = tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise InvalidInputError(f"malformed composition {text!r}") from None
    return check_composition(parts)


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of ``n``, ordered by the binary pattern of their cut points."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    for cuts in product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def d_value(parts: Sequence[int]) -> int:
    """Largest Levi block."""
    return max(check_composition(parts))


def tensor_tempered(P: Sequence[int], Q: Sequence[int]) -> bool:
    """Closed form for Ind_P(1) (x) Ind_Q(1): tempered iff d(P) + d(Q) <= n + 1."""
    P, Q = check_composition(P), check_composition(Q)
    n = sum(P)
    if sum(Q) != n:
        raise InvalidInputError(f"compositions of different n: {sum(P)} vs {sum(Q)}")
    return d_value(P) + d_value(Q) <= n + 1


# -- epsilon matrices -------------------------------------------------------

def _closure_violation(E: np.ndarray) -> Optional[Tuple[int, int, int]]:
    M = E.astype(np.int64)
    missing = (M @ M > 0) & ~E
    if not missing.any():
        return None
    i, k = (int(x) for x in np.argwhere(missing)[0])
    j = int(np.flatnonzero(E[i] & E[:, k])[0])
    return (i + 1, j + 1, k + 1)


@dataclass(frozen=True)
class EpsilonMatrix:
    """0/1 incidence of root vectors ``E_ij`` in an a-stable subalgebra ``h + a``."""

    eps: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.eps)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidInputError("epsilon matrix must be square and nonempty")
        if any(x not in (0, 1) for r in rows for x in r):
            raise InvalidInputError("epsilon entries must be 0 or 1")
        if any(rows[i][i] != 1 for i in range(n)):
            raise InvalidInputError("epsilon diagonal must be 1 (h is stored as h + a)")
        object.__setattr__(self, "eps", rows)
        bad = _closure_violation(self.array)
        if bad is not None:
            raise InvalidSubalgebraError(bad)

    @classmethod
    def from_rows(cls, rows, normalize_diagonal: bool = True) -> "EpsilonMatrix":
        """Build from any 0/1 rows, forcing the diagonal to 1 when asked."""
        rows = [list(int(x) for x in r) for r in rows]
        if normalize_diagonal:
            for i, r in enumerate(rows):
                if i < len(r):
                    r[i] = 1
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_array(cls, arr) -> "EpsilonMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in np.asarray(arr)))

    @property
    def n(self) -> int:
        return len(self.eps)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.eps, dtype=bool).reshape(self.n, self.n)

    @property
    def dim(self) -> int:
        """Real dimension of ``h + a``."""
        return int(self.array.sum())

    def __and__(self, other: "EpsilonMatrix") -> "EpsilonMatrix":
        if other.n != self.n:
            raise InvalidInputError(f"size mismatch: {self.n} vs {other.n}")
        return EpsilonMatrix.from_array(self.array & other.array)

    def to_text(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.eps)

    def __str__(self):
        return self.to_text()


def identity_epsilon(n: int) -> EpsilonMatrix:
    return EpsilonMatrix.from_array(np.eye(n, dtype=bool))


def full_epsilon(n: int) -> EpsilonMatrix:
    return EpsilonMatrix.from_array(np.ones((n, n), dtype=bool))


def _block_index(parts: Composition) -> np.ndarray:
    return np.repeat(np.arange(len(parts)), parts)


def block_diagonal_epsilon(parts: Sequence[int], n: Optional[int] = None) -> EpsilonMatrix:
    """Levi ``gl_{n_1} + ... + gl_{n_r}``, padded with 1x1 blocks up to size ``n``."""
    parts = check_composition(parts, n, strict=False)
    if n is not None:
        parts = parts + (1,) * (n - sum(parts))
    b = _block_index(parts)
    return EpsilonMatrix.from_array(b[:, None] == b[None, :])


def epsilon_from_parabolic(parts: Sequence[int], orientation: str = "upper") -> EpsilonMatrix:
    """Standard block-upper (or block-lower) parabolic with Levi blocks ``parts``."""
    b = _block_index(check_composition(parts))
    if orientation == "upper":
        return EpsilonMatrix.from_array(b[:, None] <= b[None, :])
    if orientation == "lower":
        return EpsilonMatrix.from_array(b[:, None] >= b[None, :])
    raise InvalidInputError(f"orientation must be 'upper' or 'lower', got {orientation!r}")


def epsilon_intersection(P: Sequence[int], Q: Sequence[int]) -> EpsilonMatrix:
    """``p`` intersected with ``q^o``, the conjugate of ``q`` by the longest Weyl element.

    ``q^o`` is block-lower with the blocks of ``Q`` in reverse order.
    """
    P, Q = check_composition(P), check_composition(Q)
    if sum(P) != sum(Q):
        raise InvalidInputError(f"compositions of different n: {sum(P)} vs {sum(Q)}")
    return epsilon_from_parabolic(P, "upper") & epsilon_from_parabolic(Q[::-1], "lower")


def parse_epsilon(text: str) -> EpsilonMatrix:
    """Read the 0/1 grid format: one row per line, whitespace ignored.

    A zero on the diagonal is replaced by 1 with a warning.
    """
    rows = []
    for line in text.splitlines():
        row = "".join(line.split())
        if not row:
            continue
        if set(row) - {"0", "1"}:
            raise InvalidInputError(f"unexpected character in row {line!r}")
        rows.append([int(c) for c in row])
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InvalidInputError(f"expected {n} rows of {n} characters")
    zeros = [i + 1 for i in range(n) if rows[i][i] == 0]
    if zeros:
        warnings.warn(f"diagonal entries {zeros} were 0; normalized to 1 (h replaced by h + a)")
    return EpsilonMatrix.from_rows(rows, normalize_diagonal=True)


def read_epsilon(source: Union[str, Path]) -> EpsilonMatrix:
    """Parse an epsilon file; ``"-"`` reads standard input."""
    if str(source) == "-":
        return parse_epsilon(sys.stdin.read())
    return parse_epsilon(Path(source).read_text())


# -- weights ----------------------------------------------------------------

def _roots_where(mask: np.ndarray, mult: int) -> WeightMultiset:
    n = mask.shape[0]
    entries = []
    for i, j in zip(*np.nonzero(mask)):
        if i == j:
            continue
        w = [0] * n
        w[i], w[j] = 1, -1
        entries.append((tuple(w), mult))
    return WeightMultiset(tuple(entries), n)


def gl_weights(n: int, field: str = "R") -> WeightMultiset:
    """Roots ``e_i - e_j`` of ``gl_n`` (multiplicity 2 over C)."""
    return _gl_weights(n, field_multiplicity(field))


@lru_cache(maxsize=64)
def _gl_weights(n: int, mult: int) -> WeightMultiset:
    return _roots_where(np.ones((n, n), dtype=bool), mult)


def adjoint_weights(h: EpsilonMatrix, field: str = "R") -> WeightMultiset:
    """Weights of ``a`` on ``h``: ``e_i - e_j`` for every off-diagonal ``eps_ij = 1``."""
    return _roots_where(h.array, field_multiplicity(field))


def complement_weights(h: EpsilonMatrix, field: str = "R") -> WeightMultiset:
    """Weights of ``a`` on ``g/h``."""
    return _roots_where(~h.array, field_multiplicity(field))


def ad_image_dims(h: EpsilonMatrix) -> Tuple[int, ...]:
    """``dim Image(ad(E_ii): h -> h)`` for every ``i``."""
    E = h.array
    off = E.sum(axis=1) + E.sum(axis=0) - 2
    return tuple(int(x) for x in off)


def ad_image_dim(h: EpsilonMatrix, i: int) -> int:
    """Row plus column count of off-diagonal ones at 1-based index ``i``."""
    if not 1 <= i <= h.n:
        raise InvalidInputError(f"index {i} out of range 1..{h.n}")
    return ad_image_dims(h)[i - 1]


def tempered_fast(h: EpsilonMatrix) -> bool:
    """``n`` inequalities: every image dimension is at most ``n - 1``."""
    return max(ad_image_dims(h)) <= h.n - 1


# -- subset enumeration -----------------------------------------------------

@lru_cache(maxsize=24)
def _subset_family(n: int) -> Tuple[Tuple[Subset, ...], np.ndarray]:
    subsets = [s for k in range(1, n) for s in combinations(range(1, n + 1), k)]
    arr = np.zeros((len(subsets), n), dtype=np.int64)
    for row, s in enumerate(subsets):
        arr[row, [i - 1 for i in s]] = 1
    arr.setflags(write=False)
    return tuple(subsets), arr


def proper_subsets(n: int, limit: int = EXHAUSTIVE_LIMIT) -> Tuple[Tuple[Subset, ...], np.ndarray]:
    """Nonempty proper subsets of ``{1..n}`` with their ``E_I``.

    Ordered by size, then lexicographically, so singletons come first and a
    reported witness is as small as possible.
    """
    if n > limit:
        raise SizeLimitError(f"n = {n} exceeds the exhaustive limit {limit} (2^n subsets)")
    return _subset_family(n)


def singleton_family(n: int) -> Tuple[Tuple[Subset, ...], np.ndarray]:
    return tuple((i,) for i in range(1, n + 1)), np.eye(n, dtype=np.int64)


@dataclass(frozen=True)
class TemperednessReport:
    tempered: bool
    witness: Optional[Subset]
    extremal_ratio: Fraction


def subset_rho2(h: EpsilonMatrix, mode: str = "all_subsets", field: str = "R",
                limit: int = EXHAUSTIVE_LIMIT) -> Tuple[Tuple[Subset, ...], np.ndarray, np.ndarray]:
    """``(subsets, 2 rho_h(E_I), 2 rho_g(E_I))`` over singletons or all proper subsets."""
    if mode == "singletons":
        subsets, C = singleton_family(h.n)
    elif mode == "all_subsets":
        subsets, C = proper_subsets(h.n, limit)
    else:
        raise InvalidInputError(f"mode must be 'singletons' or 'all_subsets', got {mode!r}")
    return subsets, rho2_batch(adjoint_weights(h, field), C), rho2_batch(gl_weights(h.n, field), C)


def tempered_bruteforce(h: EpsilonMatrix, field: str = "R", limit: int = EXHAUSTIVE_LIMIT) -> TemperednessReport:
    """Check ``2 rho_h(E_I) <= rho_g(E_I)`` at every proper nonempty ``I``."""
    subsets, rh, rg = subset_rho2(h, "all_subsets", field, limit)
    if not subsets:
        return TemperednessReport(True, None, Fraction(0))
    ratio, _ = best_fraction(rh, rg)
    bad = np.flatnonzero(2 * rh > rg)
    witness = subsets[bad[0]] if bad.size else None
    return TemperednessReport(witness is None, witness, ratio)


def lp_criterion(h: EpsilonMatrix, p: int, mode: str = "singletons", field: str = "R",
                 limit: int = EXHAUSTIVE_LIMIT) -> Tuple[bool, Optional[Subset]]:
    """Check ``p rho_h(E_I) <= (p - 1) rho_g(E_I)`` over singletons or all subsets.

    Any integer ``p >= 2`` is accepted, odd ones included.
    """
    if int(p) != p or p < 2:
        raise InvalidInputError(f"p must be an integer >= 2, got {p!r}")
    subsets, rh, rg = subset_rho2(h, mode, field, limit)
    bad = np.flatnonzero(p * rh > (p - 1) * rg)
    if bad.size:
        return False, subsets[bad[0]]
    return True, None


# -- L^p exponents for reductive h ------------------------------------------

def lp_exponent(parts: Sequence[int], n: int) -> Union[Fraction, float]:
    """``max_Y rho_h(Y) / rho_{g/h}(Y)`` for the block Levi ``h``, over the ``E_I``.

    Returns ``0`` when ``rho_h`` vanishes on every candidate and ``math.inf``
    when some candidate has ``rho_h > 0 = rho_{g/h}`` (``h = g``).
    """
    h = block_diagonal_epsilon(parts, n)
    subsets, C = proper_subsets(n)
    if not subsets:
        return Fraction(0)
    num = rho2_batch(adjoint_weights(h), C)
    den = rho2_batch(complement_weights(h), C)
    if not num.any():
        return Fraction(0)
    if ((num > 0) & (den == 0)).any():
        return math.inf
    keep = den > 0
    value, _ = best_fraction(num[keep], den[keep])
    return value


def _check_even(p: int):
    if int(p) != p or p < 2:
        raise InvalidInputError(f"p must be a positive even integer, got {p!r}")
    if p % 2:
        raise UnsupportedExponentError(f"the almost-L^p criterion needs even p, got {p}")


def almost_lp(parts: Sequence[int], n: int, p: int) -> bool:
    """``L^2(GL_n / prod GL_{n_j})`` is almost ``L^p`` iff ``p_{g/h} <= p - 1``."""
    _check_even(p)
    return lp_exponent(parts, n) <= p - 1


def almost_lp_closed_form(parts: Sequence[int], n: int, p: int) -> bool:
    """``m <= n - (n - 1)/p`` with ``m`` the largest block."""
    _check_even(p)
    m = max(check_composition(parts, n, strict=False))
    return m <= n - Fraction(n - 1, p)


def c_value(h: EpsilonMatrix) -> Union[Fraction, float]:
    """``min_i rho_g(E_ii) / rho_h(E_ii) = 2(n-1) / max_i dim Image ad(E_ii)``."""
    top = max(ad_image_dims(h))
    if top == 0:
        return math.inf
    return Fraction(2 * (h.n - 1), top)


def random_closed_epsilon(n: int, seed, density: float) -> EpsilonMatrix:
    """Random bracket-closed epsilon matrix, deterministic in ``(n, seed, density)``.

    Off-diagonal entries are drawn independently with probability ``density``
    from numpy's PCG64 generator (``numpy.random.default_rng(seed)``; ``seed``
    may be an int or a sequence of ints), then closed transitively.
    """
    if not 0 <= density <= 1:
        raise InvalidInputError(f"density must lie in [0, 1], got {density!r}")
    rng = np.random.default_rng(seed)
    E = rng.random((n, n)) < density
    np.fill_diagonal(E, True)
    for k in range(n):
        E |= E[:, k:k + 1] & E[k:k + 1, :]
    return EpsilonMatrix.from_array(E)
