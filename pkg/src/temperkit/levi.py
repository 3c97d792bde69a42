"""Temperedness of L^2(G/L) for Levi subgroups, and the classification tables.

A Levi subalgebra is given by a subset ``J`` of simple-root indices
(1-based).  ``L^2(G/L)`` is tempered iff ``2 rho_l <= rho_g`` on ``a``; both
functions are linear on every Weyl chamber, so the inequality only has to be
checked on the chamber edges (:func:`rootsys.edge_candidates`).

:func:`levi_tempered` evaluates that directly.  :func:`classify_levis` gives
the same answers for all ``2^rank`` subsets at once; for each ``J`` it only
scans the edge vectors that are dominant for the Weyl group ``W_J`` of the
Levi.  That is exact, because the ratio ``rho_l / rho_g`` is ``W_J``-invariant
and the edge set is ``W``-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import InvalidInputError, SizeLimitError, UnsupportedFormError
from .rho import Vector, WeightMultiset, best_fraction, rho2_batch
from .rootsys import RootDatum

RANK_LIMIT = 8
_ROWS_PER_CHUNK = 32768

Levi = Tuple[int, ...]


def normalize_levi(R: RootDatum, J) -> Levi:
    J = tuple(sorted(set(int(j) for j in J)))
    if any(not 1 <= j <= R.rank for j in J):
        raise InvalidInputError(f"Levi subset {J} has indices outside 1..{R.rank}")
    return J


def levi_roots(R: RootDatum, J) -> WeightMultiset:
    """Roots of ``g`` supported on the simple roots in ``J``, multiplicities kept."""
    J = normalize_levi(R, J)
    outside = [j for j in range(R.rank) if j + 1 not in J]
    keep = ~(R.simple_coords[:, outside] != 0).any(axis=1)
    entries = tuple(e for e, k in zip(R.roots.entries, keep) if k)
    return WeightMultiset(entries, R.dim)


# -- Cartan type of a Levi ----------------------------------------------------

def _components(R: RootDatum, J: Levi) -> List[List[int]]:
    A = R.cartan_matrix
    nodes = [j - 1 for j in J]
    comps, seen = [], set()
    for start in nodes:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for k in nodes:
                if k not in seen and A[i, k] != 0:
                    seen.add(k)
                    stack.append(k)
        comps.append(sorted(comp))
    return comps


def _component_type(R: RootDatum, comp: List[int]) -> str:
    A = R.cartan_matrix
    r = len(comp)
    doubled = any(tuple(2 * x for x in R.simple_roots[i]) in R.root_mult for i in comp)
    if r == 1:
        return "bc1" if doubled else "a1"
    bonds = {}
    degree = {i: 0 for i in comp}
    for a in comp:
        for b in comp:
            if a < b and A[a, b] != 0:
                bonds[(a, b)] = int(A[a, b] * A[b, a])
                degree[a] += 1
                degree[b] += 1
    if 3 in bonds.values():
        return "g2"
    if 2 in bonds.values():
        (a, b), = [e for e, v in bonds.items() if v == 2]
        if degree[a] == 2 and degree[b] == 2:
            return "f4"
        if doubled:
            return f"bc{r}"
        # the end node of the double bond; for r = 2 take the later one
        end = b if degree[b] == 1 and (degree[a] != 1 or b > a) else a
        other = a if end == b else b
        short_end = abs(A[end, other]) == 2
        return f"b{r}" if short_end else f"c{r}"
    branch = [i for i in comp if degree[i] == 3]
    if not branch:
        return f"bc{r}" if doubled else f"a{r}"
    centre = branch[0]
    arms = []
    for nb in comp:
        if nb != centre and A[centre, nb] != 0:
            length, prev, cur = 1, centre, nb
            while True:
                nxt = [k for k in comp if k not in (prev, cur) and A[cur, k] != 0]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"d{r}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"e{r}"
    raise UnsupportedFormError(f"unrecognised Dynkin component with arms {arms}")


def levi_type(R: RootDatum, J) -> Tuple[str, ...]:
    """Cartan types of the irreducible components of ``[l, l]``, ordered by first node.

    Low-rank conventions: a single node is ``a1`` (so b1 = c1 = a1) unless
    twice its simple root is a root (``bc1``); a D-type diagram on three nodes
    is a path and reads ``a3``.
    """
    J = normalize_levi(R, J)
    return tuple(_component_type(R, c) for c in _components(R, J))


# -- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class LeviVerdict:
    tempered: bool
    witness: Optional[Vector]
    extremal_ratio: Fraction
    levi_type: Tuple[str, ...]


def levi_tempered(R: RootDatum, J) -> LeviVerdict:
    """Direct check of ``2 rho_l <= rho_g`` over every chamber edge."""
    J = normalize_levi(R, J)
    C = R.edge_array
    rl = rho2_batch(levi_roots(R, J), C)
    rg = rho2_batch(R.roots, C)
    ratio, _ = best_fraction(rl, rg)
    bad = np.flatnonzero(2 * rl > rg)
    witness = tuple(int(x) for x in C[bad[0]]) if bad.size else None
    return LeviVerdict(witness is None, witness, ratio, levi_type(R, J))


def all_levis(rank: int) -> List[Levi]:
    """Every subset of ``1..rank``, in binary counting order (bit i is node i+1)."""
    return [tuple(i + 1 for i in range(rank) if mask >> i & 1) for mask in range(1 << rank)]


@dataclass(frozen=True)
class LeviRow:
    levi: Levi
    levi_type: Tuple[str, ...]
    verdict: LeviVerdict


def classify_levis(R: RootDatum, limit: int = RANK_LIMIT) -> List[LeviRow]:
    """Verdicts for all ``2^rank`` Levi subsets."""
    if R.rank > limit:
        raise SizeLimitError(f"rank {R.rank} exceeds the classification limit {limit}")
    levis = all_levis(R.rank)
    C = R.edge_array
    pos = R.positive_mask
    P = R.roots.weight_array[pos].T
    mult = R.roots.mult_array[pos]
    support = R.simple_coords[pos] != 0
    member = np.zeros((R.rank, len(levis)), dtype=bool)
    for col, J in enumerate(levis):
        member[[j - 1 for j in J], col] = True
    # positive root k belongs to Levi col iff its support avoids the complement
    in_levi = ~(support.astype(np.int64) @ (~member).astype(np.int64)).astype(bool)
    M = in_levi * mult[:, None]
    S = np.array(R.simple_roots, dtype=np.int64).T

    best: List[Optional[Fraction]] = [None] * len(levis)
    for start in range(0, C.shape[0], _ROWS_PER_CHUNK):
        block = C[start:start + _ROWS_PER_CHUNK]
        absval = np.abs(block @ P)
        rg = absval @ mult
        simple_pair = block @ S
        for col, J in enumerate(levis):
            if not J:
                continue
            dom = (simple_pair[:, [j - 1 for j in J]] >= 0).all(axis=1)
            if not dom.any():
                continue
            rl = absval[dom] @ M[:, col]
            value, _ = best_fraction(rl, rg[dom])
            if best[col] is None or value > best[col]:
                best[col] = value
    ratios = [b if b is not None else Fraction(0) for b in best]

    witnesses: Dict[int, Vector] = {}
    pending = [col for col, r in enumerate(ratios) if r > Fraction(1, 2)]
    for start in range(0, C.shape[0], _ROWS_PER_CHUNK):
        if not pending:
            break
        block = C[start:start + _ROWS_PER_CHUNK]
        absval = np.abs(block @ P)
        rg = absval @ mult
        rl = absval @ M[:, pending]
        still = []
        for k, col in enumerate(pending):
            bad = np.flatnonzero(2 * rl[:, k] > rg)
            if bad.size:
                witnesses[col] = tuple(int(x) for x in block[bad[0]])
            else:
                still.append(col)
        pending = still

    rows = []
    for col, J in enumerate(levis):
        kind = levi_type(R, J)
        w = witnesses.get(col)
        rows.append(LeviRow(J, kind, LeviVerdict(w is None, w, ratios[col], kind)))
    return rows


# -- tables -------------------------------------------------------------------

def _tail(J: Levi, n: int) -> int:
    """Length of the run ``n-t+1, ..., n`` contained in ``J``."""
    t = 0
    while n - t in J:
        t += 1
    return t


def _d_tail(J: Levi, n: int) -> int:
    """Rank of the D-component through both fork nodes; 0 if one is missing."""
    if n - 1 not in J or n not in J:
        return 0
    return 2 + _tail(J, n - 2)


def _blocks(J: Levi, n: int) -> List[int]:
    """Levi blocks of ``gl_n`` whose A_{n-1} Levi subset is ``J``."""
    blocks, run = [], 1
    for i in range(1, n):
        if i in J:
            run += 1
        else:
            blocks.append(run)
            run = 1
    blocks.append(run)
    return blocks


def _table1(letter: str, n: int, J: Levi, kinds: Tuple[str, ...]) -> bool:
    if letter == "A":
        return 2 * max(_blocks(J, n + 1)) - 2 >= n + 1
    if letter in ("B", "C"):
        return 2 * _tail(J, n) >= n + 1
    if letter == "D":
        if n == 3:
            # d3 = a3 with middle node 1
            relabel = {2: 1, 1: 2, 3: 3}
            return _table1("A", 3, tuple(sorted(relabel[j] for j in J)), kinds)
        full = set(range(1, n + 1))
        if set(J) in (full - {n}, full - {n - 1}):
            return True
        return 2 * _d_tail(J, n) >= n + 2
    if letter == "E":
        bad = {6: {"d5"}, 7: {"d6", "e6"}, 8: {"e7"}}[n]
        return any(k in bad for k in kinds)
    return False


def _pure_k(J: Levi, q: int) -> Optional[int]:
    """``k`` if ``J = {k+1, ..., q}`` for some ``1 <= k <= q``."""
    k = q - len(J)
    if k >= 1 and J == tuple(range(k + 1, q + 1)):
        return k
    return None


def table_predicate(R: RootDatum, J) -> Optional[bool]:
    """Whether the classification tables list ``(g, l)`` as non-tempered.

    Returns None for real-form Levis that no table row describes
    unambiguously (non-pure parabolics of su/so/sp).  The full subset
    ``J = all`` (``L = G``) is reported as non-tempered.
    """
    J = normalize_levi(R, J)
    if len(J) == R.rank:
        return True
    label = R.label
    kinds = levi_type(R, J)
    if label.kind in ("split", "complex"):
        return _table1(label.family, label.params[0], J, kinds)
    f = label.family
    if f in ("su", "so", "sp"):
        p, q = label.params
        if R.is_split:
            return _table1(R.type_letter, q, J, kinds)
        k = _pure_k(J, q)
        if k is None:
            return None
        shift = {"su": 2, "so": 3, "sp": 1}[f]
        return k <= p - 1 and k <= q - 1 and 4 * k <= p + q - shift
    if f == "su*":
        (n,) = label.params
        return 2 * max(_blocks(J, n)) >= n + 2
    if f == "so*":
        (n,) = label.params
        r = R.rank
        if n % 2 == 0 and J == tuple(range(1, r)):
            return n // 2 >= 2
        t = _tail(J, r)
        m = 2 * t + (n % 2)
        return m >= n + 2
    raise UnsupportedFormError(f"no table for {label}")


@dataclass(frozen=True)
class TableRow:
    label: str
    levi: Levi
    levi_type: Tuple[str, ...]
    verdict: LeviVerdict
    predicate: Optional[bool]

    @property
    def match(self) -> Optional[bool]:
        if self.predicate is None:
            return None
        return self.predicate == (not self.verdict.tempered)


@dataclass(frozen=True)
class TableReport:
    label: str
    rows: Tuple[TableRow, ...]

    @property
    def mismatches(self) -> List[TableRow]:
        return [r for r in self.rows if r.match is False]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def generate_table(R: RootDatum, limit: int = RANK_LIMIT) -> TableReport:
    """Pair every computed Levi verdict with the table's prediction."""
    name = str(R.label)
    rows = tuple(
        TableRow(name, row.levi, row.levi_type, row.verdict, table_predicate(R, row.levi))
        for row in classify_levis(R, limit)
    )
    return TableReport(name, rows)
