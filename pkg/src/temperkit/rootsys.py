"""Root data with multiplicities, Weyl orbits and chamber edges.

Two coordinate conventions are used, both integral:

* classical types (A, B, C, D, BC) and the classical real forms live in the
  usual epsilon coordinates; type A_{n-1} uses the ``gl_n`` coordinates so its
  chamber edges are exactly the 0/1 vectors ``E_I``;
* exceptional types (E6, E7, E8, F4, G2) are written in simple-root
  coordinates for weights and fundamental-coweight coordinates for test
  vectors, so the pairing is still the plain dot product.

A :class:`RootDatum` carries simple roots, simple coroots (as test vectors)
and fundamental coweights scaled to primitive integer vectors.  The simple
reflection on test vectors is ``s_i(Y) = Y - alpha_i(Y) * coroot_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvalidFormError, InvalidInputError, UnsupportedFormError
from .rho import Vector, WeightMultiset, as_vector

SPLIT_TYPES = ("A", "B", "C", "D", "E", "F", "G")
REAL_FAMILIES = ("su", "so", "sp", "su*", "so*")


@dataclass(frozen=True)
class Label:
    """Name of a simple real Lie algebra.

    ``kind`` is ``"split"``, ``"complex"`` or ``"real"``.  Split and complex
    labels have ``family`` in A..G and ``params == (rank,)``; real forms have
    ``family`` in su, so, sp (``params == (p, q)``) or su*, so*
    (``params == (n,)``, the algebra being su*(2n) or so*(2n)).
    """

    kind: str
    family: str
    params: Tuple[int, ...]

    def __str__(self):
        if self.kind == "split":
            return f"{self.family.lower()}{self.params[0]}"
        if self.kind == "complex":
            return f"{self.family.lower()}{self.params[0]}(C)"
        if self.family in ("su*", "so*"):
            return f"{self.family}({2 * self.params[0]})"
        return f"{self.family}({self.params[0]},{self.params[1]})"


_LABEL_RE = re.compile(r"^(su\*|so\*|su|so|sp)\((\d+)(?:,(\d+))?\)$")
_SPLIT_RE = re.compile(r"^([a-g])_?(\d+)(\(c\))?$")


def parse_label(text: str, field: str = "R") -> Label:
    """Parse ``"e6"``, ``"A2"``, ``"g2(C)"``, ``"su(3,3)"``, ``"su*(8)"``, ``"so*(10)"``."""
    raw = text.strip().replace(" ", "")
    low = raw.lower()
    m = _LABEL_RE.match(low)
    if m:
        family, a, b = m.group(1), int(m.group(2)), m.group(3)
        if family in ("su*", "so*"):
            if b is not None or a % 2:
                raise InvalidFormError(f"{family}(2n) needs a single even argument, got {text!r}")
            return Label("real", family, (a // 2,))
        if b is None:
            raise InvalidFormError(f"{family}(p,q) needs two arguments, got {text!r}")
        p, q = max(a, int(b)), min(a, int(b))
        return Label("real", family, (p, q))
    m = _SPLIT_RE.match(low)
    if m:
        complex_ = bool(m.group(3)) or field.upper() in ("C", "COMPLEX")
        return Label("complex" if complex_ else "split", m.group(1).upper(), (int(m.group(2)),))
    raise InvalidFormError(f"cannot parse algebra label {text!r}")


def _unique_new(old: np.ndarray, new: np.ndarray) -> np.ndarray:
    """Rows of ``new`` absent from ``old``, deduplicated and sorted."""
    if new.shape[0] == 0:
        return new
    both = np.concatenate([old, new]) if old.shape[0] else new
    uniq, first = np.unique(both, axis=0, return_index=True)
    return uniq[first >= old.shape[0]]


@dataclass(frozen=True)
class RootDatum:
    """A (possibly restricted, possibly non-reduced) irreducible root system."""

    label: Label
    roots: WeightMultiset
    simple_roots: Tuple[Vector, ...]
    simple_coroots: Tuple[Vector, ...]
    coweights: Tuple[Vector, ...]
    type_letter: str = field(default="")

    def __post_init__(self):
        for name in ("simple_roots", "simple_coroots", "coweights"):
            vecs = tuple(as_vector(v) for v in getattr(self, name))
            if len(vecs) != self.rank or any(len(v) != self.dim for v in vecs):
                raise InvalidFormError(f"{name} must be {self.rank} vectors of length {self.dim}")
            object.__setattr__(self, name, vecs)
        self._validate()

    # -- basic shape --

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dim(self) -> int:
        return self.roots.rank

    def __str__(self):
        return str(self.label)

    @cached_property
    def root_mult(self) -> Dict[Vector, int]:
        out: Dict[Vector, int] = {}
        for w, m in self.roots.entries:
            out[w] = out.get(w, 0) + m
        return out

    @cached_property
    def cartan_matrix(self) -> np.ndarray:
        """``A[i][j] = alpha_j(coroot_i)``."""
        S = np.array(self.simple_roots, dtype=np.int64)
        K = np.array(self.simple_coroots, dtype=np.int64)
        return K @ S.T

    @cached_property
    def simple_coords(self) -> np.ndarray:
        """Coordinates of every root (in ``roots.entries`` order) in the simple-root basis."""
        W = self.roots.weight_array
        Om = np.array(self.coweights, dtype=np.int64)
        S = np.array(self.simple_roots, dtype=np.int64)
        scale = np.einsum("ij,ij->i", S, Om)
        pair = W @ Om.T
        if (pair % scale).any():
            raise InvalidFormError(f"{self.label}: roots not integral in the simple roots")
        return pair // scale

    # -- validation --

    def _validate(self):
        if self.rank == 0:
            raise InvalidFormError("rank must be positive")
        mult = self.root_mult
        if any(not any(w) for w in mult):
            raise InvalidFormError("the zero vector is not a root")
        for w, m in mult.items():
            if mult.get(tuple(-x for x in w)) != m:
                raise InvalidFormError(f"{self.label}: root {w} has no negative of equal multiplicity")
        S = np.array(self.simple_roots, dtype=np.int64)
        Om = np.array(self.coweights, dtype=np.int64)
        pair = S @ Om.T
        if (np.diag(pair) <= 0).any() or (pair - np.diag(np.diag(pair))).any():
            raise InvalidFormError(f"{self.label}: coweights are not dual to the simple roots")
        if (np.diag(self.cartan_matrix) != 2).any():
            raise InvalidFormError(f"{self.label}: coroots do not pair to 2 with simple roots")
        for s in self.simple_roots:
            if s not in mult:
                raise InvalidFormError(f"{self.label}: simple root {s} is not a root")
        coords = self.simple_coords
        if not ((coords >= 0).all(axis=1) | (coords <= 0).all(axis=1)).all():
            raise InvalidFormError(f"{self.label}: a root mixes signs in the simple-root basis")
        if not (coords @ S == self.roots.weight_array).all():
            raise InvalidFormError(f"{self.label}: a root is outside the span of the simple roots")
        K = self.simple_coroots
        for w, m in mult.items():
            for s, k in zip(self.simple_roots, K):
                c = sum(a * b for a, b in zip(w, k))
                image = tuple(a - c * b for a, b in zip(w, s))
                if mult.get(image) != m:
                    raise InvalidFormError(f"{self.label}: roots not stable under reflection")

    # -- derived data --

    @cached_property
    def positive_mask(self) -> np.ndarray:
        return self.simple_coords.sum(axis=1) > 0

    @property
    def reduced(self) -> bool:
        return not any(tuple(2 * x for x in w) in self.root_mult for w in self.root_mult)

    @property
    def is_split(self) -> bool:
        return self.reduced and all(m == 1 for m in self.root_mult.values())

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Union of the Weyl orbits of the fundamental coweights, as an array."""
        return _edge_array(self.simple_roots, self.simple_coroots, self.coweights)


@lru_cache(maxsize=32)
def _edge_array(simple_roots, simple_coroots, coweights) -> np.ndarray:
    # depends on the reflection data only, so split and complex data share it
    S = np.array(simple_roots, dtype=np.int64)
    K = np.array(simple_coroots, dtype=np.int64)
    out = _orbit(S, K, coweights[0])
    for w in coweights[1:]:
        block = _orbit(S, K, w)
        out = np.concatenate([out, block[~_rows_in(block, out)]])
    out.setflags(write=False)
    return out


def _rows_in(rows: np.ndarray, pool: np.ndarray) -> np.ndarray:
    """Boolean mask of which ``rows`` occur in ``pool``."""
    if pool.shape[0] == 0:
        return np.zeros(rows.shape[0], dtype=bool)
    both = np.concatenate([pool, rows])
    _, first, inv = np.unique(both, axis=0, return_index=True, return_inverse=True)
    inv = inv.reshape(-1)
    return first[inv[pool.shape[0]:]] < pool.shape[0]


# -- Weyl orbits -------------------------------------------------------------

def reflect(R: RootDatum, i: int, Y: Sequence[int]) -> Vector:
    """Simple reflection ``s_i`` (0-based ``i``) on a test vector."""
    Y = as_vector(Y)
    c = sum(a * b for a, b in zip(R.simple_roots[i], Y))
    return tuple(y - c * k for y, k in zip(Y, R.simple_coroots[i]))


def orbit_array(R: RootDatum, v: Sequence[int]) -> np.ndarray:
    """Breadth-first closure of ``{v}`` under the simple reflections.

    Rows are ordered by BFS layer, lexicographically within a layer.  Since
    reflections are involutions, the neighbours of layer ``k`` lie in layers
    ``k-1``, ``k`` and ``k+1``, so only two layers need to be remembered.
    """
    v = as_vector(v)
    if len(v) != R.dim:
        raise InvalidInputError(f"vector has length {len(v)}, expected {R.dim}")
    S = np.array(R.simple_roots, dtype=np.int64)
    K = np.array(R.simple_coroots, dtype=np.int64)
    return _orbit(S, K, v)


def _orbit(S: np.ndarray, K: np.ndarray, v: Vector) -> np.ndarray:
    layer = np.array([v], dtype=np.int64)
    prev = np.zeros((0, layer.shape[1]), dtype=np.int64)
    layers = [layer]
    while True:
        pair = layer @ S.T
        moved = []
        for i in range(S.shape[0]):
            hit = pair[:, i] != 0
            if hit.any():
                moved.append(layer[hit] - pair[hit, i:i + 1] * K[i])
        if not moved:
            break
        cand = np.concatenate(moved)
        fresh = _unique_new(np.concatenate([prev, layer]), cand)
        if fresh.shape[0] == 0:
            break
        prev, layer = layer, fresh
        layers.append(fresh)
    return np.concatenate(layers)


def weyl_orbit(R: RootDatum, v: Sequence[int]) -> List[Vector]:
    """The Weyl orbit of ``v`` as a duplicate-free list (BFS order)."""
    return [tuple(int(x) for x in row) for row in orbit_array(R, v)]


def edge_candidates(R: RootDatum) -> List[Vector]:
    """Generators of the edges of all Weyl chambers: orbits of the fundamental coweights."""
    return [tuple(int(x) for x in row) for row in R.edge_array]


# -- builders ----------------------------------------------------------------

def _unit(d: int, *pairs) -> Vector:
    v = [0] * d
    for idx, c in pairs:
        v[idx] += c
    return tuple(v)


def _classical(letter: str, n: int, label: Label, long: int = 1, short: int = 0,
               double: int = 0) -> RootDatum:
    """Epsilon-coordinate data.  ``long``/``short``/``double`` are the
    multiplicities of ``+-e_i+-e_j``, ``+-e_i`` and ``+-2e_i``."""
    entries = []
    if letter == "A":
        d = n + 1
        for i in range(d):
            for j in range(d):
                if i != j:
                    entries.append((_unit(d, (i, 1), (j, -1)), long))
        simple = [_unit(d, (i, 1), (i + 1, -1)) for i in range(n)]
        coroots = list(simple)
        coweights = [_unit(d, *((j, 1) for j in range(k + 1))) for k in range(n)]
        return RootDatum(label, WeightMultiset(tuple(entries), d), tuple(simple), tuple(coroots),
                         tuple(coweights), "A")
    d = n
    for i in range(d):
        for j in range(i + 1, d):
            for si in (1, -1):
                for sj in (1, -1):
                    entries.append((_unit(d, (i, si), (j, sj)), long))
    if letter in ("B", "BC"):
        for i in range(d):
            for s in (1, -1):
                entries.append((_unit(d, (i, s)), short))
    if letter in ("C", "BC"):
        for i in range(d):
            for s in (2, -2):
                entries.append((_unit(d, (i, s)), double))
    simple = [_unit(d, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    coroots = list(simple)
    coweights = [_unit(d, *((j, 1) for j in range(k + 1))) for k in range(n - 1)]
    last_all = _unit(d, *((j, 1) for j in range(d)))
    if letter in ("B", "BC"):
        simple.append(_unit(d, (n - 1, 1)))
        coroots.append(_unit(d, (n - 1, 2)))
        coweights.append(last_all)
    elif letter == "C":
        simple.append(_unit(d, (n - 1, 2)))
        coroots.append(_unit(d, (n - 1, 1)))
        coweights.append(last_all)
    elif letter == "D":
        simple.append(_unit(d, (n - 2, 1), (n - 1, 1)))
        coroots.append(simple[-1])
        coweights = coweights[:n - 2]
        coweights.append(_unit(d, *((j, 1) for j in range(d - 1)), (d - 1, -1)))
        coweights.append(last_all)
    else:
        raise InvalidFormError(f"unknown classical letter {letter!r}")
    return RootDatum(label, WeightMultiset(tuple(entries), d), tuple(simple), tuple(coroots),
                     tuple(coweights), letter)


def _exceptional_cartan(letter: str, n: int) -> np.ndarray:
    if letter == "G":
        return np.array([[2, -3], [-1, 2]])
    if letter == "F":
        return np.array([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]])
    # E_n, Bourbaki numbering: chain 1-3-4-...-n with node 2 attached to 4
    A = 2 * np.eye(n, dtype=np.int64)
    edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, n - 1)]
    for i, j in edges:
        A[i, j] = A[j, i] = -1
    return A


def _from_cartan(letter: str, n: int, label: Label, mult: int) -> RootDatum:
    """Roots in simple-root coordinates, generated by reflecting the simple roots."""
    A = _exceptional_cartan(letter, n)
    simple = [_unit(n, (i, 1)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(n):
                k = sum(c[j] * int(A[i, j]) for j in range(n))
                image = tuple(x - k * (j == i) for j, x in enumerate(c))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    roots = sorted(seen, key=lambda c: (-sum(c), tuple(-x for x in c)))
    entries = tuple((r, mult) for r in roots)
    coroots = [tuple(int(x) for x in A[i]) for i in range(n)]
    return RootDatum(label, WeightMultiset(entries, n), tuple(simple), tuple(coroots),
                     tuple(simple), letter)


_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _check_split_type(letter: str, rank: int):
    letter = letter.upper()
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
    }.get(letter)
    if ok is None:
        ok = rank in _EXCEPTIONAL_RANKS.get(letter, ())
    if not ok:
        raise InvalidFormError(f"no irreducible root system of type {letter}{rank}")
    return letter


def _build_type(letter: str, rank: int, label: Label, mult: int) -> RootDatum:
    if letter in "ABCD":
        return _classical(letter, rank, label, long=mult, short=mult, double=mult)
    return _from_cartan(letter, rank, label, mult)


def build_split(type_letter: str, rank: int) -> RootDatum:
    """Split real form of the given Cartan type: every multiplicity 1."""
    letter = _check_split_type(type_letter, rank)
    return _build_type(letter, rank, Label("split", letter, (rank,)), 1)


def build_complex(type_letter: str, rank: int) -> RootDatum:
    """Complex simple algebra viewed as a real one: every multiplicity 2."""
    letter = _check_split_type(type_letter, rank)
    return _build_type(letter, rank, Label("complex", letter, (rank,)), 2)


def build_restricted(family: str, *params: int) -> RootDatum:
    """Restricted root datum of a classical non-compact real form.

    ``build_restricted("su", p, q)`` and likewise for so, sp; ``su*`` and
    ``so*`` take ``n`` for su*(2n) and so*(2n).
    """
    family = family.lower()
    if family in ("su", "so", "sp"):
        if len(params) != 2:
            raise InvalidFormError(f"{family}(p,q) takes two parameters")
        p, q = max(params), min(params)
        if q < 1:
            raise InvalidFormError(f"{family}({p},{q}) is compact")
        label = Label("real", family, (p, q))
        if family == "su":
            if p > q:
                return _classical("BC", q, label, long=2, short=2 * (p - q), double=1)
            return _classical("C", q, label, long=2, double=1)
        if family == "so":
            if p + q < 3 or (p, q) == (2, 2):
                raise InvalidFormError(f"so({p},{q}) is not simple")
            if p > q:
                return _classical("B", q, label, long=1, short=p - q)
            return _classical("D", q, label, long=1)
        if p > q:
            return _classical("BC", q, label, long=4, short=4 * (p - q), double=3)
        return _classical("C", q, label, long=4, double=3)
    if family in ("su*", "so*"):
        if len(params) != 1:
            raise InvalidFormError(f"{family}(2n) takes the single parameter n")
        (n,) = params
        label = Label("real", family, (n,))
        if family == "su*":
            if n < 2:
                raise InvalidFormError("su*(2n) needs n >= 2")
            return _classical("A", n - 1, label, long=4)
        if n < 3:
            raise InvalidFormError("so*(2n) needs n >= 3")
        if n % 2 == 0:
            return _classical("C", n // 2, label, long=4, double=1)
        return _classical("BC", (n - 1) // 2, label, long=4, short=4, double=1)
    raise UnsupportedFormError(f"real form family {family!r} is not implemented")


def build(label) -> RootDatum:
    """Build a datum from a :class:`Label` or a label string."""
    if isinstance(label, str):
        label = parse_label(label)
    if label.kind == "split":
        return build_split(label.family, label.params[0])
    if label.kind == "complex":
        return build_complex(label.family, label.params[0])
    return build_restricted(label.family, *label.params)


# -- dimension bookkeeping ------------------------------------------------------

_SPLIT_DIM = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "E": lambda n: {6: 78, 7: 133, 8: 248}[n],
    "F": lambda n: 52,
    "G": lambda n: 14,
}


def dimension_data(label: Label) -> Tuple[int, int]:
    """``(dim_R g, dim_R Z_g(a))`` from closed forms, independent of the roots."""
    if label.kind in ("split", "complex"):
        n = label.params[0]
        d = _SPLIT_DIM[label.family](n)
        return (d, n) if label.kind == "split" else (2 * d, 2 * n)
    f = label.family
    if f == "su":
        p, q = label.params
        return (p + q) ** 2 - 1, (p - q) ** 2 + 2 * q - 1
    if f == "so":
        p, q = label.params
        return (p + q) * (p + q - 1) // 2, (p - q) * (p - q - 1) // 2 + q
    if f == "sp":
        p, q = label.params
        return (p + q) * (2 * (p + q) + 1), (p - q) * (2 * (p - q) + 1) + 4 * q
    if f == "su*":
        (n,) = label.params
        return 4 * n * n - 1, 4 * n - 1
    if f == "so*":
        (n,) = label.params
        return n * (2 * n - 1), 4 * (n // 2) + (n % 2)
    raise UnsupportedFormError(f"no dimension data for {label}")
