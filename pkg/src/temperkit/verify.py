"""Verification suites: every closed-form criterion against its brute-force oracle.

Each suite returns a :class:`VerificationReport`.  A mismatch records enough
input to rebuild the failing case by hand.  Randomized suites draw from
numpy's PCG64 generator seeded with ``[seed, n, k]`` for the ``k``-th matrix
of size ``n``, so the corpus is the same on every platform.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Sequence, Tuple

import numpy as np

from . import gln
from .errors import InvalidInputError
from .levi import all_levis, classify_levis, generate_table, levi_tempered
from .quadratic import QuadForm, quad_lemma_check, quad_table
from .reports import frac_str
from .rho import WeightMultiset, rho2_batch, rho2_eval
from .rootsys import RootDatum, build, build_complex, build_restricted, build_split, reflect

DENSITIES = (0.05, 0.1, 0.15, 0.25, 0.4)


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    mismatches: List[Dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def fail(self, **case):
        self.mismatches.append(case)

    def as_dict(self, timing: bool = False) -> Dict[str, Any]:
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "mismatches": self.mismatches,
            "notes": self.notes,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _timed(fn):
    def run(**kwargs) -> VerificationReport:
        start = time.perf_counter()
        report = fn(**kwargs)
        report.wall_time = time.perf_counter() - start
        return report

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# -- gl_n corpus ----------------------------------------------------------------

def epsilon_corpus(n: int, seed: int = 0, samples: int = 10_000) -> Iterator[Tuple[Dict[str, Any], gln.EpsilonMatrix]]:
    """Random closed matrices, then every parabolic and every ``p cap q^o``.

    Each item comes with a small dict that rebuilds it.
    """
    for k in range(samples):
        density = DENSITIES[k % len(DENSITIES)]
        yield ({"kind": "random", "n": n, "seed": [seed, n, k], "density": density},
               gln.random_closed_epsilon(n, [seed, n, k], density))
    comps = list(gln.compositions(n))
    for P in comps:
        for orientation in ("upper", "lower"):
            yield ({"kind": "parabolic", "parts": list(P), "orientation": orientation},
                   gln.epsilon_from_parabolic(P, orientation))
    for P in comps:
        for Q in comps:
            yield ({"kind": "intersection", "P": list(P), "Q": list(Q)},
                   gln.epsilon_intersection(P, Q))


@_timed
def suite_tensor(max_n: int = 8, **_) -> VerificationReport:
    """Closed form ``d(P) + d(Q) <= n + 1`` against the subset oracle on ``p cap q^o``."""
    rep = VerificationReport("thm-tensor")
    for n in range(2, max_n + 1):
        comps = list(gln.compositions(n))
        for P in comps:
            for Q in comps:
                rep.cases += 1
                closed = gln.tensor_tempered(P, Q)
                oracle = gln.tempered_bruteforce(gln.epsilon_intersection(P, Q))
                if closed != oracle.tempered:
                    rep.fail(P=list(P), Q=list(Q), closed_form=closed, oracle=oracle.tempered,
                             witness=oracle.witness)
    return rep


@_timed
def suite_subalgebra(max_n: int = 8, seed: int = 0, samples: int = 10_000, **_) -> VerificationReport:
    """``n`` image-dimension inequalities against all ``2^n - 2`` subset inequalities."""
    rep = VerificationReport("thm-subalgebra")
    for n in range(2, max_n + 1):
        for case, h in epsilon_corpus(n, seed, samples):
            rep.cases += 1
            fast = gln.tempered_fast(h)
            oracle = gln.tempered_bruteforce(h)
            if fast != oracle.tempered:
                rep.fail(input=case, eps=h.to_text(), fast=fast, oracle=oracle.tempered,
                         witness=oracle.witness)
    return rep


@_timed
def suite_bp(max_n: int = 8, seed: int = 0, samples: int = 10_000,
             exponents: Sequence[int] = (2, 4, 6), **_) -> VerificationReport:
    """Singleton inequalities imply the inequalities for every subset."""
    rep = VerificationReport("bp")
    for n in range(2, max_n + 1):
        subsets, _ = gln.proper_subsets(n)
        single = np.array([len(s) == 1 for s in subsets])
        for case, h in epsilon_corpus(n, seed, samples):
            _, rh, rg = gln.subset_rho2(h)
            fast = gln.tempered_fast(h)
            for p in exponents:
                rep.cases += 1
                ok = p * rh <= (p - 1) * rg
                if ok[single].all() and not ok.all():
                    bad = subsets[int(np.flatnonzero(~ok)[0])]
                    rep.fail(input=case, eps=h.to_text(), p=p, subset=bad)
                if p == 2 and bool(ok[single].all()) != fast:
                    rep.fail(input=case, eps=h.to_text(), p=2, singletons=bool(ok[single].all()),
                             fast=fast)
    return rep


@_timed
def suite_bp_counterexample(**_) -> VerificationReport:
    """The (2,2) parabolic of gl_4 at p = 3: singletons pass, ``I = {1,3}`` fails."""
    rep = VerificationReport("bp-counterexample")
    h = gln.epsilon_from_parabolic((2, 2))
    p = 3
    single_ok, _ = gln.lp_criterion(h, p, "singletons")
    all_ok, witness = gln.lp_criterion(h, p, "all_subsets")
    h_roots, g_roots = gln.adjoint_weights(h), gln.gl_weights(4)
    # in units of rho itself: p rho_h(E_I) versus (p-1) rho_g(E_I)
    sides = {}
    for I in [(1,), (2,), (3,), (4,), (1, 3)]:
        Y = [int(i + 1 in I) for i in range(4)]
        sides[I] = (p * rho2_eval(h_roots, Y) // 2, (p - 1) * rho2_eval(g_roots, Y) // 2)
    rep.cases = 1
    expected_single = all(sides[(i,)] == (6, 6) for i in range(1, 5))
    if not (single_ok and expected_single and not all_ok and witness == (1, 3)
            and sides[(1, 3)] == (9, 8)):
        rep.fail(singletons=single_ok, all_subsets=all_ok, witness=witness,
                 sides={str(k): v for k, v in sides.items()})
    rep.notes = {
        "singletons_pass": single_ok,
        "all_subsets_pass": all_ok,
        "witness": witness,
        "singleton_sides": [list(sides[(i,)]) for i in range(1, 5)],
        "witness_sides": list(sides[(1, 3)]),
    }
    return rep


def _quad_forms(r: int, max_n: int, offdiag: Sequence[int]) -> Iterator[QuadForm]:
    pairs = [(k, l) for k in range(r) for l in range(k + 1, r)]
    for values in itertools.product(offdiag, repeat=len(pairs)):
        a = [[int(k == l) for l in range(r)] for k in range(r)]
        for (k, l), v in zip(pairs, values):
            a[k][l] = a[l][k] = v
        for n_vec in itertools.product(range(1, max_n + 1), repeat=r):
            yield QuadForm(tuple(map(tuple, a)), n_vec)


@_timed
def suite_quad(r: int = 3, max_n: int = 4, offdiag: Sequence[int] = (0, -1, -2), **_) -> VerificationReport:
    """The unit-vector premise forces ``f <= 0`` on the box; the recursion identity holds."""
    rep = VerificationReport("quad")
    premise_count = 0
    for size in range(1, r + 1):
        for Q in _quad_forms(size, max_n, offdiag):
            rep.cases += 1
            res = quad_lemma_check(Q)
            if res.premise:
                premise_count += 1
                if not res.holds:
                    rep.fail(a=Q.a, n_vec=Q.n_vec, witness=res.witness)
            F = quad_table(Q)
            a = np.array(Q.a, dtype=np.int64)
            M = np.indices(F.shape, dtype=np.int64)
            for l in range(size):
                hi = [slice(None)] * size
                lo = [slice(None)] * size
                hi[l], lo[l] = slice(1, None), slice(0, -1)
                lin = np.tensordot(a[:, l], M, axes=1)[tuple(hi)]
                defect = F[tuple(hi)] - (F[tuple(lo)] + F[Q.unit(l)] + 2 - 2 * lin)
                if defect.any():
                    m = np.argwhere(defect != 0)[0]
                    m[l] += 1
                    rep.fail(a=Q.a, n_vec=Q.n_vec, identity_at=[int(x) for x in m], l=l + 1)
    rep.notes = {"forms_with_premise": premise_count}
    return rep


@_timed
def suite_lp(max_n: int = 8, exponents: Sequence[int] = (2, 4, 6, 8), **_) -> VerificationReport:
    """Exact ``p_{g/h}`` against ``(m-1)/(n-m)``, and the almost-L^p verdicts, for block Levis."""
    rep = VerificationReport("lp")
    value_cases = value_fail = verdict_fail = 0
    for n in range(1, max_n + 1):
        for total in range(1, n + 1):
            for parts in gln.compositions(total):
                m = max(parts)
                if m >= n:
                    continue
                rep.cases += 1
                value_cases += 1
                value = gln.lp_exponent(parts, n)
                expected = Fraction(m - 1, n - m)
                if value != expected:
                    value_fail += 1
                    rep.fail(check="value", parts=list(parts), n=n, lp_exponent=frac_str(value),
                             expected=frac_str(expected))
                for p in exponents:
                    rep.cases += 1
                    if gln.almost_lp(parts, n, p) != gln.almost_lp_closed_form(parts, n, p):
                        verdict_fail += 1
                        rep.fail(check="verdict", parts=list(parts), n=n, p=p)
        if n >= 2:
            rep.cases += 1
            if gln.lp_exponent((n,), n) != float("inf"):
                rep.fail(check="degenerate", parts=[n], n=n, expected="inf")
    rep.notes = {
        "value_cases": value_cases,
        "value_mismatches": value_fail,
        "verdict_mismatches": verdict_fail,
    }
    return rep


# -- root systems ---------------------------------------------------------------

TABLE1_TYPES: Tuple[Tuple[str, int], ...] = tuple(
    [("A", n) for n in range(1, 8)]
    + [("B", n) for n in range(2, 7)]
    + [("C", n) for n in range(2, 7)]
    + [("D", n) for n in range(3, 7)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


def table2_labels(max_sum: int = 10, max_star: int = 6) -> List[str]:
    out = []
    for s in range(2, max_sum + 1):
        for q in range(1, s // 2 + 1):
            p = s - q
            out.append(f"su({p},{q})")
            if p >= q + 2:
                out.append(f"so({p},{q})")
            out.append(f"sp({p},{q})")
    out += [f"su*({2 * n})" for n in range(2, max_star + 1)]
    out += [f"so*({2 * n})" for n in range(3, max_star + 1)]
    return out


def _table_mismatches(rep: VerificationReport, R: RootDatum, levis=None):
    table = generate_table(R)
    for row in table.rows:
        if levis is not None and row.levi not in levis:
            continue
        if row.match is None:
            continue
        rep.cases += 1
        if row.match is False:
            rep.fail(g_label=table.label, levi_subset=list(row.levi), levi_type=list(row.levi_type),
                     computed_tempered=row.verdict.tempered, table_says_tempered=not row.predicate,
                     extremal_ratio=frac_str(row.verdict.extremal_ratio),
                     witness=row.verdict.witness)
    return table


@_timed
def suite_table1(types: Sequence[Tuple[str, int]] = TABLE1_TYPES, **_) -> VerificationReport:
    """Every Levi of every split and complex type, against the split/complex table."""
    rep = VerificationReport("table1")
    for letter, n in types:
        for builder in (build_split, build_complex):
            _table_mismatches(rep, builder(letter, n))
    # d3 = a3 through the relabelling of nodes 2 <-> 1
    d3, a3 = build_split("D", 3), build_split("A", 3)
    relabel = {1: 2, 2: 1, 3: 3}
    for J in all_levis(3):
        rep.cases += 1
        vd = levi_tempered(d3, J)
        va = levi_tempered(a3, tuple(sorted(relabel[j] for j in J)))
        if (vd.tempered, vd.extremal_ratio) != (va.tempered, va.extremal_ratio):
            rep.fail(check="d3=a3", levi_subset=list(J))
    return rep


def _pure_levis(q: int) -> List[Tuple[int, ...]]:
    return [tuple(range(k + 1, q + 1)) for k in range(1, q + 1)]


@_timed
def suite_table2(max_sum: int = 10, max_star: int = 6, **_) -> VerificationReport:
    """Classical non-split real forms: pure parabolics, su*(2n) blocks, so*(2n) rows."""
    rep = VerificationReport("table2")
    for name in table2_labels(max_sum, max_star):
        R = build(name)
        if R.label.family in ("su", "so", "sp"):
            if R.is_split:
                continue
            _table_mismatches(rep, R, set(_pure_levis(R.label.params[1])))
        else:
            _table_mismatches(rep, R)
    return rep


def case_ab_labels() -> List[str]:
    rank_one = [f"su({p},1)" for p in range(1, 9)] + [f"so({p},1)" for p in range(2, 10)]
    rank_one += [f"sp({p},1)" for p in range(1, 9)] + ["so*(6)"]
    small = []
    for s in range(2, 7):
        for q in range(2, s // 2 + 1):
            p = s - q
            if s <= 5:
                small.append(f"su({p},{q})")
            if s <= 6 and (p, q) not in ((2, 2), (3, 3)):
                small.append(f"so({p},{q})")
            if s <= 4:
                small.append(f"sp({p},{q})")
    return rank_one + small + ["f4", "g2", "f4(C)", "g2(C)"]


@_timed
def suite_case_ab(**_) -> VerificationReport:
    """Real rank one, and the small forms whose every proper parabolic is tempered."""
    rep = VerificationReport("case-ab")
    for name in case_ab_labels():
        R = build(name)
        for row in classify_levis(R):
            if len(row.levi) == R.rank:
                continue
            rep.cases += 1
            if not row.verdict.tempered:
                rep.fail(g_label=str(R.label), levi_subset=list(row.levi),
                         extremal_ratio=frac_str(row.verdict.extremal_ratio),
                         witness=row.verdict.witness)
    rep.notes = {"excluded": ["so(2,2) (not simple)", "so(3,3) (= sl_4(R), split)"]}
    return rep


def _random_multiset(rng: np.random.Generator, rank: int) -> WeightMultiset:
    size = int(rng.integers(0, 7))
    weights = rng.integers(-3, 4, size=(size, rank))
    mults = rng.integers(1, 4, size=size)
    return WeightMultiset(tuple((tuple(w), int(m)) for w, m in zip(weights, mults)), rank)


INVARIANT_TYPES: Tuple[Tuple[str, int], ...] = (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4),
    ("C", 3), ("C", 4), ("D", 4), ("D", 5), ("E", 6), ("F", 4), ("G", 2),
)


@_timed
def suite_invariants(seed: int = 0, samples: int = 100_000, max_n: int = 8, **_) -> VerificationReport:
    """rho identities, Weyl invariance, scaling, monotonicity and the gl cross-check."""
    rep = VerificationReport("invariants")
    rng = np.random.default_rng([seed, 9])
    per = 100
    for t in range(max(1, samples // per)):
        rank = int(rng.integers(1, 6))
        V, W = _random_multiset(rng, rank), _random_multiset(rng, rank)
        Y = rng.integers(-5, 6, size=(per, rank))
        Z = rng.integers(-5, 6, size=(per, rank))
        c = rng.integers(-4, 5, size=per)
        rY, rZ, rYZ = rho2_batch(V, Y), rho2_batch(V, Z), rho2_batch(V, Y + Z)
        rep.cases += per
        if (rho2_batch(V, c[:, None] * Y) != np.abs(c) * rY).any():
            rep.fail(check="homogeneity", trial=t)
        if (rYZ > rY + rZ).any():
            rep.fail(check="subadditivity", trial=t)
        if (rho2_batch(V + W, Y) != rY + rho2_batch(W, Y)).any():
            rep.fail(check="additivity", trial=t)
        if rho2_eval(V, Y[0]) != rY[0]:
            rep.fail(check="batch-vs-scalar", trial=t)

    data = []
    for letter, n in INVARIANT_TYPES:
        data.append(build_split(letter, n))
    data += [build_restricted("su", 4, 2), build_restricted("sp", 3, 2), build_restricted("so*", 5)]
    for R in data:
        # Weyl invariance of rho_g along random reflection words
        for _ in range(20):
            Y = tuple(int(x) for x in rng.integers(-4, 5, size=R.dim))
            base = rho2_eval(R.roots, Y)
            for i in rng.integers(0, R.rank, size=12):
                Y = reflect(R, int(i), Y)
                rep.cases += 1
                if rho2_eval(R.roots, Y) != base:
                    rep.fail(check="weyl-invariance", g_label=str(R.label), Y=Y)
        rows = {row.levi: row.verdict for row in classify_levis(R)}
        # monotonicity in J
        for J, v in rows.items():
            if v.tempered:
                continue
            for j in range(1, R.rank + 1):
                if j in J:
                    continue
                rep.cases += 1
                if rows[tuple(sorted(J + (j,)))].tempered:
                    rep.fail(check="monotonicity", g_label=str(R.label), levi_subset=list(J), added=j)
        if R.label.kind == "split":
            scaled = build_complex(R.label.family, R.label.params[0])
            for row in classify_levis(scaled):
                rep.cases += 1
                if row.verdict.tempered != rows[row.levi].tempered:
                    rep.fail(check="multiplicity-scaling", g_label=str(R.label),
                             levi_subset=list(row.levi))

    # gl_n against A_{n-1}, and the chamber edges against the E_I
    for n in range(2, max_n + 1):
        R = build_split("A", n - 1)
        rep.cases += 1
        edges = {tuple(int(x) for x in row) for row in R.edge_array}
        subsets, _ = gln.proper_subsets(n)
        if edges != {tuple(int(i + 1 in s) for i in range(n)) for s in subsets}:
            rep.fail(check="edges-are-E_I", n=n)
        rows = {row.levi: row.verdict for row in classify_levis(R)}
        for parts in gln.compositions(n):
            rep.cases += 1
            J, pos = [], 0
            for b in parts:
                J += range(pos + 1, pos + b)
                pos += b
            v = rows[tuple(J)]
            oracle = gln.tempered_bruteforce(gln.block_diagonal_epsilon(parts))
            if (v.tempered, v.extremal_ratio) != (oracle.tempered, oracle.extremal_ratio):
                rep.fail(check="gl-consistency", parts=list(parts), levi_subset=J)
    return rep


SUITES: Dict[str, Callable[..., VerificationReport]] = {
    "thm-tensor": suite_tensor,
    "thm-subalgebra": suite_subalgebra,
    "bp": suite_bp,
    "bp-counterexample": suite_bp_counterexample,
    "quad": suite_quad,
    "lp": suite_lp,
    "table1": suite_table1,
    "table2": suite_table2,
    "case-ab": suite_case_ab,
    "invariants": suite_invariants,
}


def run_suites(names: Sequence[str], **options) -> List[VerificationReport]:
    """Run the named suites (``"all"`` expands to every suite) with shared options.

    Options left as None fall back to each suite's own default.
    """
    if not names or "all" in names:
        names = list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise InvalidInputError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    options = {k: v for k, v in options.items() if v is not None}
    return [SUITES[name](**options) for name in names]
