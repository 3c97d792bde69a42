from fractions import Fraction

import pytest

from temperkit.errors import InvalidInputError, SizeLimitError
from temperkit.gln import block_diagonal_epsilon, compositions, tempered_bruteforce
from temperkit.levi import (
    all_levis,
    classify_levis,
    generate_table,
    levi_roots,
    levi_tempered,
    levi_type,
    table_predicate,
)
from temperkit.rho import rho2_eval
from temperkit.rootsys import build, build_complex, build_split


def _levi_of_blocks(parts):
    J, pos = [], 0
    for b in parts:
        J += range(pos + 1, pos + b)
        pos += b
    return tuple(J)


# -- Levi roots and types ------------------------------------------------------------

def test_levi_roots_extremes():
    R = build("c3")
    assert len(levi_roots(R, ())) == 0
    assert levi_roots(R, (1, 2, 3)).entries == R.roots.entries


def test_levi_roots_d4_outer_nodes():
    R = build_split("D", 4)
    assert len(levi_roots(R, (1, 3, 4))) == 6
    assert levi_type(R, (1, 3, 4)) == ("a1", "a1", "a1")


def test_levi_roots_keep_multiplicities():
    R = build("su(4,2)")
    assert levi_roots(R, (2,)).entries == (((0, 1), 4), ((0, -1), 4), ((0, 2), 1), ((0, -2), 1))


def test_levi_index_validation():
    with pytest.raises(InvalidInputError):
        levi_roots(build("a2"), (3,))


@pytest.mark.parametrize("name,J,kind", [
    ("b4", (4,), ("a1",)),
    ("b4", (3, 4), ("b2",)),
    ("c4", (3, 4), ("c2",)),
    ("d5", (4, 5), ("a1", "a1")),
    ("d5", (3, 4, 5), ("a3",)),
    ("d5", (2, 3, 4, 5), ("d4",)),
    ("d5", (1, 2, 3, 4), ("a4",)),
    ("e7", (1, 2, 3, 4, 5, 6), ("e6",)),
    ("e7", (2, 3, 4, 5, 6, 7), ("d6",)),
    ("e6", (1, 3, 5), ("a2", "a1")),
    ("f4", (1, 2, 3, 4), ("f4",)),
    ("g2", (1, 2), ("g2",)),
    ("su(4,2)", (1, 2), ("bc2",)),
    ("su*(8)", (1, 2), ("a2",)),
])
def test_levi_types(name, J, kind):
    assert levi_type(build(name), J) == kind


# -- verdicts ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["a1", "b3", "g2", "e6", "su(3,1)", "sp(2,1)", "so*(8)", "f4(C)"])
def test_empty_and_full_levi(name):
    R = build(name)
    assert levi_tempered(R, ()).tempered
    assert levi_tempered(R, ()).extremal_ratio == 0
    full = levi_tempered(R, tuple(range(1, R.rank + 1)))
    assert not full.tempered and full.extremal_ratio == 1


def test_e6_only_d5_is_non_tempered():
    R = build_split("E", 6)
    for row in classify_levis(R):
        if len(row.levi) == 6:
            continue
        assert row.verdict.tempered == ("d5" not in row.levi_type), row.levi


def test_classify_a1():
    rows = classify_levis(build_split("A", 1))
    assert [(r.levi, r.verdict.tempered) for r in rows] == [((), True), ((1,), False)]


def test_classify_g2_proper_all_tempered():
    rows = classify_levis(build_split("G", 2))
    assert all(r.verdict.tempered for r in rows if len(r.levi) < 2)


def test_classify_a3():
    for row in classify_levis(build_split("A", 3)):
        has_a2 = any(k in ("a2", "a3") for k in row.levi_type)
        assert row.verdict.tempered == (not has_a2)


def test_classify_order_is_binary_counting():
    assert all_levis(3) == [(), (1,), (2,), (1, 2), (3,), (1, 3), (2, 3), (1, 2, 3)]


def test_classify_rank_limit():
    with pytest.raises(SizeLimitError):
        classify_levis(build_split("E", 8), limit=7)


@pytest.mark.parametrize("name", ["a4", "b4", "c3", "d5", "e6", "f4", "g2", "su(5,2)", "so(7,3)",
                                  "sp(3,2)", "su*(10)", "so*(10)", "so*(12)", "e7(C)"])
def test_classify_matches_direct_path(name):
    R = build(name)
    for row in classify_levis(R):
        direct = levi_tempered(R, row.levi)
        assert row.verdict == direct, row.levi


def test_witness_violates_inequality():
    R = build("e7")
    for row in classify_levis(R):
        v = row.verdict
        if v.witness is not None:
            assert 2 * rho2_eval(levi_roots(R, row.levi), v.witness) > rho2_eval(R.roots, v.witness)
        assert v.tempered == (v.extremal_ratio <= Fraction(1, 2))


@pytest.mark.parametrize("letter,rank", [("A", 2), ("B", 3), ("C", 4), ("D", 4), ("F", 4), ("G", 2), ("E", 6)])
def test_complex_and_split_verdicts_agree(letter, rank):
    split = classify_levis(build_split(letter, rank))
    complex_ = classify_levis(build_complex(letter, rank))
    assert [r.verdict.tempered for r in split] == [r.verdict.tempered for r in complex_]


@pytest.mark.parametrize("name", ["a5", "c4", "d5", "f4", "su(6,3)", "so*(12)"])
def test_monotonicity(name):
    R = build(name)
    verdicts = {r.levi: r.verdict.tempered for r in classify_levis(R)}
    for J, tempered in verdicts.items():
        if tempered:
            continue
        for j in range(1, R.rank + 1):
            if j not in J:
                assert not verdicts[tuple(sorted(J + (j,)))]


@pytest.mark.parametrize("n", range(2, 8))
def test_gl_consistency(n):
    R = build_split("A", n - 1)
    rows = {r.levi: r.verdict for r in classify_levis(R)}
    for parts in compositions(n):
        v = rows[_levi_of_blocks(parts)]
        rep = tempered_bruteforce(block_diagonal_epsilon(parts))
        assert (v.tempered, v.extremal_ratio) == (rep.tempered, rep.extremal_ratio)


# -- table predicates ---------------------------------------------------------------------

def test_predicate_b4():
    R = build_split("B", 4)
    assert table_predicate(R, (1, 3, 4)) is False
    assert table_predicate(R, (2, 3, 4)) is True


def test_predicate_su33():
    R = build("su(3,3)")
    assert table_predicate(R, (2, 3)) is True
    assert table_predicate(R, (3,)) is False
    assert table_predicate(R, ()) is False
    assert table_predicate(R, (1, 3)) is None


def test_predicate_su_star_8():
    R = build("su*(8)")
    assert table_predicate(R, (1, 2)) is True
    assert table_predicate(R, (1, 3)) is False


def test_predicate_d_fork_rows():
    R = build_split("D", 5)
    assert table_predicate(R, (1, 2, 3, 4)) and table_predicate(R, (1, 2, 3, 5))
    assert table_predicate(R, (2, 3, 4, 5)) is True
    assert table_predicate(R, (3, 4, 5)) is False


def test_predicate_full_levi():
    assert table_predicate(build("g2"), (1, 2)) is True


# -- tables ----------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_table_a(n):
    assert generate_table(build_split("A", n)).passed


@pytest.mark.parametrize("name", ["b2", "b5", "c2", "c5", "d4", "d6", "e6", "e7", "f4", "g2",
                                  "e6(C)", "f4(C)"])
def test_table_split_and_complex(name):
    assert generate_table(build(name)).passed


def test_table_e8_only_e7():
    rows = generate_table(build_split("E", 8)).rows
    bad = [r for r in rows if not r.verdict.tempered and len(r.levi) < 8]
    assert bad and all(r.levi_type == ("e7",) for r in bad)
    assert all(r.match for r in rows)


@pytest.mark.parametrize("name", ["su(2,1)", "so(5,1)", "sp(4,1)", "so*(6)"])
def test_rank_one_forms(name):
    rows = classify_levis(build(name))
    assert [(r.levi, r.verdict.tempered) for r in rows] == [((), True), ((1,), False)]


@pytest.mark.parametrize("name", ["su(3,3)", "su(6,4)", "so(7,3)", "sp(5,3)", "su*(8)", "su*(12)",
                                  "so*(8)", "so*(10)"])
def test_table2_rows(name):
    assert generate_table(build(name)).passed


def test_su33_pure_parabolics():
    R = build("su(3,3)")
    assert [levi_tempered(R, J).tempered for J in [(2, 3), (3,), ()]] == [False, True, True]


def test_so_star_12_c2_levi_is_non_tempered():
    # the printed row "m >= n+2" never fires since m <= n; the computed
    # verdict for the so*(8) factor (J = {2,3}) is nonetheless non-tempered
    R = build("so*(12)")
    v = levi_tempered(R, (2, 3))
    assert not v.tempered
    assert v.extremal_ratio == Fraction(5, 9)
    assert v.witness == (0, 1, 0)
    assert rho2_eval(levi_roots(R, (2, 3)), (0, 0, 1)) == 20
    assert rho2_eval(R.roots, (0, 0, 1)) == 36
    assert table_predicate(R, (2, 3)) is False
    mismatches = generate_table(R).mismatches
    assert [r.levi for r in mismatches] == [(2, 3)]
