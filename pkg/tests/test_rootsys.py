import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from temperkit.errors import InvalidFormError, InvalidInputError
from temperkit.gln import proper_subsets
from temperkit.rho import rho2_eval
from temperkit.rootsys import (
    Label,
    build,
    build_complex,
    build_restricted,
    build_split,
    dimension_data,
    edge_candidates,
    orbit_array,
    parse_label,
    reflect,
    weyl_orbit,
)

ROOT_COUNTS = [
    ("A", 1, 2), ("A", 2, 6), ("A", 5, 30), ("B", 2, 8), ("B", 4, 32), ("C", 3, 18),
    ("C", 2, 8), ("D", 4, 24), ("D", 5, 40), ("D", 3, 12), ("E", 6, 72), ("E", 7, 126),
    ("E", 8, 240), ("F", 4, 48), ("G", 2, 12),
]


@pytest.mark.parametrize("letter,rank,count", ROOT_COUNTS)
def test_root_counts(letter, rank, count):
    R = build_split(letter, rank)
    assert len(R.roots) == count
    assert R.rank == rank
    assert R.is_split and R.reduced


def test_a2_roots():
    R = build_split("A", 2)
    expected = {tuple(int(k == i) - int(k == j) for k in range(3))
                for i in range(3) for j in range(3) if i != j}
    assert set(R.root_mult) == expected


def test_b2_roots():
    R = build_split("B", 2)
    assert set(R.root_mult) == {(1, 1), (1, -1), (-1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_invalid_split_types():
    for letter, rank in [("A", 0), ("E", 5), ("F", 3), ("G", 3), ("B", 1), ("H", 3), ("D", 2)]:
        with pytest.raises(InvalidFormError):
            build_split(letter, rank)


def test_complex_multiplicities():
    R = build_complex("A", 1)
    assert R.root_mult == {(1, -1): 2, (-1, 1): 2}
    G = build_complex("G", 2)
    assert len(G.roots) == 12 and G.roots.total_multiplicity == 24
    assert not G.is_split


def test_cartan_diagonal_and_coweight_duality():
    for letter, rank, _ in ROOT_COUNTS:
        R = build_split(letter, rank)
        assert (np.diag(R.cartan_matrix) == 2).all()
        pair = np.array(R.simple_roots) @ np.array(R.coweights).T
        assert (pair == np.diag(np.diag(pair))).all() and (np.diag(pair) > 0).all()


def test_simple_coordinates_sign_coherent():
    R = build_split("E", 7)
    coords = R.simple_coords
    assert ((coords >= 0).all(axis=1) | (coords <= 0).all(axis=1)).all()


# -- restricted data -----------------------------------------------------------------

def test_su21():
    R = build_restricted("su", 2, 1)
    assert R.root_mult == {(1,): 2, (-1,): 2, (2,): 1, (-2,): 1}
    assert R.roots.total_multiplicity == 6
    assert dimension_data(R.label) == (8, 2)


def test_sp11():
    R = build_restricted("sp", 1, 1)
    assert R.root_mult == {(2,): 3, (-2,): 3}
    assert dimension_data(R.label) == (10, 4)


def test_su_star_4():
    R = build_restricted("su*", 2)
    assert R.root_mult == {(1, -1): 4, (-1, 1): 4}
    assert dimension_data(R.label) == (15, 7)


@pytest.mark.parametrize("name", [
    "su(2,1)", "su(3,3)", "su(5,2)", "so(4,1)", "so(5,2)", "so(4,4)", "so(7,3)", "sp(1,1)",
    "sp(3,1)", "sp(2,2)", "su*(4)", "su*(10)", "so*(6)", "so*(8)", "so*(10)", "so*(12)",
    "a3", "e6", "g2(C)", "f4",
])
def test_dimension_bookkeeping(name):
    R = build(name)
    dim_g, dim_centralizer = dimension_data(R.label)
    assert R.roots.total_multiplicity == dim_g - dim_centralizer


def test_restricted_invalid():
    for args in [("so", 2, 2), ("so", 1, 1), ("su", 3, 0), ("su*", 1), ("so*", 2), ("sp", 2)]:
        with pytest.raises(InvalidFormError):
            build_restricted(*args)


def test_split_real_forms_are_split():
    assert build("so(4,3)").is_split and build("so(4,3)").type_letter == "B"
    assert build("so(3,3)").is_split and build("so(3,3)").type_letter == "D"
    assert not build("su(2,2)").is_split


# -- labels ----------------------------------------------------------------------

def test_parse_label():
    assert parse_label("e6") == Label("split", "E", (6,))
    assert parse_label("A2") == Label("split", "A", (2,))
    assert parse_label("g2(C)") == Label("complex", "G", (2,))
    assert parse_label("f4", field="C") == Label("complex", "F", (4,))
    assert parse_label("su(1,3)") == Label("real", "su", (3, 1))
    assert parse_label("su*(8)") == Label("real", "su*", (4,))
    assert str(parse_label("so*(10)")) == "so*(10)"
    assert str(parse_label("b_3")) == "b3"
    for bad in ("x5", "su(3)", "su*(7)", "so*(4,2)"):
        with pytest.raises(InvalidFormError):
            parse_label(bad)


# -- orbits and edges -------------------------------------------------------------

def test_orbit_a2_fundamental():
    R = build_split("A", 2)
    assert len(weyl_orbit(R, R.coweights[0])) == 3


def test_orbit_of_zero():
    for name in ("b3", "g2", "su(3,1)"):
        R = build(name)
        assert weyl_orbit(R, (0,) * R.dim) == [(0,) * R.dim]


def test_orbit_b2_e1():
    R = build_split("B", 2)
    assert set(weyl_orbit(R, (1, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_orbit_rank_mismatch():
    with pytest.raises(InvalidInputError):
        orbit_array(build_split("B", 2), (1, 0, 0))


def test_edges_b2_and_g2():
    B = build_split("B", 2)
    assert [len(weyl_orbit(B, w)) for w in B.coweights] == [4, 4]
    assert len(edge_candidates(B)) == 8
    G = build_split("G", 2)
    assert [len(weyl_orbit(G, w)) for w in G.coweights] == [6, 6]


@pytest.mark.parametrize("n", range(2, 8))
def test_edges_type_a_are_the_E_I(n):
    R = build_split("A", n - 1)
    edges = set(edge_candidates(R))
    subsets, _ = proper_subsets(n)
    assert edges == {tuple(int(i + 1 in s) for i in range(n)) for s in subsets}


@pytest.mark.parametrize("letter,rank,sizes", [
    ("E", 6, [27, 72, 216, 720, 216, 27]),
    ("F", 4, [24, 96, 96, 24]),
    ("E", 7, [126, 576, 2016, 10080, 4032, 756, 56]),
])
def test_exceptional_orbit_sizes(letter, rank, sizes):
    R = build_split(letter, rank)
    assert [len(orbit_array(R, w)) for w in R.coweights] == sizes


def test_edges_are_primitive_and_closed():
    for name in ("c3", "d4", "g2", "su(4,2)", "so*(10)"):
        R = build(name)
        edges = set(edge_candidates(R))
        for Y in edges:
            assert any(Y) and np.gcd.reduce(np.abs(Y)) == 1
            for i in range(R.rank):
                assert reflect(R, i, Y) in edges


def test_complex_and_split_share_edges():
    assert build_split("F", 4).edge_array is build_complex("F", 4).edge_array


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["a4", "b3", "c4", "d5", "e6", "f4", "g2", "su(5,2)", "sp(4,3)", "so*(10)"]),
       st.data())
def test_rho_g_weyl_invariant(name, data):
    R = build(name)
    Y = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=R.dim, max_size=R.dim)))
    word = data.draw(st.lists(st.integers(0, R.rank - 1), max_size=10))
    Z = Y
    for i in word:
        Z = reflect(R, i, Z)
    assert rho2_eval(R.roots, Z) == rho2_eval(R.roots, Y)


def test_reflections_are_involutions():
    R = build_split("E", 8)
    Y = tuple(range(1, 9))
    for i in range(8):
        assert reflect(R, i, reflect(R, i, Y)) == Y


def test_root_sets_are_weyl_stable():
    for name in ("b3", "g2", "f4", "su(4,2)"):
        R = build(name)
        pairs = itertools.product(range(R.rank), list(R.root_mult))
        # reflections on weights: alpha -> alpha - alpha(coroot_i) alpha_i
        for i, w in pairs:
            c = sum(a * b for a, b in zip(w, R.simple_coroots[i]))
            image = tuple(x - c * s for x, s in zip(w, R.simple_roots[i]))
            assert R.root_mult[image] == R.root_mult[w]
