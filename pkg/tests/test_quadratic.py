import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from temperkit.errors import InvalidInputError, SizeLimitError
from temperkit.quadratic import QuadForm, quad_f, quad_lemma_check, quad_table, recursion_defect

PAIR = QuadForm(((1, -1), (-1, 1)), (2, 2))


def test_f_at_zero():
    assert quad_f(PAIR, (0, 0)) == 0


def test_f_at_unit_vectors():
    Q = QuadForm(((1, -2, 0), (-2, 1, -1), (0, -1, 1)), (3, 2, 4))
    for l0 in range(3):
        expected = Q.n_vec[l0] - 1 + sum(Q.a[l0][l] * Q.n_vec[l] for l in range(3) if l != l0)
        assert quad_f(Q, Q.unit(l0)) == expected


def test_f_direct_substitution():
    assert quad_f(PAIR, (2, 0)) == -4


def test_f_outside_box():
    with pytest.raises(InvalidInputError):
        quad_f(PAIR, (3, 0))
    with pytest.raises(InvalidInputError):
        quad_f(PAIR, (1,))


def test_lemma_pair():
    res = quad_lemma_check(PAIR)
    assert res.premise and res.holds and res.witness is None
    assert all(quad_f(PAIR, m) <= 0 for m in PAIR.box())
    assert PAIR.box_size == 9


def test_lemma_rank_one():
    res = quad_lemma_check(QuadForm(((1,),), (1,)))
    assert res.premise and res.holds


def test_lemma_premise_failed():
    res = quad_lemma_check(QuadForm(((1, 0), (0, 1)), (3, 3)))
    assert not res.premise and not res
    assert quad_f(QuadForm(((1, 0), (0, 1)), (3, 3)), (1, 0)) == 2


def test_box_limit():
    with pytest.raises(SizeLimitError):
        quad_lemma_check(QuadForm(((1,),), (10,)), limit=5)


def test_table_matches_scalar():
    Q = QuadForm(((1, -1, -2), (-1, 1, 0), (-2, 0, 1)), (2, 3, 1))
    F = quad_table(Q)
    for m in Q.box():
        assert F[m] == quad_f(Q, m)


@pytest.mark.parametrize("a", [
    ((1, 1), (1, 1)),
    ((2, -1), (-1, 1)),
    ((1, -1), (0, 1)),
])
def test_form_validation(a):
    with pytest.raises(InvalidInputError):
        QuadForm(a, (1, 1))


def test_recursion_identity_example():
    assert recursion_defect(PAIR, (2, 1), 0) == 0
    with pytest.raises(InvalidInputError):
        recursion_defect(PAIR, (0, 1), 0)


forms = st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.lists(st.sampled_from([0, -1, -2, -3]), min_size=r * (r - 1) // 2, max_size=r * (r - 1) // 2),
    st.lists(st.integers(1, 5), min_size=r, max_size=r),
)).map(lambda t: _form(*t))


def _form(offdiag, n_vec):
    r = len(n_vec)
    a = [[int(k == l) for l in range(r)] for k in range(r)]
    for (k, l), v in zip(itertools.combinations(range(r), 2), offdiag):
        a[k][l] = a[l][k] = v
    return QuadForm(tuple(map(tuple, a)), tuple(n_vec))


@given(forms)
def test_lemma_never_fails(Q):
    res = quad_lemma_check(Q)
    assert not res.premise or res.holds


@given(forms, st.data())
def test_recursion_identity(Q, data):
    m = tuple(data.draw(st.integers(0, nk)) for nk in Q.n_vec)
    for l in range(Q.r):
        if m[l] >= 1:
            assert recursion_defect(Q, m, l) == 0
