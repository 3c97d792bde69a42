import json
import math
from fractions import Fraction

import pytest

from temperkit.errors import InvalidInputError
from temperkit.gln import parse_epsilon
from temperkit.reports import envelope, frac_str, text_table, to_csv, to_json, type_str
from temperkit.verify import SUITES, VerificationReport, epsilon_corpus, run_suites, table2_labels


def test_frac_str():
    assert frac_str(Fraction(5, 9)) == "5/9"
    assert frac_str(2) == "2/1"
    assert frac_str(math.inf) == "inf"


def test_type_str():
    assert type_str(()) == "-"
    assert type_str(("a2", "a1")) == "a2+a1"


def test_json_sorted_and_exact():
    text = to_json(envelope("x", b=Fraction(1, 3), a=(1, 2)))
    assert json.loads(text) == {"schema": "temperkit/1", "command": "x", "a": [1, 2], "b": "1/3"}
    assert text.index('"a"') < text.index('"b"') < text.index('"command"')


def test_csv_and_text_cells():
    rec = [{"x": [1, 2], "y": None, "z": True}]
    assert to_csv(rec, ("x", "y", "z")) == "x,y,z\n1 2,,true\n"
    assert text_table(rec, ("x", "y", "z")).splitlines()[2] == "{1,2}  -  yes"


def test_report_dict_omits_timing():
    rep = VerificationReport("s", cases=3, wall_time=1.5)
    rep.fail(n=2)
    d = rep.as_dict()
    assert not rep.passed and "wall_time" not in d and d["mismatches"] == [{"n": 2}]
    assert rep.as_dict(timing=True)["wall_time"] == 1.5


def test_corpus_is_closed_and_reproducible():
    a = [(case, h.to_text()) for case, h in epsilon_corpus(4, seed=5, samples=20)]
    b = [(case, h.to_text()) for case, h in epsilon_corpus(4, seed=5, samples=20)]
    assert a == b
    assert all(parse_epsilon(text).to_text() == text for _, text in a)
    # 20 random, 8 compositions in two orientations, 64 intersections
    assert len(a) == 20 + 16 + 64


def test_table2_labels():
    labels = table2_labels()
    assert "su(5,5)" in labels and "so(8,2)" in labels and "sp(9,1)" in labels
    assert "so(5,4)" not in labels
    assert "su*(12)" in labels and "so*(12)" in labels and "so*(6)" in labels


def test_run_suites_defaults_and_errors():
    assert set(SUITES) >= {"thm-tensor", "quad", "lp", "table1", "invariants"}
    (rep,) = run_suites(["thm-tensor"], max_n=4, seed=None)
    assert rep.passed and rep.cases > 0
    with pytest.raises(InvalidInputError):
        run_suites(["bogus"])
