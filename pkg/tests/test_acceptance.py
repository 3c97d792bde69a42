"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every test runs a verification suite at its full default size. Run alone with
``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from temperkit.verify import SUITES

CRITERIA = {
    1: ("tensor product closed form vs subset oracle, n <= 8", ["thm-tensor"]),
    2: ("image-dimension test vs subset oracle on the epsilon corpus", ["thm-subalgebra"]),
    3: ("singletons imply subsets for p in {2,4,6}; p = 3 counterexample", ["bp", "bp-counterexample"]),
    4: ("quadratic inequality and recursion identity, r <= 3, n_k <= 4", ["quad"]),
    5: ("L^p exponent equals (m-1)/(n-m); even-p verdicts", ["lp"]),
    6: ("split and complex Levi table", ["table1"]),
    7: ("classical non-split Levi table", ["table2"]),
    8: ("rank one and small forms: proper parabolics tempered", ["case-ab"]),
    9: ("rho identities, Weyl invariance, scaling, monotonicity, gl cross-check", ["invariants"]),
}


def _run(number):
    title, suites = CRITERIA[number]
    reports = [SUITES[name]() for name in suites]
    passed = all(rep.passed for rep in reports)
    detail = "; ".join(
        f"{rep.suite}: {rep.cases} cases, {len(rep.mismatches)} mismatches, {rep.wall_time:.1f}s"
        for rep in reports
    )
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  [{detail}]"
    return passed, line, reports


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    passed, line, reports = _run(number)
    with capsys.disabled():
        print("\n" + line)
        for rep in reports:
            if rep.notes:
                print(f"    notes: {rep.notes}")
            for case in rep.mismatches[:3]:
                print(f"    mismatch: {case}")
    assert passed, line


if __name__ == "__main__":
    results = [_run(k) for k in sorted(CRITERIA)]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
