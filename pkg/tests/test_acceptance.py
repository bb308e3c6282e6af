"""One test per acceptance criterion; each prints a PASS/FAIL line.

Criteria 1 and 3 compare against two printed values that disagree with the
computation (one sign, one factor of 4). Those literal comparisons are kept as
strict xfails, so they print FAIL, and the tests after them pin down exactly
what the disagreement is.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from k3chow import checks

XFAIL_PRINTED = "printed value disagrees with the computation; see the explanation tests"


def verdict(n: int, results: list) -> bool:
    ok = all(c["status"] == "pass" for c in results)
    failed = [c["name"] for c in results if c["status"] != "pass"]
    line = f"criterion {n:>2} ({checks.CRITERIA[n]}): {'PASS' if ok else 'FAIL'}"
    if failed:
        line += f"  [{', '.join(failed)}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.mark.xfail(strict=True, reason=XFAIL_PRINTED)
def test_criterion_01_relations():
    results = [c for c in checks.relation_checks() if c["criterion"] == 1]
    assert len(results) == 18
    assert verdict(1, results)


def test_criterion_01_all_but_one_relation_match_exactly():
    bad = [c for c in checks.relation_checks() if c["criterion"] == 1 and c["status"] != "pass"]
    assert [c["name"] for c in bad] == ["relation multiple_lines[2]"]


def test_criterion_01_discrepancy_is_a_single_sign():
    e = checks.KNOWN_DISCREPANCIES["multiple_lines[2]"]()
    assert e["explained"]
    assert e["printed_moment_failures"] == [25, 27] and e["computed_moment_failures"] == []


def test_criterion_02_P_N():
    results = [c for c in checks.relation_checks() if c["criterion"] == 2] + checks.pn_checks()
    assert verdict(2, results)


@pytest.mark.xfail(strict=True, reason=XFAIL_PRINTED)
def test_criterion_03_weighted_segre():
    assert verdict(3, checks.segre_checks())


def test_criterion_03_constant_and_linear_terms_match():
    res = {c["name"]: c["status"] for c in checks.segre_checks()}
    assert res["weighted_segre.constant"] == res["weighted_segre.linear"] == "pass"


def test_criterion_03_quadratic_term_is_written_in_c2_of_W():
    assert checks.KNOWN_DISCREPANCIES["weighted_segre.quadratic"]()["explained"]


def test_criterion_04_betti_table():
    assert verdict(4, checks.betti_checks())


def test_criterion_05_intermediate_series():
    results = checks.intermediate_checks()
    assert verdict(5, results)
    assert results[1]["matching"] == ["with_ctp"]


def test_criterion_06_pairing():
    assert verdict(6, checks.pairing_checks())


def test_criterion_07_grr():
    assert verdict(7, checks.grr_checks())


def test_criterion_08_appendix():
    assert verdict(8, checks.appendix_checks())


def test_criterion_09_even_cohomology():
    assert verdict(9, checks.cohomology_checks())


def test_criterion_10_properties():
    # the randomized suites live in the per-module test files; these are fixed-seed spot checks
    assert verdict(10, checks.property_checks())
