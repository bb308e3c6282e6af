from fractions import Fraction

from k3chow import f2_pipeline as fp
from k3chow import fixtures
from k3chow.presentation import GradedIdeal, QuotientPresentation

BETTI = [1, 2, 3, 5, 6, 8, 10, 12, 13, 14, 12, 10, 8, 6, 5, 3, 2, 1, 0, 0]


def test_betti_table():
    assert fp.betti_table() == BETTI


def test_ideal_shape():
    a = fp.assemble_ideal()
    assert a.relation_count == 14
    assert a.inert == ("Q(-E)", "p")
    assert all(g.degree() > fp.TOP_DEGREE for l, g in zip(a.labels, a.ideal.generators) if l in a.inert)


def test_parallel_families_match_serial():
    serial = dict(fp.relation_inputs())
    fp._INPUTS.clear()
    try:
        parallel = fp.relation_inputs(jobs=2)
        assert list(parallel) == list(serial)
        assert all(parallel[k] == serial[k] for k in serial)
    finally:
        fp._INPUTS.clear()
        fp._INPUTS.update(serial)


def test_lambda_identities():
    assert all(fp.lambda_checks().values())


def test_socle_degree():
    assert fp.moduli_presentation().socle_degree(fp.TOP_DEGREE) == 17


def test_corrections_change_the_betti_table():
    res = fp.corrections_load_bearing()
    assert res["with"] == BETTI and res["differ"]


def test_divisor_classes_do_not_generate():
    res = fp.divisor_generation_gap(3)
    assert res["dim"] == 5 and res["exceeds"]


def test_pairing():
    pr = fp.pairing_report()
    assert pr["imperfect_degrees"] == [8, 9]
    r8 = pr["rows"][8]
    assert (r8["rows"], r8["cols"], r8["rank"]) == (13, 14, 13)
    assert pr["kernel_matches_printed"]
    assert pr["kernel_class"].coeff("H^9") == -646575


def test_intermediate_series_matches_ctp_variant():
    res = fp.intermediate_check_y_minus_ctp()
    assert res["matching"] == ["with_ctp"]
    # regression value for the variant without the CTP main terms
    assert res["variants"]["without_ctp"]["hilbert"] == [1, 1, 2, 3, 4, 5, 7, 8, 9, 10, 10, 9, 8, 6, 5, 4, 3, 3, 2, 2]


def test_printed_third_multiple_line_class_breaks_the_betti_table():
    a = fp.assemble_ideal()
    printed = fp.rename_into(fixtures.relations()["multiple_lines"][2], fp.F2)
    gens = tuple(printed if l == "multiple_lines[2]" else g for l, g in zip(a.labels, a.ideal.generators))
    q = QuotientPresentation(GradedIdeal(fp.F2, gens), var_order=fp.VAR_ORDER)
    hf = q.hilbert_function(fp.TOP_DEGREE)
    assert hf != BETTI
    # regression value: the Betti table no longer ends in the socle degree 17
    assert hf == [1, 2, 3, 5, 6, 8, 10, 12, 13, 14, 12, 10, 8, 5, 4, 1, 1, 0, 0, 0]


def test_weighted_segre_low_degrees():
    res = fp.weighted_segre_check()
    assert res["constant"][2] and res["linear"][2]
    got = res["quadratic"][0]
    assert got.coeff("c2") == Fraction(-317, 18)
    assert got.coeff("c2") * 4 == res["quadratic"][1].coeff("c2")
    assert res["quadratic_in_c2W"][2]


def test_relation_checks_report_one_sign_difference():
    bad = [r for r in fp.relation_checks() if not r["equal"]]
    assert [r["name"] for r in bad] == ["multiple_lines[2]"]
    d = bad[0]["diff"]
    assert d["monomial"] == "H^2*c2*c3^3" and d["differing_terms"] == 1
    assert (d["expected"], d["computed"]) == ("19960020", "-19960020")


def test_poly_diff_equal_is_none():
    k = fixtures.relations()["kernel_class"]
    assert fp.poly_diff(k, k) is None
