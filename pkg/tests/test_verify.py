import pytest

from hochhom import algebra as alg
from hochhom import simplicial as simp
from hochhom import verify


def test_low_degree_examples():
    rep = verify.suite_low_degree([alg.ground_field()], [2])
    assert rep.passed and rep.cases[0].computed == [1, 0, 0]
    rep = verify.suite_low_degree([alg.truncated_poly(2)], [3])
    assert rep.passed and rep.cases[0].computed[3] == 1
    rep = verify.suite_low_degree([alg.split_pair()], [2])
    assert rep.passed and rep.cases[0].computed[2] == 0


def test_localization_examples():
    a = alg.split_pair()
    for d in (1, 2):
        rep = verify.suite_localization(simp.sphere(d, 4), a, {1: 1}, 4)
        assert rep.passed
        assert rep.cases[0].computed == [1, 0, 0, 0]
    assert verify.suite_localization(simp.sphere(1, 3), a, {0: 1}, 3).passed


def test_localization_refuses_disconnected():
    k = simp.disjoint_union(simp.point(2), simp.point(2))
    with pytest.raises(verify.HypothesisViolation, match="connected"):
        verify.suite_localization(k, alg.split_pair(), {1: 1}, 2)


def test_smooth_hodge_examples():
    rep = verify.suite_smooth_hodge(1, 1, 3, 2)
    assert rep.passed
    assert [c.computed for c in rep.cases] == [[1, 0, 0], [1, 1, 0], [1, 1, 0], [1, 1, 0]]
    rep = verify.suite_smooth_hodge(1, 2, 3, 4)
    assert rep.passed
    assert rep.cases[1].computed == [1, 0, 1, 0, 0]
    assert rep.cases[2].computed == [1, 0, 1, 0, 1]
    rep = verify.suite_smooth_hodge(2, 1, 2, 2)
    assert rep.passed and rep.cases[2].computed[2] == 1


def test_homotopy_invariance_examples():
    a = alg.truncated_poly(2)
    rep = verify.suite_homotopy_invariance([(simp.sphere(1, 3), simp.boundary_simplex(2, 3))], [a], 3)
    assert rep.passed and rep.cases[0].computed == [2, 1, 1]
    rep = verify.suite_homotopy_invariance([(simp.sphere(1, 3), simp.sphere(1, 3))], [a], 3)
    assert rep.passed


def test_homotopy_invariance_detects_difference():
    a = alg.truncated_poly(2)
    rep = verify.suite_homotopy_invariance([(simp.sphere(1, 3), simp.point(3))], [a], 3)
    assert not rep.passed


def test_hodge_cohomology_examples():
    a = alg.product_of_fields(2)
    rep = verify.suite_hodge_cohomology(2, a, alg.regular_module(a), 4)
    assert rep.passed and rep.cases[0].computed == [2, 0, 0, 0, 0]
    q = alg.ground_field()
    rep = verify.suite_hodge_cohomology(3, q, alg.regular_module(q), 3)
    assert rep.passed and rep.cases[0].computed == [1, 0, 0, 0]


def test_report_json_is_deterministic():
    r1 = verify.suite_smooth_hodge(1, 1, 2, 2).to_json()
    r2 = verify.suite_smooth_hodge(1, 1, 2, 2).to_json()
    for r in (r1, r2):
        for c in r["cases"]:
            c.pop("timing")
    assert r1 == r2
    assert r1["verdict"] == "pass"


@pytest.mark.parametrize("name", ["low_degree", "localization", "smooth_hodge", "hodge_cohomology"])
def test_default_corpora_run(name):
    rep = verify.SUITES[name]()
    assert rep.cases
    if name != "hodge_cohomology":
        assert rep.passed
