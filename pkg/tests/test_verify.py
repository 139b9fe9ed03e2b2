import pytest

from instar_turan.constructions import construct_lower, extremal_member, fixture
from instar_turan.detect import is_free
from instar_turan.graph import OrientedGraph
from instar_turan.search import SearchConfig
from instar_turan.verify import (
    CHECKS,
    LEMMA_IDS,
    check_extremal_family,
    fixture_suite,
    free_stream,
    random_oriented,
    register_check,
    replay_violation,
    run_lemma,
    theorem_schemes,
    verify_lemma,
    verify_theorem,
)


def test_random_oriented():
    assert random_oriented(6, 0, seed=1).num_arcs == 0
    assert random_oriented(5, 1, seed=1).num_arcs == 10
    assert random_oriented(8, 0.5, seed=9) == random_oriented(8, 0.5, seed=9)
    assert random_oriented(8, 0.5, seed=9) != random_oriented(8, 0.5, seed=10)
    with pytest.raises(ValueError):
        random_oriented(4, 1.5, seed=0)


def test_extremal_family_accepts_members():
    assert check_extremal_family(extremal_member(16, 2), 2) == (True, "accepted")
    assert check_extremal_family(extremal_member(17, 2, "cycles:3,6"), 2)[0]


def test_extremal_family_diagnoses():
    g = extremal_member(40, 3)
    ok, why = check_extremal_family(g.with_arcs(remove=[(0, 39)]), 3)
    assert not ok and why.startswith("(ii)")
    inner = next(a for a in g.arcs if min(a) >= 19)
    ok, why = check_extremal_family(g.with_arcs(remove=[inner]), 3)
    assert not ok and why.startswith("(iii)")
    ok, why = check_extremal_family(construct_lower(n=16, k=2, split=5), 2)
    assert not ok and why.startswith("(i)")
    ok, why = check_extremal_family(extremal_member(16, 2).with_arcs(add=[(0, 1)]), 2)
    assert not ok and why.startswith("(i)")


def test_extremal_family_rejects_every_single_deletion():
    g = extremal_member(16, 2, "cycles:3,6")
    for arc in g.arcs:
        assert not check_extremal_family(g.with_arcs(remove=[arc]), 2)[0]


def test_theorem_schemes_are_distinct_and_valid():
    for n in (16, 17, 30):
        schemes = theorem_schemes(n, 2)
        assert len(schemes) >= 3 and len(set(map(str, schemes))) == len(schemes)
    assert len(theorem_schemes(40, 3)) >= 3


def test_lemma_25_on_h3():
    report = verify_lemma("2.5", [fixture("H3")])
    assert report.hits == 1 and report.passed


def test_lemma_22_k3_not_hit_on_extended_subdivision():
    from instar_turan.verify import check_staircase_cover

    # S_{3,1} with a second leaf on every spoke: outside in-degrees (2,2,2)
    g = OrientedGraph(10, list(fixture("subdiv:3").arcs) + [(7, 0), (8, 1), (9, 2)])
    assert check_staircase_cover(g, ks=(3,)) == (0, [])
    assert verify_lemma("2.2", [g]).passed


@pytest.mark.parametrize("lemma", LEMMA_IDS)
def test_lemma_sweeps(lemma):
    report = run_lemma(lemma, range(5, 11), 300, seed=2024)
    assert report.passed, report.violations[:1]
    assert report.instances == 300 + len(fixture_suite())
    assert report.hits > 0


@pytest.mark.parametrize("lemma", ("2.3", "2.4", "2.5", "3.3-claim"))
def test_fixture_suite_hits_are_positive(lemma):
    assert verify_lemma(lemma, fixture_suite()).hits > 0


def test_free_stream_is_free():
    graphs = list(free_stream(range(6, 10), 50, seed=1))
    assert len(graphs) == 50 and all(is_free(g, 3) for g in graphs)


def test_reports_are_deterministic():
    a = run_lemma("2.3", range(6, 9), 100, seed=5).payload()
    b = run_lemma("2.3", range(6, 9), 100, seed=5).payload()
    assert a == b


def test_violation_records_replay():
    def every_centre_is_bad(g):
        bad = [(v, "in-degree two") for v in range(g.n) if g.in_degree(v) == 2]
        return len(bad), bad

    register_check("test-false", every_centre_is_bad)
    try:
        report = verify_lemma("test-false", [fixture("subdiv:2"), fixture("H1")])
        assert not report.passed
        assert sorted(r["vertex"] for r in report.violations) == [2, 2, 3, 4]
        assert all(replay_violation("test-false", r) for r in report.violations)
    finally:
        del CHECKS["test-false"]


def test_theorem_11_small_range():
    cfg = SearchConfig(mode="heuristic", seed=1, restarts=2, iterations=10)
    report = verify_theorem("1.1", range(16, 19), cfg)
    assert report.passed and report.evidence and report.hits == 3
    assert report.details["members"] >= 3 * 3


def test_theorem_12_and_13():
    assert verify_theorem("1.2", range(40, 43)).passed
    report = verify_theorem("1.3-lower", range(13, 20))
    assert report.passed and report.instances == 7 + 4 + 1
    with pytest.raises(KeyError):
        verify_theorem("9.9", range(1, 2))
