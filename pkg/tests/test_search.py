import pytest

from instar_turan import _backend
from instar_turan.constructions import turan_formula
from instar_turan.detect import brute_force_subdivision, is_free
from instar_turan.errors import GuardExceeded
from instar_turan.graph import OrientedGraph, canonical_code
from instar_turan.search import (
    EVIDENCE,
    EXACT,
    SearchConfig,
    enumerate_all_extremal,
    enumerate_extremal_result,
    exact_turan,
    heuristic_turan,
    solve,
)

# (max arcs, labelled extremal graphs, isomorphism classes); frozen from a
# plain itertools enumeration filtered through brute_force_subdivision
ORACLE = {
    (3, 2): (3, 8, 2),
    (4, 2): (6, 64, 4),
    (5, 2): (9, 100, 3),
    (6, 2): (12, 650, 5),
    (3, 3): (3, 8, 2),
    (4, 3): (6, 64, 4),
    (5, 3): (10, 1024, 12),
}


@pytest.mark.parametrize("nk", sorted(ORACLE))
def test_exact_matches_oracle(backend, nk):
    n, k = nk
    res = exact_turan(n, k)
    assert res.value == ORACLE[nk][0]
    assert res.kind == EXACT
    assert res.witness.num_arcs == res.value
    assert brute_force_subdivision(res.witness, k) is None


@pytest.mark.parametrize("nk", sorted(ORACLE))
def test_kernel_oracle_scan(backend, nk):
    n, k = nk
    assert tuple(_backend.kernels(n).oracle_scan(n, k)) == ORACLE[nk][:2]


@pytest.mark.parametrize("nk", sorted(ORACLE))
def test_enumeration_classes(nk):
    n, k = nk
    codes = enumerate_all_extremal(n, k)
    assert len(codes) == ORACLE[nk][2]
    assert codes == sorted(codes)
    assert len(set(codes)) == len(codes)


def test_enumerate_members_are_free_and_extremal():
    res = enumerate_extremal_result(5, 2)
    assert res.stats["labelled_leaders"] >= len(res.extremal_codes)
    assert canonical_code(res.witness) in res.extremal_codes


def test_tournaments_on_six_vertices():
    # every tournament is S_{3,1}-free at n = 6, so all 56 classes are extremal
    assert len(enumerate_all_extremal(6, 3)) == 56


def test_exact_beyond_the_oracle(backend):
    values = {(7, 2): 16, (8, 2): 20, (6, 3): 15, (7, 3): 20}
    cfg = SearchConfig(exact_order_guard=8)
    for (n, k), v in values.items():
        assert exact_turan(n, k, cfg).value == v


def test_monotone_and_complete_below_pattern_order():
    vals = [exact_turan(n, 2).value for n in range(1, 8)]
    assert vals == sorted(vals)
    for k in (2, 3):
        for n in range(1, 2 * k + 1):
            assert exact_turan(n, k).value == n * (n - 1) // 2


def test_guards():
    with pytest.raises(GuardExceeded):
        exact_turan(8, 2)
    with pytest.raises(GuardExceeded):
        enumerate_all_extremal(7, 2)


def test_parallel_exact_value_matches():
    cfg = SearchConfig(threads=2)
    assert exact_turan(6, 2, cfg).value == 12
    assert len(enumerate_all_extremal(5, 2, cfg)) == 3


def test_time_limit_degrades_to_evidence(monkeypatch):
    from instar_turan import search

    def timed_out(n, k, best, target, cfg):
        return {"best": best, "best_in": None, "nodes": 0, "prunes": 0, "timed_out": True, "collected": [], "tasks": 1}

    monkeypatch.setattr(search, "_run_search", timed_out)
    res = exact_turan(7, 2, SearchConfig(time_limit=0.01))
    assert res.kind == EVIDENCE and res.stats["timed_out"] == 1
    assert res.witness.num_arcs == res.value


def test_kernel_deadline_stops_search(backend):
    import time

    res = _backend.kernels(8).exact_search(8, 3, -1, -1, time.monotonic() - 1.0, ())
    assert res["timed_out"]


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(mode="heuristic")
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(mode="anneal")
    with pytest.raises(ValueError):
        SearchConfig(time_limit=0)


@pytest.mark.parametrize("n, k, floor", [(16, 2, 72), (13, 4, 64), (10, 3, 25)])
def test_heuristic_lower_bound(backend, n, k, floor):
    res = heuristic_turan(n, k, SearchConfig(mode="heuristic", seed=3, restarts=3))
    assert res.kind == EVIDENCE
    assert res.value >= floor
    assert is_free(res.witness, k) and res.witness.num_arcs == res.value
    assert "exceeds-proved-upper-bound" not in res.flags


def test_heuristic_small_orders_reach_exact_values():
    for (n, k), v in {(6, 2): 12, (7, 3): 20}.items():
        assert heuristic_turan(n, k, SearchConfig(mode="heuristic", seed=1, restarts=20)).value == v


def test_heuristic_is_deterministic(backend):
    cfg = SearchConfig(mode="heuristic", seed=42, restarts=4, iterations=10)
    a, b = heuristic_turan(14, 3, cfg), heuristic_turan(14, 3, cfg)
    assert a.value == b.value and a.witness == b.witness and a.stats == b.stats


def test_heuristic_same_across_backends_and_threads():
    cfg = SearchConfig(mode="heuristic", seed=7, restarts=4, iterations=10)
    ref = heuristic_turan(12, 2, cfg)
    for b in _backend.available():
        prev = _backend.use_backend(b)
        try:
            assert heuristic_turan(12, 2, cfg).witness == ref.witness
        finally:
            _backend.use_backend(prev)
    par = heuristic_turan(12, 2, SearchConfig(mode="heuristic", seed=7, restarts=4, iterations=10, threads=2))
    assert par.witness == ref.witness


def test_flag_when_claiming_above_proved_bound(monkeypatch):
    from instar_turan import search

    monkeypatch.setattr(search, "_proved_upper", lambda n, k: 10)
    res = heuristic_turan(16, 2, SearchConfig(mode="heuristic", seed=1, restarts=1))
    assert "exceeds-proved-upper-bound" in res.flags


def test_payload_is_integral():
    res = solve(4, 2, SearchConfig())
    p = res.payload()
    assert p["value"] == 6 and p["kind"] == "exact"
    assert p["witness"]["n"] == 4 and len(p["witness"]["arcs"]) == 6
    assert OrientedGraph(4, [tuple(a) for a in p["witness"]["arcs"]]) == res.witness
    assert turan_formula(16, 2) == 72
