"""Acceptance gate: one PASS/FAIL line per criterion (printed in the summary).

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import itertools
import os
import random
import subprocess
import sys
import time

import pytest

from instar_turan import _backend
from instar_turan.constructions import (
    construct_lower,
    extremal_member,
    extremal_window,
    theorem3_bounds,
    turan_formula,
)
from instar_turan.detect import brute_force_subdivision, find_subdivision, is_free
from instar_turan.graph import OrientedGraph
from instar_turan.search import EVIDENCE, SearchConfig, exact_turan, heuristic_turan
from instar_turan.verify import (
    check_extremal_family,
    fixture_suite,
    random_oriented,
    run_lemma,
    theorem_schemes,
    verify_lemma,
)

try:
    from conftest import record_acceptance
except ImportError:  # running as a script from elsewhere
    def record_acceptance(number, passed, detail):
        return f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"


def _report(number, passed, detail, started):
    line = record_acceptance(number, passed, f"{detail} [{time.monotonic() - started:.1f}s]")
    print(line)
    assert passed, line


# -- 1 -------------------------------------------------------------------------


def criterion_1():
    bad, count = [], 0
    for k in range(2, 7):
        for n in range(3 * k + 1, 201):
            g = construct_lower(n=n, k=k)
            count += 1
            if g.num_arcs != turan_formula(n, k) or not is_free(g, k):
                bad.append((n, k))
    return not bad, f"{count} constructions, n in [3k+1, 200], k in [2, 6]; mismatches {bad[:5]}"


# -- 2 -------------------------------------------------------------------------


def criterion_2():
    checks = []
    for n, k, value in ((16, 2, 72), (40, 3, 441)):
        g = extremal_member(n, k)
        checks.append(turan_formula(n, k) == value and g.num_arcs == value)
        checks.append(check_extremal_family(g, k)[0] and is_free(g, k))
    return all(checks), "formula(16,2)=72, formula(40,3)=441, members attain and are accepted"


# -- 3 -------------------------------------------------------------------------


def enumeration_oracle(n, k):
    """Maximum arc count over all 3^(n choose 2) labelled oriented graphs."""
    pairs = list(itertools.combinations(range(n), 2))
    best = -1
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        m = sum(1 for s in states if s)
        if m <= best:
            continue
        arcs = [(i, j) if s == 1 else (j, i) for (i, j), s in zip(pairs, states) if s]
        if brute_force_subdivision(OrientedGraph(n, arcs), k) is None:
            best = m
    return best


def criterion_3():
    rows = []
    for n in range(3, 7):
        rows.append((n, exact_turan(n, 2).value, enumeration_oracle(n, 2)))
    ok = all(a == b for _, a, b in rows) and rows[1][1] == 6
    return ok, "exact vs oracle (n, exact, oracle): " + ", ".join(map(str, rows))


# -- 4 -------------------------------------------------------------------------


def criterion_4(instances=3000):
    rng = random.Random("acceptance-4")
    disagreements, checks = 0, 0
    for i in range(instances):
        g = random_oriented(5 + i % 4, (0.2, 0.5, 0.8)[i % 3], rng)
        for k in (2, 3):
            checks += 1
            if (find_subdivision(g, k) is None) != (brute_force_subdivision(g, k) is None):
                disagreements += 1
    return disagreements == 0, f"{instances} graphs, {checks} checks, {disagreements} disagreements ({_backend.name()} kernels)"


# -- 5 -------------------------------------------------------------------------


def criterion_5(instances=1000):
    parts, ok = [], True
    for lemma in ("2.2", "2.3", "2.4", "2.5", "3.3-claim"):
        report = run_lemma(lemma, range(5, 11), instances, seed=5)
        fixture_hits = verify_lemma(lemma, fixture_suite()).hits
        ok &= report.passed and report.instances >= instances and fixture_hits > 0
        parts.append(f"{lemma}: {report.instances} inst/{report.hits} hits/{len(report.violations)} viol/{fixture_hits} fixture hits")
    return ok, "; ".join(parts)


# -- 6 -------------------------------------------------------------------------


def criterion_6():
    members = mutants = 0
    failures = []
    min_schemes = 10**9
    for k, orders in ((2, range(16, 61)), (3, range(40, 81))):
        for n in orders:
            for split in sorted(extremal_window(n, k)):
                schemes = theorem_schemes(n, k, split)
                min_schemes = min(min_schemes, len(schemes))
                for scheme in schemes:
                    g = extremal_member(n, k, scheme, split=split)
                    members += 1
                    if not (check_extremal_family(g, k)[0] and is_free(g, k) and g.num_arcs == turan_formula(n, k)):
                        failures.append((n, k, split, scheme))
                    for arc in g.arcs:
                        mutants += 1
                        if check_extremal_family(g.with_arcs(remove=[arc]), k)[0]:
                            failures.append((n, k, split, scheme, arc))
    ok = not failures and min_schemes >= 3
    return ok, f"{members} members (>= {min_schemes} schemes per order), {mutants} deletion mutants, {len(failures)} failures"


# -- 7 -------------------------------------------------------------------------


def criterion_7(seeds=(1, 2, 3)):
    values, ok = {}, True
    for n, k in ((16, 2), (40, 3)):
        for seed in seeds:
            res = heuristic_turan(n, k, SearchConfig(mode="heuristic", seed=seed, restarts=50, iterations=30))
            values.setdefault((n, k), []).append(res.value)
            ok &= res.kind == EVIDENCE and res.value <= turan_formula(n, k) and is_free(res.witness, k)
    detail = ", ".join(f"{nk}: {v} (bound {turan_formula(*nk)})" for nk, v in values.items())
    return ok, f"evidence only; 50 restarts x {len(seeds)} seeds; {detail}"


# -- 8 -------------------------------------------------------------------------


def criterion_8(seeds=(1, 2, 3, 4, 5)):
    g = construct_lower(n=13, k=4)
    lower, upper = theorem3_bounds(13, 4)
    values = [
        heuristic_turan(13, 4, SearchConfig(mode="heuristic", seed=s, restarts=50, iterations=30)).value for s in seeds
    ]
    ok = g.num_arcs == 64 and is_free(g, 4) and (lower, upper) == (64, 103)
    ok &= all(lower <= v <= upper for v in values)
    return ok, f"construction {g.num_arcs} arcs, bounds ({lower}, {upper}), heuristic values {values}"


# -- 9 -------------------------------------------------------------------------

CLI_RUNS = [
    ["fixture", "--id", "H3", "-o", "h3.txt"],
    ["fixture", "--id", "subdiv:3", "-o", "s3.txt"],
    ["construct", "--n", "16", "--k", "2", "-o", "c16.txt"],
    ["construct", "--n", "40", "--k", "3", "--y-scheme", "cycles:5,16", "-o", "c40.txt"],
    ["check", "--k", "2", "c16.txt"],
    ["check", "--k", "3", "s3.txt"],
    ["extremal-check", "--k", "2", "c16.txt"],
    ["extremal-check", "--k", "3", "c40.txt"],
    ["turan", "--n", "6", "--k", "2", "--mode", "exact", "--json", "exact.json"],
    ["turan", "--n", "5", "--k", "2", "--mode", "enumerate", "--json", "enum.json"],
    ["turan", "--n", "16", "--k", "2", "--mode", "heuristic", "--seed", "7", "--restarts", "10", "--json", "heur.json"],
    ["turan", "--n", "13", "--k", "4", "--mode", "heuristic", "--seed", "7", "--restarts", "5"],
    ["verify", "--target", "2.3", "--n-range", "6..9", "--seed", "11", "--instances", "200", "--json", "v23.json"],
    ["verify", "--target", "1.1", "--n-range", "16..18", "--seed", "11", "--restarts", "5", "--json", "v11.json"],
    ["verify", "--target", "1.3-lower", "--n-range", "13..16"],
]


def _cli_transcript(workdir):
    os.makedirs(workdir, exist_ok=True)
    out = []
    for argv in CLI_RUNS:
        proc = subprocess.run(
            [sys.executable, "-m", "instar_turan.cli", *argv], cwd=workdir, capture_output=True, check=False
        )
        out.append((argv[0], proc.returncode, proc.stdout, proc.stderr))
    files = {name: open(os.path.join(workdir, name), "rb").read() for name in sorted(os.listdir(workdir))}
    return out, files


def criterion_9(tmpdir):
    first = _cli_transcript(os.path.join(tmpdir, "run1"))
    second = _cli_transcript(os.path.join(tmpdir, "run2"))
    codes = [c for _, c, _, _ in first[0]]
    commands = sorted({name for name, _, _, _ in first[0]})
    ok = first == second and all(c in (0, 1) for c in codes) and len(commands) == 6
    return ok, f"{len(CLI_RUNS)} invocations over {len(commands)} subcommands, {len(first[1])} files; exit codes {codes}"


# -- pytest entry points -----------------------------------------------------------


@pytest.mark.parametrize(
    "number, fn",
    [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ],
)
def test_acceptance(number, fn):
    started = time.monotonic()
    ok, detail = fn()
    _report(number, ok, detail, started)


def test_acceptance_9_cli_determinism(tmp_path):
    started = time.monotonic()
    ok, detail = criterion_9(str(tmp_path))
    _report(9, ok, detail, started)


if __name__ == "__main__":
    import tempfile

    status = 0
    for number, fn in enumerate(
        (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8), 1
    ):
        started = time.monotonic()
        ok, detail = fn()
        print(record_acceptance(number, ok, f"{detail} [{time.monotonic() - started:.1f}s]"), flush=True)
        status |= not ok
    with tempfile.TemporaryDirectory() as tmp:
        started = time.monotonic()
        ok, detail = criterion_9(tmp)
        print(record_acceptance(9, ok, f"{detail} [{time.monotonic() - started:.1f}s]"))
        status |= not ok
    sys.exit(int(status))
