"""Computational checks of the structural statements about S_{k,1}-free graphs.

Every check is a function ``check(g) -> (hits, violations)`` where ``hits``
counts the (vertex, configuration) pairs at which the statement's
hypothesis holds and each violation is ``(vertex, detail)``.  Violations
are stored with the graph serialised as an arc list so they can be replayed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from .constructions import (
    construct_lower,
    extremal_member,
    extremal_window,
    fixture,
    scheme_graph,
    turan_formula,
)
from .errors import SchemeError
from .detect import is_free, max_disjoint_inpaths
from .graph import OrientedGraph, iter_bits
from .search import SearchConfig, heuristic_turan
from .vectors import covers, decreasing, staircase

LEMMA_IDS = ("2.2", "2.3", "2.4", "2.5", "3.3-claim")
THEOREM_IDS = ("1.1", "1.2", "1.3-lower")


@dataclass
class VerifyReport:
    check: str
    instances: int = 0
    hits: int = 0
    violations: list = field(default_factory=list)
    seed: int | None = None
    evidence: bool = False
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.violations

    def payload(self):
        return {
            "check": self.check,
            "instances": self.instances,
            "hits": self.hits,
            "violations": [dict(v) for v in self.violations],
            "passed": self.passed,
            "evidence_only": self.evidence,
            "details": dict(self.details),
        }

    def merge(self, other):
        self.instances += other.instances
        self.hits += other.hits
        self.violations.extend(other.violations)
        for key, value in other.details.items():
            self.details[key] = self.details.get(key, 0) + value


# -- extremal family recognition -----------------------------------------------


def check_extremal_family(g, k):
    """Accept iff ``g`` meets conditions (i)-(iii) of the k=2 / k=3 characterisation.

    Returns ``(accepted, diagnosis)``; the diagnosis names the first failed
    condition.
    """
    n = g.n
    window = extremal_window(n, k)
    xs = [v for v in range(n) if g.in_degree(v) == 0]
    ys = [v for v in range(n) if g.in_degree(v) != 0]
    if len(xs) not in window:
        return False, f"(i) |X| = {len(xs)} not in {sorted(window)}"
    if g.arcs_between(xs, ys) != len(xs) * len(ys):
        return False, f"(ii) a(X,Y) = {g.arcs_between(xs, ys)} != |X||Y| = {len(xs) * len(ys)}"
    if g.arcs_between(ys, xs) != 0:
        return False, f"(ii) a(Y,X) = {g.arcs_between(ys, xs)} != 0"
    if g.arcs_between(xs, xs) != 0:
        return False, "(iii) D[X] is not empty"
    ymask = sum(1 << y for y in ys)
    for y in ys:
        d = (g.in_masks[y] & ymask).bit_count()
        if d != k - 1:
            return False, f"(iii) vertex {y} has {d} in-neighbours inside Y, expected {k - 1}"
    return True, "accepted"


# -- lemma checks ------------------------------------------------------------------


def _outside_in_degrees(g, subset):
    """In-degrees of the members of ``subset`` counted from outside it."""
    smask = sum(1 << u for u in subset)
    return [(g.in_masks[u] & ~smask).bit_count() for u in subset]


def check_staircase_cover(g, ks=(2, 3)):
    """Outside in-degrees covering (k,...,1) force an S_{k,1} at the centre."""
    hits, bad = 0, []
    for v in range(g.n):
        ins = list(iter_bits(g.in_masks[v]))
        for k in ks:
            for ys in combinations(ins, k):
                if covers(_outside_in_degrees(g, ys), staircase(k)):
                    hits += 1
                    if max_disjoint_inpaths(g, v, k)[0] < k:
                        bad.append((v, f"k={k} Y={list(ys)} covers staircase but no S_{k},1 at {v}"))
    return hits, bad


def check_profile_cover(g):
    """In-degree profile of N-(v) covering (4,3,3) / (2,2) forces S_{3,1} / S_{2,1} at v."""
    hits, bad = 0, []
    for v in range(g.n):
        profile = [g.in_degree(u) for u in iter_bits(g.in_masks[v])]
        for target, k in (((4, 3, 3), 3), ((2, 2), 2)):
            if covers(profile, target):
                hits += 1
                if max_disjoint_inpaths(g, v, k)[0] < k:
                    bad.append((v, f"profile {decreasing(profile)} covers {target} but no S_{k},1 at {v}"))
    return hits, bad


def check_two_leaf_pattern(g):
    """In an S_{3,1}-free graph, outside in-degrees (2,2,2) pin an H1 pattern;
    in-degrees (3,3,3) additionally force a directed triangle (H2)."""
    if not is_free(g, 3):
        return 0, []
    hits, bad = 0, []
    for v in range(g.n):
        ins = list(iter_bits(g.in_masks[v]))
        for s in combinations(ins, 3):
            smask = sum(1 << u for u in s)
            outside = 0
            for u in s:
                outside |= g.in_masks[u] & ~smask
            has_h1 = outside.bit_count() == 2 and all(g.in_masks[u] & outside == outside for u in s)
            if _outside_in_degrees(g, s) == [2, 2, 2]:
                hits += 1
                if not has_h1:
                    bad.append((v, f"S={list(s)}: outside in-degrees (2,2,2) without H1"))
            if [g.in_degree(u) for u in s] == [3, 3, 3]:
                hits += 1
                a, b, c = s
                cyclic = (g.has_arc(a, b) and g.has_arc(b, c) and g.has_arc(c, a)) or (
                    g.has_arc(b, a) and g.has_arc(c, b) and g.has_arc(a, c)
                )
                if not (has_h1 and cyclic):
                    bad.append((v, f"S={list(s)}: in-degrees (3,3,3) without H2"))
    return hits, bad


def check_heavy_profile(g):
    """In an S_{3,1}-free graph, d-(N-(v)) covering (3,3,3) is (3,3,3,1,0,...) or (3,3,3,0,...)."""
    if not is_free(g, 3):
        return 0, []
    hits, bad = 0, []
    for v in range(g.n):
        profile = decreasing(g.in_degree(u) for u in iter_bits(g.in_masks[v]))
        if covers(profile, (3, 3, 3)):
            hits += 1
            tail = profile[3:]
            ok = profile[:3] == (3, 3, 3) and (all(x == 0 for x in tail) or (tail[0] == 1 and all(x == 0 for x in tail[1:])))
            if not ok:
                bad.append((v, f"profile {profile}"))
    return hits, bad


def check_heavy_inneighbours(g, ks=(2, 3, 4)):
    """In an S_{k,1}-free graph every v with d-(v) >= k has fewer than k
    in-neighbours of in-degree >= 2k-1."""
    hits, bad = 0, []
    degs = g.in_degrees()
    for k in ks:
        if not is_free(g, k):
            continue
        for v in range(g.n):
            if degs[v] < k:
                continue
            hits += 1
            heavy = [u for u in iter_bits(g.in_masks[v]) if degs[u] >= 2 * k - 1]
            if len(heavy) >= k:
                bad.append((v, f"k={k}: {len(heavy)} in-neighbours of in-degree >= {2 * k - 1}"))
    return hits, bad


CHECKS = {
    "2.2": check_staircase_cover,
    "2.3": check_profile_cover,
    "2.4": check_two_leaf_pattern,
    "2.5": check_heavy_profile,
    "3.3-claim": check_heavy_inneighbours,
}


def register_check(check_id, fn):
    CHECKS[check_id] = fn


def _violation_record(g, vertex, detail):
    from .io import serialize_arclist

    return {"graph": serialize_arclist(g), "vertex": vertex, "detail": detail}


def verify_lemma(lemma_id, graphs, seed=None):
    """Run check ``lemma_id`` over every graph of the stream."""
    check = CHECKS[lemma_id]
    start = time.monotonic()
    report = VerifyReport(lemma_id, seed=seed)
    for g in graphs:
        hits, bad = check(g)
        report.instances += 1
        report.hits += hits
        report.violations.extend(_violation_record(g, v, d) for v, d in bad)
    report.elapsed = time.monotonic() - start
    return report


def replay_violation(check_id, record):
    """True iff the recorded counterexample still fails ``check_id`` at its vertex."""
    from .io import parse_arclist

    g = parse_arclist(record["graph"])
    _, bad = CHECKS[check_id](g)
    return any(v == record["vertex"] for v, _ in bad)


# -- graph streams -------------------------------------------------------------------


def random_oriented(n, p, seed):
    """Each pair present with probability ``p``, oriented by a fair coin."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = seed if isinstance(seed, random.Random) else random.Random(f"{seed}:random_oriented")
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    return OrientedGraph(n, arcs)


def random_stream(n_values, count, seed, probs=(0.2, 0.35, 0.5, 0.8)):
    rng = random.Random(f"{seed}:stream")
    n_values = list(n_values)
    for idx in range(count):
        yield random_oriented(n_values[idx % len(n_values)], probs[idx % len(probs)], rng)


def mutate_fixture(base, extra, p, rng):
    """``base`` plus ``extra`` new vertices and random extra arcs on empty pairs."""
    n = base.n + extra
    arcs = list(base.arcs)
    for i in range(n):
        for j in range(i + 1, n):
            if base.n > j and (base.has_arc(i, j) or base.has_arc(j, i)):
                continue
            if rng.random() < p:
                arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    return OrientedGraph(n, arcs)


def fixture_suite():
    """Named fixtures with the S_{k,1} status their role demands."""
    return [fixture(f"H{i}") for i in range(1, 8)] + [fixture("subdiv:2"), fixture("subdiv:3"), fixture("star:3")]


def free_stream(n_values, count, seed, k=3, base_ids=("H1", "H3")):
    """S_{k,1}-free graphs: rejection-sampled random graphs interleaved with
    mutated copies of the given fixtures."""
    rng = random.Random(f"{seed}:free")
    bases = [fixture(b) for b in base_ids]
    n_values = list(n_values)
    produced, idx = 0, 0
    while produced < count:
        idx += 1
        if idx % 2:
            g = random_oriented(n_values[idx % len(n_values)], rng.choice((0.1, 0.2, 0.3)), rng)
        else:
            g = mutate_fixture(bases[idx // 2 % len(bases)], rng.randint(0, 3), rng.choice((0.05, 0.1, 0.2)), rng)
        if is_free(g, k):
            produced += 1
            yield g


def lemma_stream(lemma_id, n_values, count, seed):
    """The default instance stream for a lemma check (fixtures first)."""
    yield from fixture_suite()
    if lemma_id in ("2.4", "2.5"):
        yield from free_stream(n_values, count, seed)
    else:
        yield from random_stream(n_values, count, seed)


def run_lemma(lemma_id, n_values, count, seed):
    return verify_lemma(lemma_id, lemma_stream(lemma_id, n_values, count, seed), seed=seed)


# -- theorems --------------------------------------------------------------------------


def theorem_schemes(n, k, split=None):
    """At least three distinct in-regular ``D[Y]`` schemes for the family at order ``n``."""
    t = n - (min(extremal_window(n, k)) if split is None else split)
    r = k - 1
    block = 2 * r + 1
    schemes = ["circulant"]
    if t - block >= block:
        schemes.append(("cycles", (block, t - block)))
    if t >= 3 * block:
        a = t // 3
        schemes.append(("cycles", (a, a, t - 2 * a)))
    for d in range(r + 1, t):
        ds = tuple(range(1, r)) + (d,)
        try:
            scheme_graph(("offsets", ds), t, r)
        except SchemeError:
            continue
        schemes.append(("offsets", ds))
        break
    return schemes


def _scheme_name(scheme):
    if isinstance(scheme, str):
        return scheme
    return f"{scheme[0]}:{','.join(map(str, scheme[1]))}"


def verify_theorem(theorem_id, n_range, cfg=None, ks=(4, 5, 6)):
    """Construct family members and check freeness, size and recognition.

    For 1.1 / 1.2 a seeded heuristic search additionally looks for larger
    free graphs; a report passing that part is sampling evidence only.
    """
    start = time.monotonic()
    report = VerifyReport(theorem_id, seed=None if cfg is None else cfg.seed)
    details = {"members": 0, "heuristic_runs": 0}
    if theorem_id in ("1.1", "1.2"):
        k = 2 if theorem_id == "1.1" else 3
        report.evidence = cfg is not None
        for n in n_range:
            formula = turan_formula(n, k)
            for split in sorted(extremal_window(n, k)):
                for scheme in theorem_schemes(n, k, split):
                    g = extremal_member(n, k, scheme, split=split)
                    report.instances += 1
                    details["members"] += 1
                    ok, why = check_extremal_family(g, k)
                    problems = []
                    if g.num_arcs != formula:
                        problems.append(f"{g.num_arcs} arcs, formula {formula}")
                    if not is_free(g, k):
                        problems.append("contains S_{k,1}")
                    if not ok:
                        problems.append(why)
                    for p in problems:
                        report.violations.append(
                            _violation_record(g, -1, f"n={n} split={split} scheme={_scheme_name(scheme)}: {p}")
                        )
            if cfg is not None:
                res = heuristic_turan(n, k, SearchConfig(mode="heuristic", seed=cfg.seed, restarts=cfg.restarts, iterations=cfg.iterations, threads=cfg.threads))
                details["heuristic_runs"] += 1
                report.hits += 1
                if res.value > formula:
                    report.violations.append(
                        _violation_record(res.witness, -1, f"n={n}: heuristic found {res.value} > {formula}")
                    )
    elif theorem_id == "1.3-lower":
        for k in ks:
            for n in n_range:
                if n < 3 * k + 1:
                    continue
                g = construct_lower(n=n, k=k)
                report.instances += 1
                details["members"] += 1
                if g.num_arcs != turan_formula(n, k) or not is_free(g, k):
                    report.violations.append(_violation_record(g, -1, f"n={n} k={k}: construction check failed"))
    else:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    report.details = details
    report.elapsed = time.monotonic() - start
    return report
