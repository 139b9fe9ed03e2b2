"""Exact and heuristic computation of the oriented Turan number of S_{k,1}.

Randomness comes from :class:`random.Random` (MT19937) seeded with the
string ``"<seed>:<stream>"``; string seeds are hashed with SHA-512 by the
standard library, so runs reproduce across platforms.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import _backend
from .constructions import circulant_inregular, construct_lower, default_split, theorem3_bounds, turan_formula
from .detect import find_subdivision
from .errors import DomainError, GuardExceeded
from .graph import OrientedGraph, canonical_code, transitive_tournament

EXACT = "exact"
EVIDENCE = "lower-bound-evidence"
MODES = ("exact", "enumerate", "heuristic")
ENUMERATE_MAX_ORDER = 6


@dataclass
class SearchConfig:
    mode: str = "exact"
    seed: int | None = None
    restarts: int = 50
    iterations: int = 30
    time_limit: float | None = None
    threads: int = 1
    exact_order_guard: int = 7

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "heuristic" and self.seed is None:
            raise ValueError("heuristic mode requires a seed")
        for name in ("restarts", "iterations", "threads", "exact_order_guard"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class TuranResult:
    n: int
    k: int
    value: int
    kind: str
    witness: OrientedGraph
    extremal_codes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    elapsed: float = 0.0

    def payload(self):
        """JSON-ready results (integers and strings only)."""
        return {
            "n": self.n,
            "k": self.k,
            "value": self.value,
            "kind": self.kind,
            "witness": {"n": self.witness.n, "arcs": [list(a) for a in self.witness.arcs]},
            "extremal_codes": [c.hex() for c in self.extremal_codes],
            "stats": dict(self.stats),
            "flags": list(self.flags),
        }


def _deadline(cfg):
    return time.monotonic() + cfg.time_limit if cfg.time_limit else 0.0


def _seed_incumbent(n, k):
    if n <= 2 * k:
        return transitive_tournament(n)
    if n >= 3 * k + 1:
        return construct_lower(n=n, k=k)
    return None


def _row0_prefixes(n):
    """Non-increasing state sequences for the pairs ``(0, j)``."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        for s in range(cap, -1, -1):
            rec(prefix + [s], s)

    rec([], 2)
    return out


def _search_task(args):
    backend, n, k, best, target, deadline, prefix = args
    _backend.use_backend(backend)
    return _backend.kernels(n).exact_search(n, k, best, target, deadline, prefix)


def _run_search(n, k, best, target, cfg):
    deadline = _deadline(cfg)
    kern = _backend.kernels(n)
    if cfg.threads <= 1 or n < 3:
        res = kern.exact_search(n, k, best, target, deadline, ())
        res["tasks"] = 1
        return res
    tasks = [(_backend.name(), n, k, best, target, deadline, p) for p in _row0_prefixes(n)]
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        parts = list(pool.map(_search_task, tasks))
    merged = {"best": best, "best_in": None, "nodes": 0, "prunes": 0, "timed_out": False, "collected": []}
    for part in parts:  # task order is fixed, so the merge is deterministic
        merged["nodes"] += part["nodes"]
        merged["prunes"] += part["prunes"]
        merged["timed_out"] |= part["timed_out"]
        merged["collected"] += part["collected"]
        if part["best_in"] is not None and part["best"] > merged["best"]:
            merged["best"], merged["best_in"] = part["best"], part["best_in"]
    merged["tasks"] = len(tasks)
    return merged


def exact_turan(n, k, cfg=None):
    """Maximum arc count of an S_{k,1}-free oriented graph on ``n`` vertices."""
    cfg = cfg or SearchConfig()
    if n < 0 or k < 1:
        raise DomainError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    if n > cfg.exact_order_guard:
        raise GuardExceeded(f"exact search guarded at n <= {cfg.exact_order_guard}, got n={n}")
    start = time.monotonic()
    seed = _seed_incumbent(n, k)
    best = seed.num_arcs if seed is not None else -1
    res = _run_search(n, k, best, -1, cfg)
    witness = seed if res["best_in"] is None else OrientedGraph._from_masks(n, res["best_in"])
    if witness is None:  # pragma: no cover - the empty graph always improves on -1
        raise AssertionError("search finished without a witness")
    if find_subdivision(witness, k) is not None:  # pragma: no cover
        raise AssertionError("search produced a non-free witness")
    kind = EVIDENCE if res["timed_out"] else EXACT
    stats = {
        "nodes": res["nodes"],
        "prunes": res["prunes"],
        "tasks": res["tasks"],
        "seed_value": best,
        "timed_out": int(res["timed_out"]),
    }
    return TuranResult(n, k, witness.num_arcs, kind, witness, stats=stats, elapsed=time.monotonic() - start)


def enumerate_all_extremal(n, k, cfg=None):
    """Sorted canonical codes of every extremal S_{k,1}-free graph of order ``n``."""
    return enumerate_extremal_result(n, k, cfg).extremal_codes


def enumerate_extremal_result(n, k, cfg=None):
    cfg = cfg or SearchConfig()
    if n > ENUMERATE_MAX_ORDER:
        raise GuardExceeded(f"enumeration guarded at n <= {ENUMERATE_MAX_ORDER}, got n={n}")
    start = time.monotonic()
    exact = exact_turan(n, k, cfg)
    if exact.kind != EXACT:
        raise GuardExceeded("exact value not established within the time limit")
    res = _run_search(n, k, -1, exact.value, SearchConfig(threads=cfg.threads, exact_order_guard=cfg.exact_order_guard))
    codes = set()
    for masks in res["collected"]:
        codes.add(canonical_code(OrientedGraph._from_masks(n, masks)))
    stats = dict(exact.stats)
    stats.update(labelled_leaders=len(res["collected"]), classes=len(codes))
    return TuranResult(
        n, k, exact.value, EXACT, exact.witness, sorted(codes), stats=stats, elapsed=time.monotonic() - start
    )


# -- heuristic ----------------------------------------------------------------------


def _restart_rng(seed, restart):
    return random.Random(f"{seed}:{restart}")


def _shuffled_start(n, k, rng):
    """Lower-bound construction with a randomly relabelled in-regular ``D[Y]``."""
    t = n - default_split(n, k)
    ys = list(range(t))
    rng.shuffle(ys)
    h = circulant_inregular(t, k - 1).relabel(ys)
    return construct_lower(n=n, k=k, y_scheme=h)


def _fill(mg, n, k, rng, log):
    """Add admissible arcs over all empty pairs in random order."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    for i, j in pairs:
        if mg.has_arc(i, j) or mg.has_arc(j, i):
            continue
        first = (i, j) if rng.random() < 0.5 else (j, i)
        for a, b in (first, first[::-1]):
            mg.add_arc(a, b)
            if mg.violates_after(a, b, k):
                mg.remove_arc(a, b)
            else:
                log.append((a, b))
                break


def _arc_list(mg, n):
    return [(u, v) for v, mask in enumerate(mg.in_masks()) for u in range(n) if mask >> u & 1]


def _restart(args):
    backend, n, k, seed, restart, iterations, deadline = args
    _backend.use_backend(backend)
    rng = _restart_rng(seed, restart)
    mg = _backend.mask_graph(n)
    if n >= 3 * k + 1:
        for a, b in _shuffled_start(n, k, rng).arcs:
            mg.add_arc(a, b)
    _fill(mg, n, k, rng, [])
    best_m, best_in = mg.m, tuple(mg.in_masks())
    accepted = 0
    for _ in range(iterations):
        if deadline and time.monotonic() > deadline:
            break
        arcs = _arc_list(mg, n)
        removed = rng.sample(arcs, min(len(arcs), rng.randint(1, 3))) if arcs else []
        before = mg.m
        for a, b in removed:
            mg.remove_arc(a, b)
        added = []
        _fill(mg, n, k, rng, added)
        if mg.m >= before:
            accepted += 1
            if mg.m > best_m:
                best_m, best_in = mg.m, tuple(mg.in_masks())
        else:
            for a, b in reversed(added):
                mg.remove_arc(a, b)
            for a, b in removed:
                mg.add_arc(a, b)
    return best_m, best_in, accepted


def _proved_upper(n, k):
    if k == 2 and n >= 16:
        return turan_formula(n, 2)
    if k == 3 and n >= 40:
        return turan_formula(n, 3)
    if k >= 4 and n >= 3 * k + 1:
        return theorem3_bounds(n, k)[1]
    return None


def heuristic_turan(n, k, cfg):
    """Seeded local search for a large S_{k,1}-free graph (lower-bound evidence)."""
    if cfg.seed is None:
        raise ValueError("heuristic search requires a seed")
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    start = time.monotonic()
    deadline = _deadline(cfg)
    tasks = [(_backend.name(), n, k, cfg.seed, r, cfg.iterations, deadline) for r in range(cfg.restarts)]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_restart, tasks))
    else:
        results = [_restart(t) for t in tasks]
    best_r = max(range(len(results)), key=lambda r: (results[r][0], -r))
    value, masks, _ = results[best_r]
    witness = OrientedGraph._from_masks(n, masks)
    if find_subdivision(witness, k) is not None:  # pragma: no cover
        raise AssertionError("heuristic produced a non-free witness")
    flags = []
    upper = _proved_upper(n, k)
    if upper is not None and value > upper:
        flags.append("exceeds-proved-upper-bound")
    stats = {
        "restarts": cfg.restarts,
        "iterations": cfg.iterations,
        "best_restart": best_r,
        "restart_values": [r[0] for r in results],
        "accepted_moves": sum(r[2] for r in results),
    }
    if n >= 3 * k + 1:
        stats["construction_value"] = turan_formula(n, k)
    if upper is not None:
        stats["proved_upper_bound"] = upper
    return TuranResult(n, k, value, EVIDENCE, witness, stats=stats, flags=flags, elapsed=time.monotonic() - start)


def solve(n, k, cfg):
    if cfg.mode == "exact":
        return exact_turan(n, k, cfg)
    if cfg.mode == "enumerate":
        return enumerate_extremal_result(n, k, cfg)
    return heuristic_turan(n, k, cfg)
