"""Detection of the 1-subdivided in-star S_{k,1} in oriented graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import _backend
from .errors import InstanceTooLarge, VertexOutOfRange
from .graph import iter_bits
from .vectors import BipartiteInstance, max_matching

BRUTE_MAX_ORDER = 10
BRUTE_MAX_K = 4


@dataclass(frozen=True)
class SubdivisionWitness:
    """An embedded S_{k,1}: leaf ``leaves[i]`` -> spoke ``spokes[i]`` -> ``center``."""

    k: int
    center: int
    spokes: tuple
    leaves: tuple

    def vertices(self):
        return (self.center, *self.spokes, *self.leaves)

    def validate(self, g):
        """Raise ``ValueError`` unless this is a genuine copy inside ``g``."""
        vs = self.vertices()
        if len(self.spokes) != self.k or len(self.leaves) != self.k:
            raise ValueError("witness must have k spokes and k leaves")
        if len(set(vs)) != 2 * self.k + 1:
            raise ValueError(f"witness vertices not distinct: {vs}")
        for u, w in zip(self.spokes, self.leaves):
            if not g.has_arc(u, self.center):
                raise ValueError(f"missing spoke arc ({u},{self.center})")
            if not g.has_arc(w, u):
                raise ValueError(f"missing leaf arc ({w},{u})")
        return True

    def as_dict(self):
        return {"k": self.k, "center": self.center, "spokes": list(self.spokes), "leaves": list(self.leaves)}


def _check_center(g, v):
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v!r} not in 0..{g.n - 1}")


def max_disjoint_inpaths(g, v, k):
    """Disjoint 2-paths ``w -> u -> v`` into ``v``, counted up to ``k``.

    Returns ``(count, pairs)`` with ``pairs`` a list of ``(w, u)`` realising
    the count, sorted by spoke.
    """
    _check_center(g, v)
    if k < 1:
        raise ValueError("k must be >= 1")
    count, mate = _backend.kernels(g.n).center_matching(list(g.in_masks), list(g.out_masks), g.n, v, k)
    pairs = []
    for x, y in enumerate(mate):
        if y > x:
            # the arc between a matched pair points at the spoke
            pairs.append((x, y) if g.has_arc(x, y) else (y, x))
    pairs.sort(key=lambda p: p[1])
    count = min(count, k)
    return count, pairs[:count]


def _leaf_assignment(g, v, spokes):
    """Injective leaf choice for a fixed spoke set, or ``None``."""
    blocked = {v, *spokes}
    inst = BipartiteInstance.from_mapping(
        {u: [w for w in iter_bits(g.in_masks[u]) if w not in blocked] for u in spokes}
    )
    m = max_matching(inst)
    if len(m) < len(spokes):
        return None
    return tuple(m[u] for u in spokes)


def _smallest_witness(g, v, k):
    """Lexicographically smallest spoke set at ``v``, then its smallest leaves."""
    cands = [u for u in iter_bits(g.in_masks[v]) if g.in_masks[u]]

    def extend(prefix, start):
        if len(prefix) == k:
            leaves = _leaf_assignment(g, v, prefix)
            return None if leaves is None else (tuple(prefix), leaves)
        for idx in range(start, len(cands) - (k - len(prefix)) + 1):
            trial = prefix + [cands[idx]]
            # a prefix must at least be matchable on its own
            if _leaf_assignment(g, v, trial) is None:
                continue
            found = extend(trial, idx + 1)
            if found is not None:
                return found
        return None

    found = extend([], 0)
    if found is None:
        return None
    spokes, leaves = found
    # smallest leaf assignment: fix leaves one spoke at a time
    chosen = []
    for i, u in enumerate(spokes):
        for w in sorted(iter_bits(g.in_masks[u])):
            if w == v or w in spokes or w in chosen:
                continue
            rest = spokes[i + 1 :]
            blocked = {v, *spokes, *chosen, w}
            inst = BipartiteInstance.from_mapping(
                {x: [y for y in iter_bits(g.in_masks[x]) if y not in blocked] for x in rest}
            )
            if len(max_matching(inst)) == len(rest):
                chosen.append(w)
                break
    return SubdivisionWitness(k, v, spokes, tuple(chosen))


def centers_with_subdivision(g, k):
    """All centres of some S_{k,1} in ``g`` (increasing)."""
    mg = _backend.mask_graph_of(g)
    return [v for v in range(g.n) if mg.center_count(v, k) >= k]


def find_subdivision(g, k):
    """First S_{k,1} in ``g`` (smallest centre), or ``None`` if ``g`` is free."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 2 * k + 1:
        return None
    mg = _backend.mask_graph_of(g)
    for v in range(g.n):
        if mg.center_count(v, k) >= k:
            w = _smallest_witness(g, v, k)
            if w is None:  # pragma: no cover - matching and enumeration disagree
                raise AssertionError(f"centre {v} reported but no witness found")
            w.validate(g)
            return w
    return None


def is_free(g, k):
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 2 * k + 1:
        return True
    return _backend.mask_graph_of(g).first_center(k) == -1


def brute_force_subdivision(g, k, *, center=None, max_order=BRUTE_MAX_ORDER, max_k=BRUTE_MAX_K):
    """Exhaustive search: centres, k-subsets of in-neighbours, injective leaves.

    Independent of the matching-based detector; used as its oracle.
    """
    if g.n > max_order or k > max_k:
        raise InstanceTooLarge(f"brute force guarded at n <= {max_order}, k <= {max_k}")
    centers = range(g.n) if center is None else [center]
    inm = g.in_masks
    for v in centers:
        _check_center(g, v)
        for spokes in combinations(list(iter_bits(inm[v])), k):
            leaves = _brute_leaves(inm, v, spokes)
            if leaves is not None:
                return SubdivisionWitness(k, v, spokes, leaves)
    return None


def _brute_leaves(inm, v, spokes):
    used = {v, *spokes}
    chosen = []

    def assign(i):
        if i == len(spokes):
            return True
        for w in iter_bits(inm[spokes[i]]):
            if w in used:
                continue
            used.add(w)
            chosen.append(w)
            if assign(i + 1):
                return True
            used.discard(w)
            chosen.pop()
        return False

    return tuple(chosen) if assign(0) else None
