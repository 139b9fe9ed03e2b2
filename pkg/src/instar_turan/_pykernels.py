"""Pure-Python kernels; the reference twin of ``_ckernels.pyx``.

Both modules expose the same surface:

``MaskGraph(n)``
    mutable bitset digraph with ``add_arc``/``remove_arc`` (the search's
    incremental builder) and the detector primitives.
``exact_search(n, k, best, target, deadline, prefix)``
    branch-and-bound over the lexicographic pair order.
``oracle_scan(n, k)``
    full enumeration of labelled oriented graphs, filtered by brute force.

Masks are plain Python ints here, so ``MaskGraph`` works for any ``n``.
"""

import time
from itertools import combinations

MAX_ORDER = None

OUT, IN, ABSENT = 2, 1, 0


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _find_augmenting(adj, n, root, mate):
    """Edmonds' blossom search for an augmenting path from exposed ``root``.

    Returns ``(end, parent)`` or ``(-1, None)``.
    """
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = [root]
    qi = 0

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for to in _bits(adj[v]):
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return -1, None


def center_matching(inm, outm, n, v, k):
    """Maximum (truncated at ``k``) set of disjoint 2-paths ``w -> u -> v``.

    Equivalent to a maximum matching in the undirected graph whose edges are
    the arcs ``w -> u`` with ``u`` an in-neighbour of ``v`` and ``w != v``;
    every matched edge is one path with the arc head as spoke.  The graph is
    not bipartite in general (arcs inside ``N-(v)``), hence blossoms.
    """
    spokes = inm[v]
    vbit = 1 << v
    adj = [0] * n
    for x in range(n):
        if x == v:
            continue
        a = outm[x] & spokes
        if spokes >> x & 1:
            a |= inm[x] & ~vbit
        adj[x] = a
    mate = [-1] * n
    count = 0
    matched = 0
    for x in range(n):
        if count >= k:
            break
        if mate[x] != -1:
            continue
        free = adj[x] & ~matched
        if free:
            y = (free & -free).bit_length() - 1
            mate[x], mate[y] = y, x
            matched |= 1 << x | 1 << y
            count += 1
    for root in range(n):
        if count >= k:
            break
        if mate[root] != -1 or not adj[root]:
            continue
        end, parent = _find_augmenting(adj, n, root, mate)
        if end == -1:
            continue
        x = end
        while x != -1:
            px = parent[x]
            nxt = mate[px]
            mate[x], mate[px] = px, x
            x = nxt
        count += 1
    return count, mate


def _could_center(inm, v, k):
    """Cheap necessary conditions for an S_{k,1} centred at ``v``."""
    spokes = inm[v]
    if spokes.bit_count() < k:
        return False
    fed = 0
    for u in _bits(spokes):
        if inm[u]:
            fed += 1
            if fed >= k:
                return True
    return False


def _brute_assign(inm, spokes, i, used):
    if i == len(spokes):
        return True
    for w in _bits(inm[spokes[i]] & ~used):
        if _brute_assign(inm, spokes, i + 1, used | 1 << w):
            return True
    return False


def brute_center(inm, v, k):
    """Exhaustive check: k-subsets of N-(v), then injective leaf assignments."""
    for spokes in combinations(list(_bits(inm[v])), k):
        used = 1 << v
        for u in spokes:
            used |= 1 << u
        if _brute_assign(inm, spokes, 0, used):
            return True
    return False


class MaskGraph:
    """Mutable bitset digraph; the private incremental builder."""

    def __init__(self, n):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.m = 0
        self.inm = [0] * n
        self.outm = [0] * n

    @classmethod
    def from_in_masks(cls, n, in_masks):
        g = cls(n)
        for v, mask in enumerate(in_masks):
            for u in _bits(mask):
                g.add_arc(u, v)
        return g

    def add_arc(self, a, b):
        self.outm[a] |= 1 << b
        self.inm[b] |= 1 << a
        self.m += 1

    def remove_arc(self, a, b):
        self.outm[a] &= ~(1 << b)
        self.inm[b] &= ~(1 << a)
        self.m -= 1

    def has_arc(self, a, b):
        return bool(self.outm[a] >> b & 1)

    def in_masks(self):
        return list(self.inm)

    def out_masks(self):
        return list(self.outm)

    def center_count(self, v, k):
        if not _could_center(self.inm, v, k):
            return 0
        return min(center_matching(self.inm, self.outm, self.n, v, k)[0], k)

    def center_match(self, v, k):
        return center_matching(self.inm, self.outm, self.n, v, k)

    def first_center(self, k):
        for v in range(self.n):
            if self.center_count(v, k) >= k:
                return v
        return -1

    def violates_after(self, a, b, k):
        """Whether the arc ``a -> b`` (already added) completed an S_{k,1}.

        A new copy uses the arc as spoke->center (center ``b``) or as
        leaf->spoke (center an out-neighbour of ``b``).
        """
        if self.center_count(b, k) >= k:
            return True
        for c in _bits(self.outm[b]):
            if self.center_count(c, k) >= k:
                return True
        return False

    def brute_center(self, v, k):
        return brute_center(self.inm, v, k)

    def brute_first_center(self, k):
        for v in range(self.n):
            if brute_center(self.inm, v, k):
                return v
        return -1


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def exact_search(n, k, best, target=-1, deadline=0.0, prefix=()):
    """Branch and bound over the states {i->j, j->i, absent} of each pair.

    ``best`` is the incumbent arc count (a result must beat it).  With
    ``target >= 0`` the search instead collects every complete assignment
    with exactly ``target`` arcs.  Only assignments that are lexicographic
    leaders under swaps of adjacent, so-far-indistinguishable vertices are
    visited; that keeps at least one labelling of every isomorphism class.
    """
    pairs = _pairs(n)
    npairs = len(pairs)
    g = MaskGraph(n)
    st = {"best": best, "best_in": None, "nodes": 0, "prunes": 0, "timed_out": False}
    collected = []
    collect = target >= 0

    def state(r, c):
        if g.outm[r] >> c & 1:
            return OUT
        if g.inm[r] >> c & 1:
            return IN
        return ABSENT

    def rec(d):
        st["nodes"] += 1
        if deadline and st["nodes"] & 4095 == 0 and time.monotonic() > deadline:
            st["timed_out"] = True
        if st["timed_out"]:
            return
        bound = g.m + npairs - d
        if (collect and bound < target) or (not collect and bound <= st["best"]):
            st["prunes"] += 1
            return
        if d == npairs:
            if collect:
                collected.append(tuple(g.inm))
            else:
                st["best"] = g.m
                st["best_in"] = tuple(g.inm)
            return
        i, j = pairs[d]
        cap = OUT
        if j - 1 > i and all(state(r, j - 1) == state(r, j) for r in range(i)):
            cap = state(i, j - 1)
        choices = (OUT, IN, ABSENT) if d >= len(prefix) else (prefix[d],)
        for s in choices:
            if s > cap:
                continue
            if s == ABSENT:
                rec(d + 1)
                continue
            a, b = (i, j) if s == OUT else (j, i)
            g.add_arc(a, b)
            if g.violates_after(a, b, k):
                st["prunes"] += 1
            else:
                rec(d + 1)
            g.remove_arc(a, b)

    rec(0)
    return {
        "best": st["best"],
        "best_in": st["best_in"],
        "nodes": st["nodes"],
        "prunes": st["prunes"],
        "timed_out": st["timed_out"],
        "collected": collected,
    }


def oracle_scan(n, k):
    """Every labelled oriented graph on ``n`` vertices, filtered by brute force.

    Returns ``(max arcs of a free graph, number of labelled free graphs with
    that many arcs)``.
    """
    pairs = _pairs(n)
    npairs = len(pairs)
    inm = [0] * n
    res = [-1, 0]

    def free():
        for v in range(n):
            if brute_center(inm, v, k):
                return False
        return True

    def rec(d, m):
        if d == npairs:
            if m >= res[0] and free():
                if m > res[0]:
                    res[0], res[1] = m, 1
                else:
                    res[1] += 1
            return
        i, j = pairs[d]
        rec(d + 1, m)
        inm[j] |= 1 << i
        rec(d + 1, m + 1)
        inm[j] ^= 1 << i
        inm[i] |= 1 << j
        rec(d + 1, m + 1)
        inm[i] ^= 1 << j

    rec(0, 0)
    return res[0], res[1]
