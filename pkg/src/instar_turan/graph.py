"""Immutable oriented graphs backed by per-vertex in/out bitsets.

Vertices are ``0..n-1``.  A vertex set is any iterable of such indices; the
bitset of vertex ``v``'s in-neighbours is ``g.in_mask(v)`` (bit ``u`` set iff
``u -> v``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AntiParallel, DuplicateArc, LoopArc, OrderTooLarge, VertexOutOfRange

CANONICAL_LIMIT = 10


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class OrientedGraph:
    """Loop-free digraph with at most one arc per unordered pair."""

    __slots__ = ("_n", "_in", "_out", "_m")

    def __init__(self, n, arcs=()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        inm = [0] * n
        outm = [0] * n
        m = 0
        # validate everything before publishing, so rejection is atomic
        for u, v in arcs:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise LoopArc(f"loop arc ({u},{v})")
            if outm[u] >> v & 1:
                raise DuplicateArc(f"duplicate arc ({u},{v})")
            if outm[v] >> u & 1:
                raise AntiParallel(f"arcs ({u},{v}) and ({v},{u}) are anti-parallel")
            outm[u] |= 1 << v
            inm[v] |= 1 << u
            m += 1
        self._n = n
        self._in = tuple(inm)
        self._out = tuple(outm)
        self._m = m

    @classmethod
    def _from_masks(cls, n, in_masks):
        """Trusted constructor used by the search kernels (no validation)."""
        g = cls.__new__(cls)
        outm = [0] * n
        m = 0
        for v, mask in enumerate(in_masks):
            for u in iter_bits(mask):
                outm[u] |= 1 << v
                m += 1
        g._n = n
        g._in = tuple(in_masks)
        g._out = tuple(outm)
        g._m = m
        return g

    @property
    def n(self):
        return self._n

    @property
    def num_arcs(self):
        return self._m

    @property
    def arcs(self):
        return tuple((u, v) for u in range(self._n) for v in iter_bits(self._out[u]))

    def has_arc(self, u, v):
        _check_vertex(u, self._n)
        _check_vertex(v, self._n)
        return bool(self._out[u] >> v & 1)

    def in_mask(self, v):
        _check_vertex(v, self._n)
        return self._in[v]

    def out_mask(self, v):
        _check_vertex(v, self._n)
        return self._out[v]

    @property
    def in_masks(self):
        return self._in

    @property
    def out_masks(self):
        return self._out

    def in_neighbors(self, v):
        return frozenset(iter_bits(self.in_mask(v)))

    def out_neighbors(self, v):
        return frozenset(iter_bits(self.out_mask(v)))

    def in_degree(self, v):
        return self.in_mask(v).bit_count()

    def out_degree(self, v):
        return self.out_mask(v).bit_count()

    def in_degrees(self):
        return [m.bit_count() for m in self._in]

    def out_degrees(self):
        return [m.bit_count() for m in self._out]

    def max_in_degree(self):
        return max((m.bit_count() for m in self._in), default=0)

    def arcs_between(self, xs, ys):
        """Number of arcs ``(u, v)`` with ``u in xs`` and ``v in ys``."""
        xm = self._vertex_mask(xs)
        ym = self._vertex_mask(ys)
        return sum((self._out[u] & ym).bit_count() for u in iter_bits(xm))

    def underlying(self):
        return UnderlyingGraph(self._n, frozenset((min(u, v), max(u, v)) for u, v in self.arcs))

    def relabel(self, perm):
        """Graph with arc ``(perm[u], perm[v])`` for every arc ``(u, v)``."""
        if sorted(perm) != list(range(self._n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return OrientedGraph(self._n, [(perm[u], perm[v]) for u, v in self.arcs])

    def with_arcs(self, add=(), remove=()):
        """Copy with ``remove`` deleted (absent arcs ignored), then ``add`` inserted."""
        n = self._n
        inm, outm, m = list(self._in), list(self._out), self._m
        for u, v in remove:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if outm[u] >> v & 1:
                outm[u] &= ~(1 << v)
                inm[v] &= ~(1 << u)
                m -= 1
        for u, v in add:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise LoopArc(f"loop arc ({u},{v})")
            if outm[u] >> v & 1:
                raise DuplicateArc(f"duplicate arc ({u},{v})")
            if outm[v] >> u & 1:
                raise AntiParallel(f"arcs ({u},{v}) and ({v},{u}) are anti-parallel")
            outm[u] |= 1 << v
            inm[v] |= 1 << u
            m += 1
        g = OrientedGraph.__new__(OrientedGraph)
        g._n, g._in, g._out, g._m = n, tuple(inm), tuple(outm), m
        return g

    def induced(self, vertices):
        """Subgraph induced by ``vertices``, relabelled in increasing order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        vm = self._vertex_mask(vs)
        arcs = [(index[u], index[w]) for u in vs for w in iter_bits(self._out[u] & vm)]
        return OrientedGraph(len(vs), arcs)

    def _vertex_mask(self, vertices):
        m = 0
        for v in vertices:
            _check_vertex(v, self._n)
            m |= 1 << v
        return m

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self._n == other._n and self._in == other._in

    def __hash__(self):
        return hash((self._n, self._in))

    def __repr__(self):
        return f"OrientedGraph(n={self._n}, arcs={list(self.arcs)})"


@dataclass(frozen=True)
class UnderlyingGraph:
    n: int
    edges: frozenset

    @property
    def num_edges(self):
        return len(self.edges)


def _check_vertex(v, n):
    if not isinstance(v, int) or not 0 <= v < n:
        raise VertexOutOfRange(f"vertex {v!r} not in 0..{n - 1}")


def build_graph(n, arcs):
    return OrientedGraph(n, arcs)


def degree_queries(g, v):
    """``(in-neighbourhood, out-neighbourhood, in-degree, out-degree)`` of ``v``."""
    ins, outs = g.in_neighbors(v), g.out_neighbors(v)
    return ins, outs, len(ins), len(outs)


def max_in_degree(g):
    return g.max_in_degree()


def arcs_between(g, xs, ys):
    return g.arcs_between(xs, ys)


def underlying(g):
    return g.underlying()


def transitive_tournament(n):
    return OrientedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


# -- canonical form -----------------------------------------------------------


def _refined_cells(g):
    """Vertex cells ordered by an isomorphism-invariant colour.

    Starts from ``(d-, d+)`` and refines by the multisets of in- and
    out-neighbour colours until the partition is stable.
    """
    n = g.n
    sig = [(g.in_degree(v), g.out_degree(v)) for v in range(n)]
    ranks = _rank(sig)
    while True:
        sig = [
            (
                ranks[v],
                tuple(sorted(ranks[u] for u in iter_bits(g.in_masks[v]))),
                tuple(sorted(ranks[u] for u in iter_bits(g.out_masks[v]))),
            )
            for v in range(n)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            ranks = new
            break
        ranks = new
    cells = {}
    for v in range(n):
        cells.setdefault(ranks[v], []).append(v)
    return [cells[r] for r in sorted(cells)]


def _rank(sig):
    order = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [order[s] for s in sig]


def _twins(g, u, w):
    """Swapping ``u`` and ``w`` is an automorphism (same neighbours, no arc between)."""
    bu, bw = 1 << u, 1 << w
    if g.out_masks[u] & bw or g.out_masks[w] & bu:
        return False
    return g.in_masks[u] == g.in_masks[w] and g.out_masks[u] == g.out_masks[w]


def canonical_code(g, limit=CANONICAL_LIMIT):
    """Canonical byte code: equal codes iff the graphs are isomorphic.

    Vertices are placed one at a time, position ``i`` drawing from the
    refined colour cell that covers it; placing a vertex appends two bits
    per earlier vertex (arc to it, arc from it).  The code is the smallest
    such string, found depth-first with prefix pruning; twin candidates
    are tried once.
    """
    n = g.n
    if n > limit:
        raise OrderTooLarge(f"canonical form limited to {limit} vertices, got {n}")
    if n == 0:
        return b"\x00"
    slots = [cell for cell in _refined_cells(g) for _ in cell]
    out = g.out_masks
    best = None
    order, word = [], []

    def place(i):
        nonlocal best
        if i == n:
            if best is None or word < best:
                best = list(word)
            return
        tried = []
        for v in slots[i]:
            if v in order or any(_twins(g, v, t) for t in tried):
                continue
            tried.append(v)
            entry = 0
            for u in order:
                entry = entry << 2 | (out[v] >> u & 1) << 1 | (out[u] >> v & 1)
            word.append(entry)
            if best is None or word <= best[: i + 1]:
                order.append(v)
                place(i + 1)
                order.pop()
            word.pop()

    place(0)
    code = 0
    for i, entry in enumerate(best):
        code = code << (2 * i) | entry
    return bytes([n]) + code.to_bytes((n * (n - 1) + 7) // 8, "big")


def is_isomorphic(g1, g2, limit=CANONICAL_LIMIT):
    if g1.n != g2.n or g1.num_arcs != g2.num_arcs:
        return False
    if sorted(zip(g1.in_degrees(), g1.out_degrees())) != sorted(zip(g2.in_degrees(), g2.out_degrees())):
        return False
    return canonical_code(g1, limit) == canonical_code(g2, limit)
