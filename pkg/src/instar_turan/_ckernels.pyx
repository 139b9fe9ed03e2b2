# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels over 64-bit vertex masks (orders up to 64).

Same surface and algorithms as ``_pykernels``; see that module for the
contracts.
"""

from libc.stdint cimport uint64_t
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64
    MAXPAIRS = 2016

MAX_ORDER = MAXN

cdef int OUT = 2
cdef int IN = 1
cdef int ABSENT = 0


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t bit(int i) noexcept nogil:
    return (<uint64_t>1) << i


cdef double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


# -- general matching (Edmonds' blossom) ---------------------------------------

cdef int _lca(int a, int b, const int* base, const int* parent, const int* mate) noexcept nogil:
    cdef uint64_t seen = 0
    while True:
        a = base[a]
        seen |= bit(a)
        if mate[a] == -1:
            break
        a = parent[mate[a]]
    while True:
        b = base[b]
        if seen & bit(b):
            return b
        b = parent[mate[b]]


cdef uint64_t _mark_path(int v, int b, int child, const int* base, int* parent,
                         const int* mate, uint64_t blossom) noexcept nogil:
    while base[v] != b:
        blossom |= bit(base[v]) | bit(base[mate[v]])
        parent[v] = child
        child = mate[v]
        v = parent[mate[v]]
    return blossom


cdef int _augment(const uint64_t* adj, int n, int root, int* mate) noexcept nogil:
    """Find an augmenting path from exposed ``root`` and flip it; 1 on success."""
    cdef int parent[MAXN]
    cdef int base[MAXN]
    cdef int queue[MAXN]
    cdef uint64_t used = bit(root)
    cdef uint64_t blossom, m
    cdef int qh = 0, qt = 0, v, to, cur, i, x, px, nxt, end = -1
    for i in range(n):
        parent[i] = -1
        base[i] = i
    queue[qt] = root
    qt += 1
    while qh < qt and end == -1:
        v = queue[qh]
        qh += 1
        m = adj[v]
        while m:
            to = lowbit(m)
            m &= m - 1
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = _lca(v, to, base, parent, mate)
                blossom = 0
                blossom = _mark_path(v, cur, to, base, parent, mate, blossom)
                blossom = _mark_path(to, cur, v, base, parent, mate, blossom)
                for i in range(n):
                    if blossom & bit(base[i]):
                        base[i] = cur
                        if not (used & bit(i)):
                            used |= bit(i)
                            queue[qt] = i
                            qt += 1
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    end = to
                    break
                used |= bit(mate[to])
                queue[qt] = mate[to]
                qt += 1
    if end == -1:
        return 0
    x = end
    while x != -1:
        px = parent[x]
        nxt = mate[px]
        mate[x] = px
        mate[px] = x
        x = nxt
    return 1


cdef int _center_matching(const uint64_t* inm, const uint64_t* outm, int n, int v, int k,
                          int* mate) noexcept nogil:
    cdef uint64_t adj[MAXN]
    cdef uint64_t spokes = inm[v], vbit = bit(v), matched = 0, free
    cdef int x, y, count = 0
    for x in range(n):
        mate[x] = -1
        if x == v:
            adj[x] = 0
            continue
        adj[x] = outm[x] & spokes
        if spokes & bit(x):
            adj[x] |= inm[x] & ~vbit
    for x in range(n):
        if count >= k:
            break
        if mate[x] != -1:
            continue
        free = adj[x] & ~matched
        if free:
            y = lowbit(free)
            mate[x] = y
            mate[y] = x
            matched |= bit(x) | bit(y)
            count += 1
    for x in range(n):
        if count >= k:
            break
        if mate[x] != -1 or adj[x] == 0:
            continue
        count += _augment(adj, n, x, mate)
    return count


cdef bint _could_center(const uint64_t* inm, int v, int k) noexcept nogil:
    cdef uint64_t spokes = inm[v]
    cdef int fed = 0
    if popcount(spokes) < k:
        return False
    while spokes:
        if inm[lowbit(spokes)]:
            fed += 1
            if fed >= k:
                return True
        spokes &= spokes - 1
    return False


cdef int _center_count(const uint64_t* inm, const uint64_t* outm, int n, int v, int k) noexcept nogil:
    cdef int mate[MAXN]
    cdef int c
    if not _could_center(inm, v, k):
        return 0
    c = _center_matching(inm, outm, n, v, k, mate)
    return c if c < k else k


cdef bint _violates_after(const uint64_t* inm, const uint64_t* outm, int n, int b, int k) noexcept nogil:
    cdef uint64_t m = outm[b]
    if _center_count(inm, outm, n, b, k) >= k:
        return True
    while m:
        if _center_count(inm, outm, n, lowbit(m), k) >= k:
            return True
        m &= m - 1
    return False


# -- brute force (independent oracle) -------------------------------------------

cdef bint _brute_assign(const uint64_t* inm, const int* spokes, int k, int i, uint64_t used) noexcept nogil:
    cdef uint64_t m
    cdef int w
    if i == k:
        return True
    m = inm[spokes[i]] & ~used
    while m:
        w = lowbit(m)
        m &= m - 1
        if _brute_assign(inm, spokes, k, i + 1, used | bit(w)):
            return True
    return False


cdef bint _brute_subsets(const uint64_t* inm, int v, int k, int* spokes, int depth,
                         uint64_t rest) noexcept nogil:
    cdef uint64_t used
    cdef int i, u
    if depth == k:
        used = bit(v)
        for i in range(k):
            used |= bit(spokes[i])
        return _brute_assign(inm, spokes, k, 0, used)
    while rest:
        if popcount(rest) < k - depth:
            return False
        u = lowbit(rest)
        rest &= rest - 1
        spokes[depth] = u
        if _brute_subsets(inm, v, k, spokes, depth + 1, rest):
            return True
    return False


cdef bint _brute_center(const uint64_t* inm, int v, int k) noexcept nogil:
    cdef int spokes[MAXN]
    if k <= 0:
        return True
    return _brute_subsets(inm, v, k, spokes, 0, inm[v])


cdef class MaskGraph:
    """Mutable bitset digraph; the private incremental builder."""

    cdef readonly int n
    cdef public int m
    cdef uint64_t inm[MAXN]
    cdef uint64_t outm[MAXN]

    def __cinit__(self, int n):
        if n < 0 or n > MAXN:
            raise ValueError(f"compiled MaskGraph supports 0 <= n <= {MAXN}, got {n}")
        self.n = n
        self.m = 0
        cdef int i
        for i in range(MAXN):
            self.inm[i] = 0
            self.outm[i] = 0

    @classmethod
    def from_in_masks(cls, int n, in_masks):
        cdef MaskGraph g = cls(n)
        cdef int v, u
        cdef uint64_t mask
        for v in range(n):
            mask = in_masks[v]
            while mask:
                u = lowbit(mask)
                mask &= mask - 1
                g.add_arc(u, v)
        return g

    cpdef add_arc(self, int a, int b):
        self.outm[a] |= bit(b)
        self.inm[b] |= bit(a)
        self.m += 1

    cpdef remove_arc(self, int a, int b):
        self.outm[a] &= ~bit(b)
        self.inm[b] &= ~bit(a)
        self.m -= 1

    cpdef bint has_arc(self, int a, int b):
        return (self.outm[a] >> b) & 1

    def in_masks(self):
        return [self.inm[i] for i in range(self.n)]

    def out_masks(self):
        return [self.outm[i] for i in range(self.n)]

    cpdef int center_count(self, int v, int k):
        return _center_count(self.inm, self.outm, self.n, v, k)

    def center_match(self, int v, int k):
        cdef int mate[MAXN]
        cdef int c = _center_matching(self.inm, self.outm, self.n, v, k, mate)
        return c, [mate[i] for i in range(self.n)]

    cpdef int first_center(self, int k):
        cdef int v
        for v in range(self.n):
            if _center_count(self.inm, self.outm, self.n, v, k) >= k:
                return v
        return -1

    cpdef bint violates_after(self, int a, int b, int k):
        return _violates_after(self.inm, self.outm, self.n, b, k)

    cpdef bint brute_center(self, int v, int k):
        return _brute_center(self.inm, v, k)

    cpdef int brute_first_center(self, int k):
        cdef int v
        for v in range(self.n):
            if _brute_center(self.inm, v, k):
                return v
        return -1


def center_matching(in_masks, out_masks, int n, int v, int k):
    g = MaskGraph(n)
    cdef MaskGraph cg = g
    cdef int i
    for i in range(n):
        cg.inm[i] = in_masks[i]
        cg.outm[i] = out_masks[i]
    return cg.center_match(v, k)


def brute_center(in_masks, int v, int k):
    cdef uint64_t inm[MAXN]
    cdef int i
    for i in range(len(in_masks)):
        inm[i] = in_masks[i]
    return bool(_brute_center(inm, v, k))


# -- branch and bound ------------------------------------------------------------

cdef class _Search:
    cdef int n, k, npairs, best, target, nprefix
    cdef bint collect, timed_out, found
    cdef long long nodes, prunes
    cdef double deadline
    cdef int m
    cdef int pi[MAXPAIRS]
    cdef int pj[MAXPAIRS]
    cdef int prefix[MAXPAIRS]
    cdef uint64_t inm[MAXN]
    cdef uint64_t outm[MAXN]
    cdef uint64_t best_in[MAXN]
    cdef list collected

    cdef inline int state(self, int r, int c) noexcept:
        if self.outm[r] & bit(c):
            return OUT
        if self.inm[r] & bit(c):
            return IN
        return ABSENT

    cdef void rec(self, int d):
        cdef int i, j, r, s, a, b, cap, bound, lo, hi
        self.nodes += 1
        if self.deadline > 0 and (self.nodes & 4095) == 0 and _now() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            return
        bound = self.m + self.npairs - d
        if (self.collect and bound < self.target) or (not self.collect and bound <= self.best):
            self.prunes += 1
            return
        if d == self.npairs:
            if self.collect:
                self.collected.append(tuple([self.inm[r] for r in range(self.n)]))
            else:
                self.best = self.m
                self.found = True
                for r in range(self.n):
                    self.best_in[r] = self.inm[r]
            return
        i = self.pi[d]
        j = self.pj[d]
        cap = OUT
        if j - 1 > i:
            for r in range(i):
                if self.state(r, j - 1) != self.state(r, j):
                    break
            else:
                cap = self.state(i, j - 1)
        if d < self.nprefix:
            lo = self.prefix[d]
            hi = self.prefix[d]
        else:
            lo = ABSENT
            hi = OUT
        s = hi
        while s >= lo:
            if s <= cap:
                if s == ABSENT:
                    self.rec(d + 1)
                else:
                    if s == OUT:
                        a = i
                        b = j
                    else:
                        a = j
                        b = i
                    self.outm[a] |= bit(b)
                    self.inm[b] |= bit(a)
                    self.m += 1
                    if _violates_after(self.inm, self.outm, self.n, b, self.k):
                        self.prunes += 1
                    else:
                        self.rec(d + 1)
                    self.outm[a] &= ~bit(b)
                    self.inm[b] &= ~bit(a)
                    self.m -= 1
            s -= 1


def exact_search(int n, int k, int best, int target=-1, double deadline=0.0, prefix=()):
    if n < 0 or n > 11:
        raise ValueError("compiled exact search supports n <= 11")
    cdef _Search s = _Search()
    cdef int i, j, d = 0
    s.n = n
    s.k = k
    s.best = best
    s.target = target
    s.collect = target >= 0
    s.deadline = deadline
    s.timed_out = False
    s.found = False
    s.nodes = 0
    s.prunes = 0
    s.m = 0
    s.collected = []
    for i in range(n):
        s.inm[i] = 0
        s.outm[i] = 0
        for j in range(i + 1, n):
            s.pi[d] = i
            s.pj[d] = j
            d += 1
    s.npairs = d
    s.nprefix = len(prefix)
    for i in range(s.nprefix):
        s.prefix[i] = prefix[i]
    s.rec(0)
    return {
        "best": s.best,
        "best_in": tuple([s.best_in[i] for i in range(n)]) if s.found else None,
        "nodes": s.nodes,
        "prunes": s.prunes,
        "timed_out": bool(s.timed_out),
        "collected": s.collected,
    }


# -- exhaustive oracle -------------------------------------------------------------

cdef class _Oracle:
    cdef int n, k, npairs, best
    cdef long long count
    cdef int pi[MAXPAIRS]
    cdef int pj[MAXPAIRS]
    cdef uint64_t inm[MAXN]

    cdef bint free(self) noexcept:
        cdef int v
        for v in range(self.n):
            if _brute_center(self.inm, v, self.k):
                return False
        return True

    cdef void rec(self, int d, int m) noexcept:
        cdef int i, j
        if d == self.npairs:
            if m >= self.best and self.free():
                if m > self.best:
                    self.best = m
                    self.count = 1
                else:
                    self.count += 1
            return
        i = self.pi[d]
        j = self.pj[d]
        self.rec(d + 1, m)
        self.inm[j] |= bit(i)
        self.rec(d + 1, m + 1)
        self.inm[j] ^= bit(i)
        self.inm[i] |= bit(j)
        self.rec(d + 1, m + 1)
        self.inm[i] ^= bit(j)


def oracle_scan(int n, int k):
    if n < 0 or n > 11:
        raise ValueError("oracle supports n <= 11")
    cdef _Oracle o = _Oracle()
    cdef int i, j, d = 0
    o.n = n
    o.k = k
    o.best = -1
    o.count = 0
    for i in range(n):
        o.inm[i] = 0
        for j in range(i + 1, n):
            o.pi[d] = i
            o.pj[d] = j
            d += 1
    o.npairs = d
    o.rec(0, 0)
    return o.best, o.count
