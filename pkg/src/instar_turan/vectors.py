"""Covering relation on degree vectors and bipartite matching with Hall certificates."""

from __future__ import annotations

from dataclasses import dataclass, field


def decreasing(x):
    """Components of ``x`` rearranged in decreasing order (a copy)."""
    return tuple(sorted(x, reverse=True))


def covers(x, y):
    """True iff ``x`` covers ``y``: ``len(x) >= len(y)`` and ``x[i] >= y[i]``
    componentwise after both are sorted decreasingly."""
    if len(x) < len(y):
        return False
    return all(a >= b for a, b in zip(decreasing(x), decreasing(y)))


def staircase(k):
    """The vector ``(k, k-1, ..., 1)``."""
    return tuple(range(k, 0, -1))


@dataclass(frozen=True)
class BipartiteInstance:
    """Left vertices ``left`` with adjacency into ``right``.

    Tie-breaking in every algorithm below follows the order of ``left`` and of
    each adjacency list, so results are deterministic.
    """

    left: tuple
    right: tuple
    adj: dict = field(hash=False)

    @classmethod
    def from_mapping(cls, adjacency, right=None):
        left = tuple(adjacency)
        if right is None:
            right = tuple(sorted({r for rs in adjacency.values() for r in rs}))
        rset = set(right)
        adj = {}
        for u in left:
            rs = tuple(sorted(set(adjacency[u])))
            if not set(rs) <= rset:
                raise ValueError(f"left vertex {u!r} adjacent outside the right side")
            adj[u] = rs
        return cls(left, tuple(right), adj)

    def neighborhood(self, subset):
        out = set()
        for u in subset:
            out.update(self.adj[u])
        return frozenset(out)


def max_matching(b):
    """Maximum-cardinality matching as a dict ``left -> right`` (Kuhn's algorithm)."""
    match_right = {}

    def augment(u, seen):
        for r in b.adj[u]:
            if r in seen:
                continue
            seen.add(r)
            if r not in match_right or augment(match_right[r], seen):
                match_right[r] = u
                return True
        return False

    for u in b.left:
        augment(u, set())
    return {u: r for r, u in sorted(match_right.items(), key=lambda item: b.left.index(item[1]))}


@dataclass(frozen=True)
class Saturating:
    matching: dict = field(hash=False)


@dataclass(frozen=True)
class Violator:
    subset: frozenset
    neighborhood: frozenset


def hall_certificate(b):
    """Either a matching saturating the left side or a Hall violator.

    The violator is the set of left vertices reachable by alternating paths
    from the first unmatched left vertex; its neighbourhood is fully matched
    back into it, so ``|N(S)| = |S| - 1``.
    """
    matching = max_matching(b)
    if len(matching) == len(b.left):
        return Saturating(matching)
    match_right = {r: u for u, r in matching.items()}
    root = next(u for u in b.left if u not in matching)
    subset, nbrs = {root}, set()
    stack = [root]
    while stack:
        u = stack.pop()
        for r in b.adj[u]:
            if r in nbrs:
                continue
            nbrs.add(r)
            mate = match_right[r]
            if mate not in subset:
                subset.add(mate)
                stack.append(mate)
    return Violator(frozenset(subset), frozenset(nbrs))


def check_certificate(b, cert):
    """Independent re-check of a certificate against the instance."""
    if isinstance(cert, Saturating):
        m = cert.matching
        return (
            set(m) == set(b.left)
            and len(set(m.values())) == len(m)
            and all(r in b.adj[u] for u, r in m.items())
        )
    if isinstance(cert, Violator):
        return cert.subset <= set(b.left) and len(b.neighborhood(cert.subset)) < len(cert.subset)
    return False
