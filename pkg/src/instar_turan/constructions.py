"""Extremal constructions, closed-form bounds and the named fixture digraphs.

Layout of ``construct_lower``: the zero-in-degree side ``X`` is ``0..s-1``
and ``Y`` is ``s..n-1``; every ``x -> y`` arc is present and ``D[Y]`` is
in-degree ``(k-1)``-regular.

Fixture numbering
-----------------
``star:k``     spokes ``0..k-1``, centre ``k``.
``subdiv:k``   spokes ``0..k-1``, centre ``k``, leaf ``k+1+i`` feeds spoke ``i``.
``H1``-``H7``  ``w1=0, w2=1, u1=2, u2=3, u3=4, v=5``; the extra vertex of
               H4-H6 is ``u4=6`` (H4 adds ``w3=7``), H7 adds ``w3=6``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, SchemeError, UnknownFixture
from .graph import OrientedGraph

# -- closed forms -----------------------------------------------------------------


def turan_formula(n, k):
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return (n + k - 1) ** 2 // 4


def theorem3_bounds(n, k):
    """``(lower, upper)`` sandwich for ``k >= 4`` and ``n >= 3k+1``."""
    if k < 4 or n < 3 * k + 1:
        raise DomainError(f"bounds hold for k >= 4 and n >= 3k+1, got n={n}, k={k}")
    lower = turan_formula(n, k)
    return lower, lower + (k - 1) * n


def default_split(n, k):
    return (n - k + 1) // 2


def extremal_window(n, k):
    """Admissible sizes of the zero-in-degree side for the k=2,3 extremal families."""
    if k == 2:
        return {(n - 1) // 2, n // 2}
    if k == 3:
        return {n // 2 - 1, (n + 1) // 2 - 1}
    raise DomainError(f"extremal families are characterised for k in {{2,3}}, got {k}")


# -- in-regular schemes for D[Y] --------------------------------------------------


def circulant_arcs(t, offsets, start=0):
    """Arcs ``y_i -> y_j`` with ``(i - j) mod t`` in ``offsets`` on ``start..start+t-1``."""
    return [(start + i, start + (i - d) % t) for i in range(t) for d in offsets]


def circulant_inregular(t, r):
    """Circulant digraph on ``t`` vertices with every in- and out-degree ``r``."""
    if r < 0 or t < 2 * r + 1:
        raise DomainError(f"circulant with in-degree {r} needs t >= {2 * r + 1}, got t={t}")
    return OrientedGraph(t, circulant_arcs(t, range(1, r + 1)))


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    k: int
    split: int | None = None
    y_scheme: object = "circulant"


def parse_y_scheme(text):
    """``circulant`` | ``cycles:a,b,...`` | ``offsets:a,b,...`` -> scheme value."""
    if isinstance(text, str):
        kind, _, rest = text.partition(":")
        if kind == "circulant" and not rest:
            return "circulant"
        if kind in ("cycles", "offsets") and rest:
            try:
                nums = tuple(int(p) for p in rest.split(","))
            except ValueError as exc:
                raise SchemeError(f"bad y-scheme {text!r}") from exc
            return (kind, nums)
        raise SchemeError(f"unknown y-scheme {text!r}")
    return text


def scheme_graph(scheme, t, r):
    """The in-degree ``r``-regular digraph on ``t`` vertices named by ``scheme``.

    ``("cycles", sizes)`` is a disjoint union of circulant blocks (directed
    cycles when ``r = 1``); ``("offsets", ds)`` a circulant with the given
    offsets; an ``OrientedGraph`` is used as is.
    """
    scheme = parse_y_scheme(scheme)
    if scheme == "circulant":
        if t < 2 * r + 1:
            raise DomainError(f"|Y| = {t} too small for in-degree {r}")
        h = circulant_inregular(t, r)
    elif isinstance(scheme, OrientedGraph):
        h = scheme
    elif isinstance(scheme, tuple) and scheme[0] == "cycles":
        sizes = scheme[1]
        if sum(sizes) != t:
            raise SchemeError(f"block sizes {sizes} do not sum to |Y| = {t}")
        arcs, start = [], 0
        for size in sizes:
            if size < 2 * r + 1:
                raise SchemeError(f"block of size {size} cannot be in-degree {r} regular and oriented")
            arcs += circulant_arcs(size, range(1, r + 1), start)
            start += size
        h = OrientedGraph(t, arcs)
    elif isinstance(scheme, tuple) and scheme[0] == "offsets":
        ds = scheme[1]
        if len(ds) != r or len({d % t for d in ds}) != r or any(d % t == 0 for d in ds):
            raise SchemeError(f"need {r} distinct non-zero offsets mod {t}, got {ds}")
        if any((-d) % t in {e % t for e in ds} for d in ds):
            raise SchemeError(f"offsets {ds} produce anti-parallel arcs mod {t}")
        h = OrientedGraph(t, circulant_arcs(t, ds))
    else:
        raise SchemeError(f"unknown y-scheme {scheme!r}")
    if h.n != t:
        raise SchemeError(f"scheme has {h.n} vertices, |Y| = {t}")
    if any(d != r for d in h.in_degrees()):
        raise SchemeError(f"scheme is not in-degree {r}-regular")
    return h


def _assemble(n, s, h):
    arcs = [(x, y) for x in range(s) for y in range(s, n)]
    arcs += [(s + a, s + b) for a, b in h.arcs]
    return OrientedGraph(n, arcs)


def construct_lower(params=None, *, n=None, k=None, split=None, y_scheme="circulant"):
    """The lower-bound digraph: complete ``X -> Y``, empty ``D[X]``, in-regular ``D[Y]``."""
    if params is None:
        params = ConstructionParams(n, k, split, y_scheme)
    n, k = params.n, params.k
    if k is None or n is None or k < 1:
        raise DomainError("n and k >= 1 are required")
    if params.split is None:
        if n < 3 * k + 1:
            raise DomainError(f"construction needs n >= 3k+1 = {3 * k + 1}, got n={n}")
        s = default_split(n, k)
    else:
        s = params.split
        if s < 0 or n - s < 2 * k - 1:
            raise DomainError(f"split {s} leaves |Y| = {n - s} < 2k-1 = {2 * k - 1}")
    return _assemble(n, s, scheme_graph(params.y_scheme, n - s, k - 1))


def extremal_member(n, k, y_scheme="circulant", split=None):
    """A member of the extremal family for ``k = 2`` (n >= 16) or ``k = 3`` (n >= 40)."""
    threshold = {2: 16, 3: 40}.get(k)
    if threshold is None:
        raise DomainError(f"extremal families are characterised for k in {{2,3}}, got {k}")
    if n < threshold:
        raise DomainError(f"characterisation for k={k} needs n >= {threshold}, got {n}")
    window = extremal_window(n, k)
    s = min(window) if split is None else split
    if s not in window:
        raise DomainError(f"|X| = {s} outside the extremal window {sorted(window)}")
    return _assemble(n, s, scheme_graph(y_scheme, n - s, k - 1))


# -- fixtures ---------------------------------------------------------------------

_H1_NAMES = ("w1", "w2", "u1", "u2", "u3", "v")
_H1_ARCS = [("u1", "v"), ("u2", "v"), ("u3", "v")] + [
    (w, u) for w in ("w1", "w2") for u in ("u1", "u2", "u3")
]
_TRIANGLE = [("u1", "u2"), ("u2", "u3"), ("u3", "u1")]

_H_SPECS = {
    "H1": (_H1_NAMES, _H1_ARCS),
    "H2": (_H1_NAMES, _H1_ARCS + _TRIANGLE),
    "H3": (_H1_NAMES, _H1_ARCS + _TRIANGLE),
    "H4": (_H1_NAMES + ("u4", "w3"), _H1_ARCS + _TRIANGLE + [("u4", "v"), ("w3", "u4")]),
    "H5": (_H1_NAMES + ("u4",), _H1_ARCS + _TRIANGLE + [("u4", "v"), ("u3", "u4")]),
    "H6": (_H1_NAMES + ("u4",), _H1_ARCS + _TRIANGLE + [("u4", "v"), ("w2", "u4")]),
    "H7": (_H1_NAMES + ("w3",), _H1_ARCS + _TRIANGLE + [("w3", "w1"), ("w1", "v")]),
}

FIXTURE_IDS = tuple(_H_SPECS) + ("star:K", "subdiv:K")


def _parse_fixture_id(fid, k):
    if fid in _H_SPECS:
        return fid, None
    kind, _, rest = str(fid).partition(":")
    aliases = {"star": "star", "InStar": "star", "subdiv": "subdiv", "InStarSubdivision": "subdiv"}
    if kind not in aliases:
        raise UnknownFixture(fid)
    if rest:
        try:
            k = int(rest)
        except ValueError:
            raise UnknownFixture(fid) from None
    if k is None or k < 1:
        raise UnknownFixture(f"{fid} needs a size k >= 1")
    return aliases[kind], k


def fixture_labels(fid, k=None):
    """Vertex names of a fixture, indexed by vertex number."""
    kind, k = _parse_fixture_id(fid, k)
    if kind in _H_SPECS:
        return _H_SPECS[kind][0]
    spokes = tuple(f"u{i + 1}" for i in range(k))
    if kind == "star":
        return spokes + ("v",)
    return spokes + ("v",) + tuple(f"w{i + 1}" for i in range(k))


def fixture(fid, k=None):
    kind, k = _parse_fixture_id(fid, k)
    if kind in _H_SPECS:
        names, arcs = _H_SPECS[kind]
        index = {name: i for i, name in enumerate(names)}
        return OrientedGraph(len(names), [(index[a], index[b]) for a, b in arcs])
    arcs = [(i, k) for i in range(k)]
    if kind == "star":
        return OrientedGraph(k + 1, arcs)
    arcs += [(k + 1 + i, i) for i in range(k)]
    return OrientedGraph(2 * k + 1, arcs)
