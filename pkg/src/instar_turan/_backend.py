"""Kernel selection: compiled extension when importable, pure Python otherwise.

Callers go through :func:`kernels` / :func:`mask_graph` at call time so that
:func:`use_backend` (tests, benchmarks) takes effect immediately.
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active = _ckernels if _ckernels is not None else _pykernels


def available():
    return ["cython", "python"] if _ckernels is not None else ["python"]


def name():
    return "cython" if _active is _ckernels else "python"


def use_backend(which):
    """Select ``"cython"`` or ``"python"``; returns the previous name."""
    global _active
    prev = name()
    if which == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    elif which == "python":
        _active = _pykernels
    else:
        raise ValueError(f"unknown backend {which!r}")
    return prev


def kernels(n=None):
    """Kernel module able to handle order ``n``."""
    if _active is _ckernels and n is not None and n > _ckernels.MAX_ORDER:
        return _pykernels
    return _active


def mask_graph(n):
    return kernels(n).MaskGraph(n)


def mask_graph_of(g):
    """Kernel ``MaskGraph`` loaded with the arcs of an ``OrientedGraph``."""
    return kernels(g.n).MaskGraph.from_in_masks(g.n, g.in_masks)
