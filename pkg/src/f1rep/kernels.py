"""Kernel dispatch: compiled Cython core when built, pure Python otherwise.

Set ``F1REP_PURE_PYTHON=1`` in the environment to force the fallback.
The compiled ``component_flags`` packs arrow incidences into 64-bit masks, so
base quivers with more than 64 arrows always take the Python path.
"""

import os

from . import _pykernels

REFLECTS = _pykernels.REFLECTS
INDUCES = _pykernels.INDUCES
TAU_REFLECTS = _pykernels.TAU_REFLECTS
TAU_INDUCES = _pykernels.TAU_INDUCES

MAX_COMPILED_COLORS = 64

_compiled = None
if os.environ.get("F1REP_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def backends():
    """Names of the available kernel backends, preferred first."""
    return ["cython", "python"] if _compiled is not None else ["python"]


def _module(backend):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown kernel backend {backend!r}")


def label_components(n, src, tgt, backend=None):
    return _module(backend).label_components(n, src, tgt)


def component_flags(pi1, pi2, comp, ncomp, out_v, in_v, out_w, in_w, n_colors, backend=None):
    if n_colors > MAX_COMPILED_COLORS:
        backend = "python"
    return _module(backend).component_flags(pi1, pi2, comp, ncomp, out_v, in_v, out_w, in_w)


def use_backend(backend):
    """Make ``backend`` the process default; returns the previous default."""
    global BACKEND
    _module(backend)
    previous, BACKEND = BACKEND, backend
    return previous
