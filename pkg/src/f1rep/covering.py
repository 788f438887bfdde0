"""Covering components of ``V (x) W`` and the absolute indecomposability test.

A component is covering when both projections are covering maps. The
primary detector is local: at every pair ``(v, w)`` of the component, ``v``
and ``w`` must have exactly the same outgoing and incoming colours. Two
slower characterisations are kept as cross-checks: the component and its
image under the braiding are both admissible, and (for the tensor square of
an indecomposable winding) the component is admissible and ``pi1`` is
surjective on vertices.

An indecomposable winding is absolutely indecomposable exactly when its
tensor square has a single covering component, the diagonal. The whole test
is one pass over the tensor square, so O(m^2) in the number of arrows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecomposableError, F1RepError
from .hom import admissibility, admissible_mask
from .tensor import TensorWinding, tau_component, tensor
from .winding import Winding, connected_components, is_indecomposable, require_indecomposable

METHODS = ("local-biconditional", "admissible-pair", "surjectivity-criterion")


@dataclass(frozen=True)
class CoveringReport:
    component: int
    is_covering: bool
    degree_pi1: int | None
    degree_pi2: int | None
    method: str = "local-biconditional"


def covering_mask(t: TensorWinding) -> np.ndarray:
    first, _ = t.local_flags
    return np.all(first < 0, axis=0)


def _degrees(t: TensorWinding, proj: np.ndarray, n: int, mask: np.ndarray) -> dict[int, int]:
    """Fibre size of ``proj`` over the smallest vertex of each covering component.

    Fibre sizes must be constant over the image; a violation means the local
    detector accepted something that is not a covering.
    """
    sel = mask[t.comp]
    keys = t.comp[sel] * max(n, 1) + proj[sel]
    uniq, counts = np.unique(keys, return_counts=True)
    comps = uniq // max(n, 1)
    result = {}
    if not len(uniq):
        return result
    starts = np.flatnonzero(np.r_[True, comps[1:] != comps[:-1]])
    ends = np.r_[starts[1:], len(uniq)]
    for s, e in zip(starts.tolist(), ends.tolist()):
        k = int(counts[s])
        if not np.all(counts[s:e] == k):
            raise AssertionError(f"covering component {int(comps[s])} has non-constant fibres")
        result[int(comps[s])] = k
    return result


def _report(t: TensorWinding, idx: int, covering: bool, method: str) -> CoveringReport:
    if not covering:
        return CoveringReport(idx, False, None, None, method)
    mask = np.zeros(t.ncomp, dtype=bool)
    mask[idx] = True
    d1 = _degrees(t, t.pi1, t.left.n_vertices, mask)[idx]
    d2 = _degrees(t, t.pi2, t.right.n_vertices, mask)[idx]
    return CoveringReport(idx, True, d1, d2, method)


def is_covering_local(t: TensorWinding, idx: int) -> CoveringReport:
    if not 0 <= idx < t.ncomp:
        raise IndexError(f"component index {idx} out of range (0..{t.ncomp - 1})")
    return _report(t, idx, bool(covering_mask(t)[idx]), METHODS[0])


def is_covering_via_tau(t: TensorWinding, idx: int) -> bool:
    """Both the component and its braided image are admissible."""
    if not admissibility(t, idx).admissible:
        return False
    tt, j = tau_component(t, idx)
    return admissibility(tt, j).admissible


def _require_square(t: TensorWinding) -> None:
    if t.left != t.right:
        raise F1RepError("surjectivity criterion needs a tensor square")
    if not is_indecomposable(t.left):
        raise DecomposableError([c.vertices for c in connected_components(t.left)])


def is_covering_surjectivity(t: TensorWinding, idx: int) -> bool:
    """Admissible and ``pi1`` onto; valid only for squares of indecomposables."""
    _require_square(t)
    if not admissibility(t, idx).admissible:
        return False
    image = np.unique(t.pi1[t.component_vertices(idx)])
    return len(image) == t.left.n_vertices


def _cross_check(t: TensorWinding, idx: int, local: bool, square: bool) -> None:
    via_tau = is_covering_via_tau(t, idx)
    if via_tau != local:
        raise AssertionError(f"component {idx}: local detector says {local}, braiding detector {via_tau}")
    if square:
        surj = is_covering_surjectivity(t, idx)
        if surj != local:
            raise AssertionError(f"component {idx}: local detector says {local}, surjectivity {surj}")


def covering_components(
    v: Winding,
    w: Winding,
    method: str = "local-biconditional",
    cross_check: bool = False,
    t: TensorWinding | None = None,
) -> list[CoveringReport]:
    """One report per component of ``v (x) w``; degrees by fibre counting."""
    if method not in METHODS:
        raise ValueError(f"unknown covering method {method!r}; choose from {METHODS}")
    t = tensor(v, w) if t is None else t
    square = v == w and v.n_vertices > 0 and is_indecomposable(v)
    if method == "surjectivity-criterion" and not square:
        _require_square(t)
    local = covering_mask(t)
    if method == "local-biconditional":
        flags = local
    elif method == "admissible-pair":
        flags = np.array([is_covering_via_tau(t, c) for c in range(t.ncomp)], dtype=bool)
    else:
        flags = np.array([is_covering_surjectivity(t, c) for c in range(t.ncomp)], dtype=bool)
    if cross_check:
        for c in range(t.ncomp):
            _cross_check(t, c, bool(local[c]), square)
    d1 = _degrees(t, t.pi1, v.n_vertices, flags)
    d2 = _degrees(t, t.pi2, w.n_vertices, flags)
    return [
        CoveringReport(c, bool(flags[c]), d1.get(c), d2.get(c), method)
        for c in range(t.ncomp)
    ]


def count_covering(t: TensorWinding) -> int:
    return int(covering_mask(t).sum())


def absolutely_indecomposable(v: Winding, cross_check: bool = False, t: TensorWinding | None = None) -> bool:
    """Exactly one covering component in the tensor square, and it is the diagonal."""
    require_indecomposable(v)
    t = tensor(v, v) if t is None else t
    mask = covering_mask(t)
    diag = t.diagonal_component()
    if not mask[diag]:
        raise AssertionError("the diagonal component must be covering")
    if cross_check:
        for c in range(t.ncomp):
            _cross_check(t, c, bool(mask[c]), True)
        # admissibility of the diagonal is implied; assert it explicitly
        assert admissible_mask(t)[diag]
    return int(mask.sum()) == 1
