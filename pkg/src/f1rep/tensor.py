"""Tensor product of windings, the braiding, and the component partition.

Tensor vertices are colour-matched pairs ``(v, w)``, numbered in
lexicographic order of the dense indices of ``v`` then ``w``; the index of a
pair is ``start[v] + rank[w]`` where ``rank[w]`` is the position of ``w``
inside its fibre. Tensor arrows are enumerated per base arrow as all pairs
of equally coloured factor arrows, which keeps construction at
O(m_V * m_W) without scanning the full product. Components are numbered by
their smallest vertex pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .winding import Winding, _same_base


def _layout(wv: Winding, ww: Winding):
    nb = len(wv.base.vertices)
    size_w = np.array([len(f) for f in ww.fibers], dtype=np.int64)
    rank_w = np.empty(ww.n_vertices, dtype=np.int64)
    for f in ww.fibers:
        rank_w[f] = np.arange(len(f), dtype=np.int64)
    counts = size_w[wv.vcol] if wv.n_vertices else np.zeros(0, dtype=np.int64)
    start = np.zeros(wv.n_vertices, dtype=np.int64)
    if wv.n_vertices:
        start[1:] = np.cumsum(counts)[:-1]
    total = int(counts.sum())
    pi1 = np.repeat(np.arange(wv.n_vertices, dtype=np.int64), counts)
    flat_w = np.concatenate(ww.fibers) if nb else np.zeros(0, dtype=np.int64)
    fiber_off = np.zeros(nb + 1, dtype=np.int64)
    fiber_off[1:] = np.cumsum(size_w)
    offset_in_block = np.arange(total, dtype=np.int64) - start[pi1]
    pi2 = flat_w[fiber_off[wv.vcol[pi1]] + offset_in_block].astype(np.int64)
    return start, rank_w, pi1, pi2


@dataclass(frozen=True, eq=False)
class TensorWinding:
    """The winding ``left (x) right`` with its projections and components.

    Vertex arrays ``pi1``/``pi2`` hold factor vertex indices per tensor
    vertex; arrow arrays ``api1``/``api2`` factor arrow indices per tensor
    arrow, with ``acol``, ``src`` and ``tgt`` the colour and endpoints.
    ``comp[t]`` is the component of tensor vertex ``t``.
    """

    left: Winding
    right: Winding
    start: np.ndarray
    rank: np.ndarray
    pi1: np.ndarray
    pi2: np.ndarray
    api1: np.ndarray
    api2: np.ndarray
    acol: np.ndarray
    src: np.ndarray
    tgt: np.ndarray
    comp: np.ndarray
    ncomp: int
    backend: str | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.pi1)

    @property
    def n_arrows(self) -> int:
        return len(self.api1)

    def index(self, v: str, w: str) -> int:
        """Tensor vertex index of the pair ``(v, w)``."""
        i = self.left.total.vertex_index[v]
        j = self.right.total.vertex_index[w]
        if self.left.vcol[i] != self.right.vcol[j]:
            raise KeyError(f"({v}, {w}) is not a colour-matched pair")
        return int(self.start[i] + self.rank[j])

    def pair(self, t: int) -> tuple[str, str]:
        return (self.left.total.vertices[self.pi1[t]], self.right.total.vertices[self.pi2[t]])

    def arrow_pair(self, e: int) -> tuple[str, str]:
        return (self.left.total.arrows[self.api1[e]].id, self.right.total.arrows[self.api2[e]].id)

    @cached_property
    def local_flags(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-component ``(first, count)`` failure arrays of the four local checks.

        Rows are indexed by :data:`kernels.REFLECTS`, :data:`kernels.INDUCES`,
        :data:`kernels.TAU_REFLECTS` and :data:`kernels.TAU_INDUCES`.
        """
        li, ri = self.left.color_index, self.right.color_index
        return kernels.component_flags(
            self.pi1, self.pi2, self.comp, self.ncomp,
            li.out_mask, li.in_mask, ri.out_mask, ri.in_mask,
            self.left.n_colors, backend=self.backend,
        )

    @cached_property
    def _groups(self) -> list[np.ndarray]:
        order = np.argsort(self.comp, kind="stable")
        bounds = np.searchsorted(self.comp[order], np.arange(self.ncomp + 1))
        return [order[bounds[c] : bounds[c + 1]] for c in range(self.ncomp)]

    def component_vertices(self, idx: int) -> np.ndarray:
        """Tensor vertex indices of component ``idx``, ascending."""
        if not 0 <= idx < self.ncomp:
            raise IndexError(f"component index {idx} out of range (0..{self.ncomp - 1})")
        return self._groups[idx]

    def component_arrows(self, idx: int) -> np.ndarray:
        if not 0 <= idx < self.ncomp:
            raise IndexError(f"component index {idx} out of range (0..{self.ncomp - 1})")
        return np.flatnonzero(self.comp[self.src] == idx)

    def component_pairs(self, idx: int) -> list[tuple[str, str]]:
        return [self.pair(t) for t in self.component_vertices(idx).tolist()]

    def component_sizes(self) -> np.ndarray:
        return np.bincount(self.comp, minlength=self.ncomp)

    def diagonal_component(self) -> int | None:
        """Component containing ``(v0, v0)`` when both factors are the same winding."""
        if self.left is not self.right and self.left != self.right:
            return None
        if self.left.n_vertices == 0:
            return None
        return int(self.comp[self.start[0] + self.rank[0]])

    @staticmethod
    def vertex_id(v: str, w: str) -> str:
        return f"({v},{w})"

    def _sub_winding(self, vertices: np.ndarray, arrows: np.ndarray) -> Winding:
        bv = self.left.base.vertices
        ba = self.left.base.arrows
        vs = [(self.vertex_id(*self.pair(t)), bv[self.left.vcol[self.pi1[t]]]) for t in vertices.tolist()]
        arrs = []
        for e in arrows.tolist():
            a, b = self.arrow_pair(e)
            arrs.append(
                (
                    self.vertex_id(a, b),
                    self.vertex_id(*self.pair(self.src[e])),
                    self.vertex_id(*self.pair(self.tgt[e])),
                    ba[self.acol[e]].id,
                )
            )
        return Winding.build(self.left.base, vs, arrs)

    @cached_property
    def winding(self) -> Winding:
        """The tensor product as an ordinary winding with ids ``(v,w)`` / ``(a,b)``."""
        return self._sub_winding(np.arange(self.n_vertices), np.arange(self.n_arrows))

    def __eq__(self, other):
        if not isinstance(other, TensorWinding):
            return NotImplemented
        arrays = ("pi1", "pi2", "api1", "api2", "acol", "src", "tgt", "comp")
        return (
            self.left == other.left
            and self.right == other.right
            and self.ncomp == other.ncomp
            and all(np.array_equal(getattr(self, k), getattr(other, k)) for k in arrays)
        )

    __hash__ = None


def tensor(wv: Winding, ww: Winding, backend: str | None = None) -> TensorWinding:
    _same_base(wv, ww)
    wv.require_valid()
    ww.require_valid()
    start, rank, pi1, pi2 = _layout(wv, ww)
    api1, api2, acol = [], [], []
    for alpha, (A, B) in enumerate(zip(wv.arrows_by_color, ww.arrows_by_color)):
        if len(A) and len(B):
            api1.append(np.repeat(A, len(B)))
            api2.append(np.tile(B, len(A)))
            acol.append(np.full(len(A) * len(B), alpha, dtype=np.int64))
    if api1:
        api1, api2, acol = np.concatenate(api1), np.concatenate(api2), np.concatenate(acol)
    else:
        api1 = api2 = acol = np.zeros(0, dtype=np.int64)
    src = start[wv.src[api1]] + rank[ww.src[api2]]
    tgt = start[wv.tgt[api1]] + rank[ww.tgt[api2]]
    comp, ncomp = kernels.label_components(len(pi1), src, tgt, backend=backend)
    return TensorWinding(wv, ww, start, rank, pi1, pi2, api1, api2, acol, src, tgt, comp, ncomp, backend)


def _first_occurrence_relabel(labels: np.ndarray, ncomp: int) -> np.ndarray:
    if not len(labels):
        return labels
    # every label in range(ncomp) occurs, so unique() returns them in order
    _, first = np.unique(labels, return_index=True)
    mapping = np.empty(ncomp, dtype=np.int64)
    mapping[np.argsort(first)] = np.arange(ncomp, dtype=np.int64)
    return mapping[labels]


def tau(t: TensorWinding) -> TensorWinding:
    """The braiding: swap both coordinates of every vertex and arrow.

    The result is laid out in the canonical order of ``tensor(right, left)``
    and is equal to it; components map to components.
    """
    start, rank, _, _ = _layout(t.right, t.left)
    order = np.lexsort((t.pi1, t.pi2))
    inv = np.empty_like(order)
    inv[order] = np.arange(len(order), dtype=np.int64)
    pi1, pi2 = t.pi2[order], t.pi1[order]
    aorder = np.lexsort((t.api1, t.api2, t.acol))
    api1, api2, acol = t.api2[aorder], t.api1[aorder], t.acol[aorder]
    src, tgt = inv[t.src[aorder]], inv[t.tgt[aorder]]
    comp = _first_occurrence_relabel(t.comp[order], t.ncomp)
    return TensorWinding(t.right, t.left, start, rank, pi1, pi2, api1, api2, acol, src, tgt, comp, t.ncomp, t.backend)


def tau_component(t: TensorWinding, idx: int) -> tuple[TensorWinding, int]:
    """``tau(t)`` together with the index of the image of component ``idx``."""
    tt = tau(t)
    x = int(t.component_vertices(idx)[0])
    v, w = t.pair(x)
    return tt, int(tt.comp[tt.index(w, v)])


@dataclass(frozen=True)
class TensorComponent:
    index: int
    pairs: tuple[tuple[str, str], ...]
    winding: Winding


def component_of(t: TensorWinding, idx: int) -> TensorComponent:
    verts = t.component_vertices(idx)
    arrows = t.component_arrows(idx)
    return TensorComponent(idx, tuple(t.pair(x) for x in verts.tolist()), t._sub_winding(verts, arrows))
