"""Admissible components of ``V (x) W`` and the basis they give of Hom(V^K, W^K).

A component reflects successors when every arrow leaving ``w`` has a
same-coloured partner leaving ``v`` at each of its pairs ``(v, w)``, and
induces predecessors when every arrow entering ``v`` has a partner entering
``w``. Admissible components are exactly the ones satisfying both; each one
yields the 0/1 intertwiner whose support is its vertex-pair set, and these
intertwiners form a basis over every field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import MorphismError
from .tensor import TensorWinding, tensor
from .winding import Winding, WindingMorphism, is_indecomposable, restrict

CHECK_NAMES = {
    kernels.REFLECTS: "reflects_successors",
    kernels.INDUCES: "induces_predecessors",
    kernels.TAU_REFLECTS: "tau_reflects_successors",
    kernels.TAU_INDUCES: "tau_induces_predecessors",
}


@dataclass(frozen=True)
class Witness:
    """First failure of one check inside a component, in scan order.

    ``side`` names the factor (``left`` or ``right``) that lacks an arrow of
    colour ``base_arrow`` at ``pair``; ``count`` is the total number of
    failing (pair, base arrow) incidences of this check in the component.
    """

    check: str
    pair: tuple[str, str]
    base_arrow: str
    side: str
    count: int


@dataclass(frozen=True)
class AdmissibilityReport:
    component: int
    reflects_successors: bool
    induces_predecessors: bool
    admissible: bool
    witnesses: tuple[Witness, ...] = ()


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _witness(t: TensorWinding, check: int, first: int, count: int) -> Witness:
    v, w = int(t.pi1[first]), int(t.pi2[first])
    li, ri = t.left.color_index, t.right.color_index
    ov, iv = int(li.out_mask[v]), int(li.in_mask[v])
    ow, iw = int(ri.out_mask[w]), int(ri.in_mask[w])
    diff, side = {
        kernels.REFLECTS: (ow & ~ov, "left"),
        kernels.INDUCES: (iv & ~iw, "right"),
        kernels.TAU_REFLECTS: (ov & ~ow, "right"),
        kernels.TAU_INDUCES: (iw & ~iv, "left"),
    }[check]
    alpha = t.left.base.arrows[_lowest_bit(diff)].id
    return Witness(CHECK_NAMES[check], t.pair(first), alpha, side, count)


def admissibility(t: TensorWinding, idx: int) -> AdmissibilityReport:
    if not 0 <= idx < t.ncomp:
        raise IndexError(f"component index {idx} out of range (0..{t.ncomp - 1})")
    first, count = t.local_flags
    witnesses = tuple(
        _witness(t, k, int(first[k, idx]), int(count[k, idx]))
        for k in (kernels.REFLECTS, kernels.INDUCES)
        if first[k, idx] >= 0
    )
    refl = first[kernels.REFLECTS, idx] < 0
    ind = first[kernels.INDUCES, idx] < 0
    return AdmissibilityReport(idx, bool(refl), bool(ind), bool(refl and ind), witnesses)


def admissible_mask(t: TensorWinding) -> np.ndarray:
    first, _ = t.local_flags
    return (first[kernels.REFLECTS] < 0) & (first[kernels.INDUCES] < 0)


def admissible_components(v: Winding, w: Winding, t: TensorWinding | None = None) -> list[AdmissibilityReport]:
    t = tensor(v, w) if t is None else t
    return [admissibility(t, int(c)) for c in np.flatnonzero(admissible_mask(t))]


def hom_dimension(v: Winding, w: Winding) -> int:
    """dim Hom(V^K, W^K), the same for every field K."""
    return int(admissible_mask(tensor(v, w)).sum())


@dataclass(frozen=True)
class BasisElement:
    """The intertwiner summing ``b_{v,w}`` over one admissible component.

    Stored sparsely as the vertex-pair set; :meth:`dense_blocks` expands it to
    one 0/1 block per base vertex, of shape ``|fibre_W(i)| x |fibre_V(i)|``
    with rows and columns in fibre (declaration) order.
    """

    component: int
    pairs: tuple[tuple[str, str], ...]
    left: Winding
    right: Winding

    def dense_blocks(self) -> dict[str, list[list[int]]]:
        v, w = self.left, self.right
        blocks = {}
        col_pos, row_pos = {}, {}
        for k, i in enumerate(v.base.vertices):
            cols = [v.total.vertices[x] for x in v.fibers[k]]
            rows = [w.total.vertices[y] for y in w.fibers[k]]
            col_pos.update((x, (i, n)) for n, x in enumerate(cols))
            row_pos.update((y, n) for n, y in enumerate(rows))
            blocks[i] = [[0] * len(cols) for _ in rows]
        for x, y in self.pairs:
            i, c = col_pos[x]
            blocks[i][row_pos[y]][c] = 1
        return blocks


def basis_matrices(v: Winding, w: Winding, t: TensorWinding | None = None) -> list[BasisElement]:
    t = tensor(v, w) if t is None else t
    return [
        BasisElement(int(c), tuple(t.component_pairs(int(c))), v, w)
        for c in np.flatnonzero(admissible_mask(t))
    ]


def from_morphism(v: Winding, w: Winding, m: WindingMorphism, t: TensorWinding | None = None) -> int:
    """Index of the admissible component ``{(x, phi(x)) | x in F}``.

    The morphism's closure and isomorphism conditions are checked here; a
    morphism with disconnected image must be split by the caller.
    """
    if m.source != v or m.target != w:
        raise MorphismError("morphism does not go between the given windings")
    m.check()
    if not m.F:
        raise MorphismError("the zero morphism has no component")
    if not is_indecomposable(restrict(w, m.U)):
        raise MorphismError("image of the morphism is disconnected; split it into connected pieces first")
    t = tensor(v, w) if t is None else t
    expected = {t.index(x, y) for x, y in m.phi.items()}
    c = int(t.comp[next(iter(expected))])
    got = set(t.component_vertices(c).tolist())
    assert got == expected, "component of a morphism must be its graph"
    assert admissibility(t, c).admissible, "component of a morphism must be admissible"
    return c
