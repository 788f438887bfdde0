"""Graphviz DOT rendering of windings and tensor products."""

from __future__ import annotations

import json

import numpy as np

from .covering import covering_mask
from .hom import admissible_mask
from .tensor import TensorWinding
from .winding import Winding

# by base-arrow declaration order; the first two match the blue/red convention
PALETTE = ("#5c5cd6", "#d65c5c", "#3a9e5c", "#c99a2e", "#8e4fb5", "#2e9fb3", "#b5547a", "#6b6b6b")


def color_of(k: int) -> str:
    return PALETTE[k % len(PALETTE)]


def _q(s: str) -> str:
    # JSON string escaping is a valid DOT quoted string
    return json.dumps(s)


def _node_lines(w: Winding, ids, indent="  ") -> list[str]:
    return [f"{indent}{_q(x)} [label={_q(f'{x} : {w.vertex_color[x]}')}];" for x in ids]


def _edge_lines(w: Winding, arrows, indent="  ") -> list[str]:
    out = []
    for a in arrows:
        k = w.base.arrow_index[w.arrow_color[a.id]]
        out.append(f"{indent}{_q(a.source)} -> {_q(a.target)} [label={_q(a.id)}, color={_q(color_of(k))}];")
    return out


def winding_dot(w: Winding, name: str = "winding") -> str:
    lines = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    lines += _node_lines(w, w.total.vertices)
    lines += _edge_lines(w, w.total.arrows)
    lines.append("}")
    return "\n".join(lines) + "\n"


def tensor_dot(t: TensorWinding, name: str = "tensor", annotate: bool = True) -> str:
    """One cluster per component; labels report admissible/covering status when ``annotate``."""
    w = t.winding
    adm = admissible_mask(t) if annotate else None
    cov = covering_mask(t) if annotate else None
    lines = [f"digraph {_q(name)} {{", "  node [shape=ellipse];"]
    arrows_of = np.full(t.n_arrows, -1, dtype=np.int64)
    if t.n_arrows:
        arrows_of = t.comp[t.src]
    for c in range(t.ncomp):
        label = f"component {c}"
        if annotate:
            status = [s for s, on in (("admissible", adm[c]), ("covering", cov[c])) if on]
            label += " (" + (", ".join(status) if status else "neither") + ")"
        lines.append(f"  subgraph {_q(f'cluster_{c}')} {{")
        lines.append(f"    label={_q(label)};")
        ids = [w.total.vertices[x] for x in t.component_vertices(c).tolist()]
        lines += _node_lines(w, ids, "    ")
        lines += _edge_lines(w, [w.total.arrows[e] for e in np.flatnonzero(arrows_of == c).tolist()], "    ")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, name: str | None = None, annotate: bool = True) -> str:
    if isinstance(obj, TensorWinding):
        return tensor_dot(obj, name or "tensor", annotate)
    return winding_dot(obj, name or "winding")
