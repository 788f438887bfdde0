"""Quivers, windings (coefficient quivers) and F1-representation tables.

A :class:`Winding` is a quiver ``total`` together with a colouring
``total -> base`` that is a quiver morphism such that two distinct arrows of
the same colour never share a source or a target. Windings are the same data
as quiver representations over F1; :func:`rep_to_winding` and
:func:`winding_to_rep` convert between the two encodings.

Identifiers are opaque strings. Internally every winding also carries dense
integer arrays (declaration order) for the kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import kernels
from .errors import (
    BaseMismatchError,
    DecomposableError,
    F1LinearityError,
    MorphismError,
    StructuralError,
    WindingViolationError,
)


class Arrow(NamedTuple):
    id: str
    source: str
    target: str


def _distinct(ids, what):
    seen = set()
    dups = []
    for x in ids:
        if x in seen:
            dups.append(x)
        seen.add(x)
    if dups:
        raise StructuralError(f"duplicate {what} id(s): {', '.join(map(repr, dups))}")


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) for a in self.arrows))
        _distinct(self.vertices, "vertex")
        _distinct((a.id for a in self.arrows), "arrow")
        vs = set(self.vertices)
        bad = [a.id for a in self.arrows if a.source not in vs or a.target not in vs]
        if bad:
            raise StructuralError(f"arrow(s) with undeclared endpoints: {', '.join(bad)}")

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    def arrow(self, arrow_id: str) -> Arrow:
        return self.arrows[self.arrow_index[arrow_id]]


def loop_quiver(n: int, names: Iterable[str] | None = None) -> Quiver:
    """The n-loop quiver: one vertex ``*`` with ``n`` loops."""
    names = list(names) if names is not None else [f"l{i}" for i in range(n)]
    if len(names) != n:
        raise ValueError("need exactly n loop names")
    return Quiver(("*",), tuple(Arrow(x, "*", "*") for x in names))


@dataclass(frozen=True)
class Violation:
    kind: str
    arrows: tuple[str, ...]
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True, eq=False)
class Winding:
    """A colouring ``total -> base``; see the module docstring.

    Construction only checks that identifiers resolve. The winding condition
    itself is reported by :func:`validate_winding` and enforced lazily by the
    operations that need it.
    """

    base: Quiver
    total: Quiver
    vertex_color: Mapping[str, str]
    arrow_color: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertex_color", dict(self.vertex_color))
        object.__setattr__(self, "arrow_color", dict(self.arrow_color))
        bv, ba = self.base.vertex_index, self.base.arrow_index
        missing = [v for v in self.total.vertices if v not in self.vertex_color]
        missing += [a.id for a in self.total.arrows if a.id not in self.arrow_color]
        if missing:
            raise StructuralError(f"uncoloured total element(s): {', '.join(missing)}")
        tv, ta = self.total.vertex_index, self.total.arrow_index
        extra = [k for k in self.vertex_color if k not in tv]
        extra += [k for k in self.arrow_color if k not in ta]
        if extra:
            raise StructuralError(f"colour map keys not in the total quiver: {', '.join(extra)}")
        bad = [f"{v}->{c}" for v, c in self.vertex_color.items() if c not in bv]
        bad += [f"{a}->{c}" for a, c in self.arrow_color.items() if c not in ba]
        if bad:
            raise StructuralError(f"colours not in the base quiver: {', '.join(bad)}")

    @classmethod
    def build(cls, base: Quiver, vertices, arrows=()) -> "Winding":
        """Build from ``(id, colour)`` vertex pairs and ``(id, src, tgt, colour)`` arrows."""
        vertices = list(vertices)
        arrows = list(arrows)
        total = Quiver(tuple(v for v, _ in vertices), tuple((a, s, t) for a, s, t, _ in arrows))
        return cls(base, total, {v: c for v, c in vertices}, {a: c for a, _, _, c in arrows})

    @classmethod
    def empty(cls, base: Quiver) -> "Winding":
        return cls(base, Quiver((), ()), {}, {})

    def __eq__(self, other):
        if not isinstance(other, Winding):
            return NotImplemented
        return (
            self.base == other.base
            and self.total == other.total
            and self.vertex_color == other.vertex_color
            and self.arrow_color == other.arrow_color
        )

    __hash__ = None

    def __repr__(self):
        return f"Winding({self.n_vertices} vertices, {self.n_arrows} arrows over {len(self.base.arrows)} colours)"

    @property
    def n_vertices(self) -> int:
        return len(self.total.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.total.arrows)

    @property
    def n_colors(self) -> int:
        return len(self.base.arrows)

    # dense views, all in declaration order

    @cached_property
    def vcol(self) -> np.ndarray:
        bv = self.base.vertex_index
        return np.fromiter((bv[self.vertex_color[v]] for v in self.total.vertices), np.int64, self.n_vertices)

    @cached_property
    def src(self) -> np.ndarray:
        tv = self.total.vertex_index
        return np.fromiter((tv[a.source] for a in self.total.arrows), np.int64, self.n_arrows)

    @cached_property
    def tgt(self) -> np.ndarray:
        tv = self.total.vertex_index
        return np.fromiter((tv[a.target] for a in self.total.arrows), np.int64, self.n_arrows)

    @cached_property
    def acol(self) -> np.ndarray:
        ba = self.base.arrow_index
        return np.fromiter((ba[self.arrow_color[a.id]] for a in self.total.arrows), np.int64, self.n_arrows)

    @cached_property
    def fibers(self) -> tuple[np.ndarray, ...]:
        """Total vertex indices above each base vertex."""
        order = np.argsort(self.vcol, kind="stable")
        bounds = np.searchsorted(self.vcol[order], np.arange(len(self.base.vertices) + 1))
        return tuple(order[bounds[i] : bounds[i + 1]] for i in range(len(self.base.vertices)))

    @cached_property
    def arrows_by_color(self) -> tuple[np.ndarray, ...]:
        order = np.argsort(self.acol, kind="stable")
        bounds = np.searchsorted(self.acol[order], np.arange(self.n_colors + 1))
        return tuple(order[bounds[i] : bounds[i + 1]] for i in range(self.n_colors))

    @cached_property
    def report(self) -> ValidationReport:
        return validate_winding(self)

    def require_valid(self) -> "Winding":
        if not self.report.ok:
            raise WindingViolationError(self.report)
        return self

    @cached_property
    def color_index(self) -> "ColorIndex":
        return build_color_index(self)


def validate_winding(w: Winding) -> ValidationReport:
    """Check the morphism and winding conditions, collecting every violation.

    Two arrows of one colour with equal source *and* target are reported once
    as ``duplicate-arrow``; otherwise a shared source or target is reported
    as ``shared-source`` / ``shared-target`` against the first arrow seen.
    """
    base = w.base
    out: list[Violation] = []
    by_src: dict[tuple[str, str], Arrow] = {}
    by_tgt: dict[tuple[str, str], Arrow] = {}
    for a in w.total.arrows:
        color = w.arrow_color[a.id]
        alpha = base.arrow(color)
        if w.vertex_color[a.source] != alpha.source:
            out.append(
                Violation(
                    "color-mismatch",
                    (a.id,),
                    f"arrow {a.id} coloured {color} starts at {a.source} of colour "
                    f"{w.vertex_color[a.source]}, but {color} starts at {alpha.source}",
                )
            )
        if w.vertex_color[a.target] != alpha.target:
            out.append(
                Violation(
                    "color-mismatch",
                    (a.id,),
                    f"arrow {a.id} coloured {color} ends at {a.target} of colour "
                    f"{w.vertex_color[a.target]}, but {color} ends at {alpha.target}",
                )
            )
        prev = by_src.setdefault((color, a.source), a)
        duplicate = False
        if prev is not a:
            if prev.target == a.target:
                duplicate = True
                out.append(
                    Violation(
                        "duplicate-arrow",
                        (prev.id, a.id),
                        f"arrows {prev.id} and {a.id} are parallel copies {a.source}->{a.target} of colour {color}",
                    )
                )
            else:
                out.append(
                    Violation(
                        "shared-source",
                        (prev.id, a.id),
                        f"arrows {prev.id} and {a.id} of colour {color} share source {a.source}",
                    )
                )
        prev = by_tgt.setdefault((color, a.target), a)
        if prev is not a and not duplicate:
            out.append(
                Violation(
                    "shared-target",
                    (prev.id, a.id),
                    f"arrows {prev.id} and {a.id} of colour {color} share target {a.target}",
                )
            )
    return ValidationReport(tuple(out))


def _mask_array(n_colors, n):
    if n_colors <= kernels.MAX_COMPILED_COLORS:
        return np.zeros(n, dtype=np.uint64)
    arr = np.empty(n, dtype=object)
    arr[:] = 0
    return arr


@dataclass(frozen=True, eq=False)
class ColorIndex:
    """Constant-time successor/predecessor lookup by colour.

    ``out_table[v, alpha]`` is the arrow of colour ``alpha`` leaving total
    vertex ``v`` (``-1`` if none); ``inc_table`` likewise for arrows ending
    at ``v``. ``out_mask[v]`` has bit ``alpha`` set iff that arrow exists.
    """

    winding: Winding
    out_table: np.ndarray
    inc_table: np.ndarray
    out_mask: np.ndarray
    in_mask: np.ndarray

    def out(self, vertex: str, color: str) -> str | None:
        w = self.winding
        a = self.out_table[w.total.vertex_index[vertex], w.base.arrow_index[color]]
        return None if a < 0 else w.total.arrows[a].id

    def inc(self, vertex: str, color: str) -> str | None:
        w = self.winding
        a = self.inc_table[w.total.vertex_index[vertex], w.base.arrow_index[color]]
        return None if a < 0 else w.total.arrows[a].id


def build_color_index(w: Winding) -> ColorIndex:
    w.require_valid()
    n, k = w.n_vertices, w.n_colors
    out_table = np.full((n, k), -1, dtype=np.int64)
    inc_table = np.full((n, k), -1, dtype=np.int64)
    idx = np.arange(w.n_arrows, dtype=np.int64)
    out_table[w.src, w.acol] = idx
    inc_table[w.tgt, w.acol] = idx
    out_mask = _mask_array(k, n)
    in_mask = _mask_array(k, n)
    if k <= kernels.MAX_COMPILED_COLORS:
        bits = np.left_shift(np.uint64(1), w.acol.astype(np.uint64))
        np.bitwise_or.at(out_mask, w.src, bits)
        np.bitwise_or.at(in_mask, w.tgt, bits)
    else:
        for s, t, c in zip(w.src.tolist(), w.tgt.tolist(), w.acol.tolist()):
            out_mask[s] |= 1 << c
            in_mask[t] |= 1 << c
    return ColorIndex(w, out_table, inc_table, out_mask, in_mask)


@dataclass(frozen=True)
class RepTable:
    """An F1-representation: a basis per base vertex and partial maps per base arrow.

    ``maps[alpha][x]`` is the image of basis label ``x`` or ``None`` for zero.
    Missing entries are read as zero and filled in on construction. Basis
    labels must be distinct across all base vertices; they become the total
    vertex ids of the coefficient quiver.
    """

    base: Quiver
    spaces: Mapping[str, tuple[str, ...]]
    maps: Mapping[str, Mapping[str, str | None]] = field(default_factory=dict)

    def __post_init__(self):
        spaces = {i: tuple(self.spaces.get(i, ())) for i in self.base.vertices}
        extra = set(self.spaces) - set(spaces)
        if extra:
            raise StructuralError(f"spaces at unknown base vertices: {sorted(extra)}")
        _distinct((x for xs in spaces.values() for x in xs), "basis label")
        extra = set(self.maps) - set(self.base.arrow_index)
        if extra:
            raise StructuralError(f"maps for unknown base arrows: {sorted(extra)}")
        maps = {}
        for alpha in self.base.arrows:
            given = dict(self.maps.get(alpha.id, {}))
            dom, cod = set(spaces[alpha.source]), set(spaces[alpha.target])
            bad = [x for x in given if x not in dom]
            bad += [y for y in given.values() if y is not None and y not in cod]
            if bad:
                raise StructuralError(f"map {alpha.id} references labels outside its (co)domain: {bad}")
            maps[alpha.id] = {x: given.get(x) for x in spaces[alpha.source]}
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "maps", maps)

    def check_linearity(self) -> None:
        """Raise :class:`F1LinearityError` unless every map is injective off its kernel."""
        for alpha, f in self.maps.items():
            seen: dict[str, str] = {}
            for x, y in f.items():
                if y is None:
                    continue
                if y in seen:
                    raise F1LinearityError(f"map {alpha} sends both {seen[y]} and {x} to {y}")
                seen[y] = x


def rep_to_winding(r: RepTable) -> Winding:
    """Coefficient quiver of ``r``; the arrow for ``alpha`` at ``x`` is named ``alpha:x``."""
    r.check_linearity()
    vertices = [(x, i) for i in r.base.vertices for x in r.spaces[i]]
    arrows = [
        (f"{alpha.id}:{x}", x, y, alpha.id)
        for alpha in r.base.arrows
        for x, y in r.maps[alpha.id].items()
        if y is not None
    ]
    w = Winding.build(r.base, vertices, arrows)
    assert w.report.ok, w.report
    return w


def winding_to_rep(w: Winding) -> RepTable:
    w.require_valid()
    spaces = {i: tuple(w.total.vertices[x] for x in w.fibers[k]) for k, i in enumerate(w.base.vertices)}
    maps: dict[str, dict[str, str | None]] = {a.id: {} for a in w.base.arrows}
    for a in w.total.arrows:
        maps[w.arrow_color[a.id]][a.source] = a.target
    return RepTable(w.base, spaces, maps)


def _same_base(w1: Winding, w2: Winding) -> None:
    if w1.base != w2.base:
        raise BaseMismatchError("windings live over different base quivers")


def direct_sum(w1: Winding, w2: Winding) -> Winding:
    """Disjoint union; ids of the summands get prefixes ``1:`` and ``2:``."""
    _same_base(w1, w2)
    vertices, arrows = [], []
    for tag, w in (("1:", w1), ("2:", w2)):
        vertices += [(tag + v, w.vertex_color[v]) for v in w.total.vertices]
        arrows += [(tag + a.id, tag + a.source, tag + a.target, w.arrow_color[a.id]) for a in w.total.arrows]
    return Winding.build(w1.base, vertices, arrows)


@dataclass(frozen=True)
class WindingComponent:
    """One connected component; ids are those of the parent winding."""

    winding: Winding
    vertices: tuple[str, ...]
    arrows: tuple[str, ...]


def restrict(w: Winding, vertices: Iterable[str]) -> Winding:
    """Full subquiver on ``vertices`` (kept in the parent's declaration order)."""
    keep = set(vertices)
    vs = [(v, w.vertex_color[v]) for v in w.total.vertices if v in keep]
    arrs = [
        (a.id, a.source, a.target, w.arrow_color[a.id])
        for a in w.total.arrows
        if a.source in keep and a.target in keep
    ]
    return Winding.build(w.base, vs, arrs)


def component_labels(w: Winding) -> tuple[np.ndarray, int]:
    return kernels.label_components(w.n_vertices, w.src, w.tgt)


def connected_components(w: Winding) -> list[WindingComponent]:
    labels, count = component_labels(w)
    groups: list[list[int]] = [[] for _ in range(count)]
    for x, c in enumerate(labels.tolist()):
        groups[c].append(x)
    result = []
    for g in groups:
        sub = restrict(w, (w.total.vertices[x] for x in g))
        result.append(WindingComponent(sub, sub.total.vertices, tuple(a.id for a in sub.total.arrows)))
    return result


def is_indecomposable(w: Winding) -> bool:
    if w.n_vertices == 0:
        raise DecomposableError([])
    return component_labels(w)[1] == 1


def require_indecomposable(w: Winding) -> None:
    w.require_valid()
    if not is_indecomposable(w):
        raise DecomposableError([c.vertices for c in connected_components(w)])


@dataclass(frozen=True)
class WindingMorphism:
    """A triple ``(F, U, phi)`` between two windings.

    ``F`` spans a predecessor-closed full subquiver of ``source``, ``U`` a
    successor-closed full subquiver of ``target``, and ``phi`` maps the
    vertices of ``F`` bijectively onto ``U`` as a colour-preserving quiver
    isomorphism. The arrow part of ``phi`` is determined by the vertex part
    (windings have no parallel arrows of one colour) and is derived by
    :meth:`arrow_map`.
    """

    source: Winding
    target: Winding
    F: frozenset[str]
    U: frozenset[str]
    phi: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "F", frozenset(self.F))
        object.__setattr__(self, "U", frozenset(self.U))
        object.__setattr__(self, "phi", dict(self.phi))

    @classmethod
    def identity(cls, w: Winding) -> "WindingMorphism":
        vs = frozenset(w.total.vertices)
        return cls(w, w, vs, vs, {v: v for v in w.total.vertices})

    def arrow_map(self) -> dict[str, str]:
        """Arrows of ``F`` to arrows of ``U``; raises :class:`MorphismError` if not an isomorphism."""
        self.check()
        return self._arrow_map()

    def _arrow_map(self) -> dict[str, str]:
        idx = self.target.color_index
        result = {}
        for a in self.source.total.arrows:
            if a.source in self.F and a.target in self.F:
                color = self.source.arrow_color[a.id]
                b = idx.out(self.phi[a.source], color)
                if b is None or self.target.total.arrow(b).target != self.phi[a.target]:
                    raise MorphismError(f"arrow {a.id} of F has no image of colour {color} in U")
                result[a.id] = b
        return result

    def check(self) -> None:
        v, w = self.source, self.target
        _same_base(v, w)
        v.require_valid()
        w.require_valid()
        if not self.F <= set(v.total.vertices) or not self.U <= set(w.total.vertices):
            raise MorphismError("F or U contains unknown vertices")
        if set(self.phi) != self.F:
            raise MorphismError("phi must be defined exactly on F")
        if set(self.phi.values()) != self.U or len(self.U) != len(self.F):
            raise MorphismError("phi is not a bijection onto U")
        for x, y in self.phi.items():
            if v.vertex_color[x] != w.vertex_color[y]:
                raise MorphismError(f"phi({x}) = {y} changes the vertex colour")
        for a in v.total.arrows:
            if a.target in self.F and a.source not in self.F:
                raise MorphismError(f"F is not predecessor closed: arrow {a.id} enters it from {a.source}")
        for b in w.total.arrows:
            if b.source in self.U and b.target not in self.U:
                raise MorphismError(f"U is not successor closed: arrow {b.id} leaves it to {b.target}")
        arrows = self._arrow_map()
        n_u = sum(1 for b in w.total.arrows if b.source in self.U and b.target in self.U)
        if len(arrows) != n_u:
            raise MorphismError("phi is not surjective on the arrows of U")
