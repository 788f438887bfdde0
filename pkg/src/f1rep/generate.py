"""Seeded random windings for property tests, benchmarks and the CLI."""

from __future__ import annotations

import random

from .winding import Quiver, Winding


def _vertex_ids(base: Quiver, sizes) -> list[tuple[str, str]]:
    if len(base.vertices) == 1:
        return [(str(k), base.vertices[0]) for k in range(sizes[0])]
    return [(f"{i}.{k}", i) for i, n in zip(base.vertices, sizes) for k in range(n)]


def _sizes(base: Quiver, vertices) -> list[int]:
    if isinstance(vertices, int):
        return [vertices] * len(base.vertices)
    sizes = [vertices[i] for i in base.vertices] if isinstance(vertices, dict) else list(vertices)
    if len(sizes) != len(base.vertices) or any(n < 0 for n in sizes):
        raise ValueError("need one non-negative fibre size per base vertex")
    return sizes


def random_winding(base: Quiver, vertices, density: float = 0.5, seed: int = 0) -> Winding:
    """Per base arrow, a uniform partial matching between the source and target fibres.

    ``vertices`` is one fibre size for every base vertex, or a per-vertex list
    or dict. The matching is a uniformly random injection of a random subset
    of the smaller fibre, of size ``Binomial(min fibre size, density)``.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    sizes = _sizes(base, vertices)
    vs = _vertex_ids(base, sizes)
    fibre = {i: [x for x, c in vs if c == i] for i in base.vertices}
    arrows = []
    for alpha in base.arrows:
        src, tgt = fibre[alpha.source], fibre[alpha.target]
        k = sum(rng.random() < density for _ in range(min(len(src), len(tgt))))
        for n, (x, y) in enumerate(zip(rng.sample(src, k), rng.sample(tgt, k))):
            arrows.append((f"{alpha.id}{n}", x, y, alpha.id))
    w = Winding.build(base, vs, arrows)
    w.require_valid()
    return w


def random_connected_winding(base: Quiver, n_arrows: int, seed: int = 0, n_vertices: int | None = None) -> Winding:
    """A connected winding over a one-vertex base with exactly ``n_arrows`` arrows.

    A random spanning tree is grown first (each new vertex attached through a
    free colour slot of an existing one), then the remaining arrows fill free
    (source, target) slots. ``n_vertices`` defaults to ``n_arrows // 2 + 1``
    so the arrow count is comfortably realisable.
    """
    if len(base.vertices) != 1 or not base.arrows:
        raise ValueError("connected generator needs a one-vertex base with at least one loop")
    rng = random.Random(seed)
    colors = [a.id for a in base.arrows]
    n = n_vertices if n_vertices is not None else n_arrows // 2 + 1
    if n < 1 or n_arrows < n - 1 or n_arrows > n * len(colors):
        raise ValueError(f"cannot build a connected winding with {n} vertices and {n_arrows} arrows")
    free_out = {c: set(range(n)) for c in colors}
    free_in = {c: set(range(n)) for c in colors}
    arrows = []

    def add(c, s, t):
        free_out[c].discard(s)
        free_in[c].discard(t)
        arrows.append((f"e{len(arrows)}", str(s), str(t), c))

    order = list(range(n))
    rng.shuffle(order)
    placed = [order[0]]
    for x in order[1:]:
        while True:
            y = rng.choice(placed)
            c = rng.choice(colors)
            # attach x below or above y, whichever slot is free
            options = []
            if y in free_out[c] and x in free_in[c]:
                options.append((y, x))
            if x in free_out[c] and y in free_in[c]:
                options.append((x, y))
            if options:
                add(c, *rng.choice(options))
                break
        placed.append(x)
    while len(arrows) < n_arrows:
        c = rng.choice(colors)
        if not free_out[c]:
            continue
        s = rng.choice(sorted(free_out[c]))
        t = rng.choice(sorted(free_in[c]))
        add(c, s, t)
    w = Winding.build(base, [(str(k), base.vertices[0]) for k in range(n)], arrows)
    w.require_valid()
    return w


def cyclic_lift(w: Winding, degree: int, twist: dict[str, int] | None = None) -> Winding:
    """The ``degree``-sheeted cyclic cover of ``w`` with arrow ``a`` shifting sheets by ``twist[a]``.

    With every twist zero this is a disjoint union of copies; a lift of a
    connected winding whose twists generate ``Z/degree`` is connected and
    never absolutely indecomposable when ``degree >= 2``.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    twist = twist or {}
    vs = [(f"{x}#{k}", w.vertex_color[x]) for k in range(degree) for x in w.total.vertices]
    arrows = []
    for k in range(degree):
        for a in w.total.arrows:
            j = (k + twist.get(a.id, 0)) % degree
            arrows.append((f"{a.id}#{k}", f"{a.source}#{k}", f"{a.target}#{j}", w.arrow_color[a.id]))
    return Winding.build(w.base, vs, arrows)
