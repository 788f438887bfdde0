"""Pure-Python reference kernels.

Same signatures and results as the compiled ``_ckernels`` module. Inputs are
numpy integer arrays; they are converted to lists once so the inner loops run
on plain Python ints. Masks may be arbitrary-size Python ints here, so this
backend also serves base quivers with more than 64 arrows.
"""

import numpy as np

# Check rows in the arrays returned by component_flags.
REFLECTS, INDUCES, TAU_REFLECTS, TAU_INDUCES = range(4)


def label_components(n, src, tgt):
    """Weakly connected components of a graph on ``range(n)``.

    Returns ``(labels, count)``. Labels are numbered by first occurrence in
    vertex order, so component 0 contains vertex 0, and so on.
    """
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(src.tolist(), tgt.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            # smaller root wins; keeps trees shallow enough in practice
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    labels = [0] * n
    relabel = {}
    for x in range(n):
        r = find(x)
        lab = relabel.get(r)
        if lab is None:
            lab = relabel[r] = len(relabel)
        labels[x] = lab
    return np.asarray(labels, dtype=np.int64), len(relabel)


def _popcount(x):
    return bin(x).count("1")


def component_flags(pi1, pi2, comp, ncomp, out_v, in_v, out_w, in_w):
    """Scan every vertex pair once and aggregate local failures per component.

    ``out_v[v]`` is the bitmask of base arrows leaving total vertex ``v``
    (likewise ``in_v``, ``out_w``, ``in_w``). Returns ``(first, count)``,
    both of shape ``(4, ncomp)``: the first failing tensor vertex (or -1) and
    the number of failing (pair, base arrow) incidences for each check.
    """
    first = [[-1] * ncomp for _ in range(4)]
    count = [[0] * ncomp for _ in range(4)]
    ov = [int(x) for x in out_v]
    iv = [int(x) for x in in_v]
    ow = [int(x) for x in out_w]
    iw = [int(x) for x in in_w]
    for t, (v, w, c) in enumerate(zip(pi1.tolist(), pi2.tolist(), comp.tolist())):
        a, b, x, y = ov[v], iv[v], ow[w], iw[w]
        if a == x and b == y:
            continue
        fails = (x & ~a, b & ~y, a & ~x, y & ~b)
        for k in range(4):
            f = fails[k]
            if f:
                if first[k][c] < 0:
                    first[k][c] = t
                count[k][c] += _popcount(f)
    return np.asarray(first, dtype=np.int64).reshape(4, ncomp), np.asarray(
        count, dtype=np.int64
    ).reshape(4, ncomp)
