"""Strings, nice grading sequences and obstructions to finite nice length.

A string is stored in traversal order: ``letters[0]`` is applied first, so
the string written ``a_n ... a_1`` has ``letters == (a_1, ..., a_n)``. The
composition ``C D`` (``D`` first, then ``C``) is :func:`compose(C, D)`.

An obstruction is a pair of strings ``E`` (not a cycle) and ``D`` with
``D E`` a cycle and ``colour(D) == colour(E) ** s``. Any such pair forces
every nice sequence to give ``s(E)`` and ``t(E)`` the same grades, so the
representation cannot have finite nice length.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .covering import covering_mask
from .errors import F1RepError, StringError
from .tensor import TensorWinding, tensor
from .winding import Winding, require_indecomposable

Grading = Mapping[str, int]


@dataclass(frozen=True)
class SignedLetter:
    arrow: str
    inverse: bool = False

    def __str__(self):
        return self.arrow + ("^-" if self.inverse else "")

    def inverted(self) -> "SignedLetter":
        return SignedLetter(self.arrow, not self.inverse)


def letter_source(w: Winding, x: SignedLetter) -> str:
    a = w.total.arrow(x.arrow)
    return a.target if x.inverse else a.source


def letter_target(w: Winding, x: SignedLetter) -> str:
    a = w.total.arrow(x.arrow)
    return a.source if x.inverse else a.target


@dataclass(frozen=True)
class StringWord:
    letters: tuple[SignedLetter, ...]
    source: str
    target: str

    @classmethod
    def of(cls, w: Winding, letters: Sequence[SignedLetter | tuple[str, bool] | str]) -> "StringWord":
        """Build and check a string; bare ids are forward letters."""
        norm = []
        for x in letters:
            if isinstance(x, str):
                x = SignedLetter(x)
            elif not isinstance(x, SignedLetter):
                x = SignedLetter(*x)
            if x.arrow not in w.total.arrow_index:
                raise StringError(f"unknown arrow {x.arrow!r}")
            norm.append(x)
        if not norm:
            raise StringError("strings are non-empty")
        for i in range(1, len(norm)):
            if letter_source(w, norm[i]) != letter_target(w, norm[i - 1]):
                raise StringError(f"letters {norm[i - 1]} and {norm[i]} are not composable")
        return cls(tuple(norm), letter_source(w, norm[0]), letter_target(w, norm[-1]))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        # written right to left, first letter last
        return " ".join(str(x) for x in reversed(self.letters))

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def inverse(self) -> "StringWord":
        return StringWord(tuple(x.inverted() for x in reversed(self.letters)), self.target, self.source)

    def power(self, k: int) -> "StringWord":
        if not self.is_cycle:
            raise StringError("only cycles have powers")
        if k < 1:
            raise StringError("powers start at 1")
        return StringWord(self.letters * k, self.source, self.target)


def compose(c: StringWord, d: StringWord) -> StringWord:
    """The string ``c d``: first ``d``, then ``c``."""
    if d.target != c.source:
        raise StringError(f"cannot compose: t(d) = {d.target} but s(c) = {c.source}")
    return StringWord(d.letters + c.letters, d.source, c.target)


ColorLetter = tuple[str, bool]


def color_word(w: Winding, sw: StringWord) -> tuple[ColorLetter, ...]:
    """Letterwise colouring, in traversal order; inverse letters stay inverse."""
    out = []
    for x in sw.letters:
        if x.arrow not in w.arrow_color:
            raise StringError(f"unknown arrow {x.arrow!r}")
        out.append((w.arrow_color[x.arrow], x.inverse))
    return tuple(out)


# gradings


@dataclass(frozen=True)
class NiceCheck:
    ok: bool
    arrows: tuple[str, str] | None = None
    step: int | None = None

    def __bool__(self):
        return self.ok


def _profile(seq: Sequence[Grading], x: str) -> tuple[int, ...]:
    return tuple(g[x] for g in seq)


def _check_total(w: Winding, g: Grading) -> None:
    missing = [x for x in w.total.vertices if x not in g]
    if missing:
        raise F1RepError(f"grading is not total; missing {missing}")


def is_nice_extension(w: Winding, prefix: Sequence[Grading], nxt: Grading) -> NiceCheck:
    """Is ``nxt`` nice relative to ``prefix``? On failure, name a violating arrow pair.

    Arrows of equal colour whose endpoints agree under every grading of the
    prefix must see the same difference ``nxt(s) - nxt(t)``.
    """
    for g in (*prefix, nxt):
        _check_total(w, g)
    groups: dict[tuple, tuple[str, int]] = {}
    for a in w.total.arrows:
        key = (w.arrow_color[a.id], _profile(prefix, a.source), _profile(prefix, a.target))
        diff = nxt[a.source] - nxt[a.target]
        seen = groups.setdefault(key, (a.id, diff))
        if seen[1] != diff:
            return NiceCheck(False, (seen[0], a.id))
    return NiceCheck(True)


def is_nice_sequence(w: Winding, seq: Sequence[Grading]) -> NiceCheck:
    for i in range(len(seq)):
        r = is_nice_extension(w, seq[:i], seq[i])
        if not r:
            return NiceCheck(False, r.arrows, i)
    return NiceCheck(True)


@dataclass(frozen=True)
class Separation:
    ok: bool
    pair: tuple[str, str] | None = None

    def __bool__(self):
        return self.ok


def distinguishes_vertices(w: Winding, seq: Sequence[Grading]) -> Separation:
    """Does some grading separate every pair of distinct vertices? Else name a colliding pair."""
    seen: dict[tuple[int, ...], str] = {}
    for x in w.total.vertices:
        prof = _profile(seq, x)
        if prof in seen:
            return Separation(False, (seen[prof], x))
        seen[prof] = x
    return Separation(True)


# obstructions


@dataclass(frozen=True)
class Obstruction:
    E: StringWord
    D: StringWord
    s: int

    def cycle(self) -> StringWord:
        """The cycle ``D E``."""
        return compose(self.D, self.E)


def verify_obstruction(v: Winding, o: Obstruction) -> bool:
    """Replay every obstruction condition from scratch."""
    try:
        E = StringWord.of(v, o.E.letters)
        D = StringWord.of(v, o.D.letters)
    except StringError:
        return False
    if (E.source, E.target, D.source, D.target) != (o.E.source, o.E.target, o.D.source, o.D.target):
        return False
    if E.is_cycle or o.s < 1:
        return False
    if D.target != E.source or D.source != E.target:
        return False
    return color_word(v, D) == color_word(v, E) * o.s


def _step(v: Winding, x: int, color: int, inverse: bool) -> int:
    """Arrow index leaving ``x`` along a coloured letter, or -1."""
    idx = v.color_index
    return int(idx.inc_table[x, color] if inverse else idx.out_table[x, color])


def _bfs_string(v: Winding, start: str, goal: str) -> StringWord:
    """Shortest undirected path as a string; ties go to the smallest arrow (forward first)."""
    n = v.n_vertices
    s0, g0 = v.total.vertex_index[start], v.total.vertex_index[goal]
    adj: list[list[tuple[int, bool, int]]] = [[] for _ in range(n)]
    for k, (s, t) in enumerate(zip(v.src.tolist(), v.tgt.tolist())):
        adj[s].append((k, False, t))
        adj[t].append((k, True, s))
    for lst in adj:
        lst.sort()
    prev: list[tuple[int, int, bool] | None] = [None] * n
    seen = [False] * n
    seen[s0] = True
    queue = deque([s0])
    while queue:
        x = queue.popleft()
        if x == g0:
            break
        for k, inv, y in adj[x]:
            if not seen[y]:
                seen[y] = True
                prev[y] = (x, k, inv)
                queue.append(y)
    if not seen[g0]:
        raise F1RepError(f"no path from {start} to {goal}")
    letters = []
    x = g0
    while x != s0:
        px, k, inv = prev[x]
        letters.append(SignedLetter(v.total.arrows[k].id, inv))
        x = px
    letters.reverse()
    return StringWord.of(v, letters)


def _obstruction_degree_one(v: Winding, t: TensorWinding, c: int) -> Obstruction:
    verts = t.component_vertices(c)
    sigma = np.empty(v.n_vertices, dtype=np.int64)
    sigma[t.pi1[verts]] = t.pi2[verts]
    moved = np.flatnonzero(sigma != np.arange(v.n_vertices))
    x = int(moved[0])
    ids = v.total.vertices
    E = _bfs_string(v, ids[x], ids[sigma[x]])

    def image(sw: StringWord) -> StringWord:
        out = []
        for letter in sw.letters:
            a = v.total.arrow_index[letter.arrow]
            # sigma carries an arrow to the equally coloured arrow at the image endpoint
            anchor = v.tgt[a] if letter.inverse else v.src[a]
            b = _step(v, int(sigma[anchor]), int(v.acol[a]), letter.inverse)
            if b < 0:
                raise AssertionError("automorphism does not preserve arrows")
            out.append(SignedLetter(v.total.arrows[b].id, letter.inverse))
        return StringWord.of(v, out)

    n = 1
    y = int(sigma[x])
    while y != x:
        y = int(sigma[y])
        n += 1
        if n > v.n_vertices:
            raise AssertionError("orbit longer than the vertex count")
    pieces = []
    cur = E
    for _ in range(n - 1):
        cur = image(cur)
        pieces.append(cur)
    D = pieces[0]
    for piece in pieces[1:]:
        D = compose(piece, D)
    return Obstruction(E, D, n - 1)


def _obstruction_higher_degree(v: Winding, t: TensorWinding, c: int) -> Obstruction:
    verts = t.component_vertices(c).tolist()
    lifts: dict[int, list[int]] = {}
    for u in verts:
        lifts.setdefault(int(t.pi1[u]), []).append(u)
    x = min(lifts)
    u0, u1 = lifts[x][0], lifts[x][1]
    degree = len(lifts[x])

    # shortest path from u0 to u1 inside the component, smallest tensor arrow first
    arrows = t.component_arrows(c).tolist()
    adj: dict[int, list[tuple[int, bool, int]]] = {u: [] for u in verts}
    for e in arrows:
        adj[int(t.src[e])].append((e, False, int(t.tgt[e])))
        adj[int(t.tgt[e])].append((e, True, int(t.src[e])))
    for lst in adj.values():
        lst.sort()
    prev: dict[int, tuple[int, int, bool]] = {}
    seen = {u0}
    queue = deque([u0])
    while queue:
        u = queue.popleft()
        if u == u1:
            break
        for e, inv, y in adj[u]:
            if y not in seen:
                seen.add(y)
                prev[y] = (u, e, inv)
                queue.append(y)
    path = []
    u = u1
    while u != u0:
        pu, e, inv = prev[u]
        path.append((e, inv))
        u = pu
    path.reverse()

    ids = v.total.arrows
    E = StringWord.of(v, [SignedLetter(ids[t.api2[e]].id, inv) for e, inv in path])
    loop = [(int(t.api1[e]), inv) for e, inv in path]

    # lift the loop repeatedly along pi1 starting at u1 until it closes at u0
    cur_w = int(t.pi2[u1])
    target_w = int(t.pi2[u0])
    lifted: list[SignedLetter] = []
    for n in range(1, degree + 1):
        for a, inv in loop:
            b = _step(v, cur_w, int(v.acol[a]), inv)
            if b < 0:
                raise AssertionError("covering projection failed to lift a letter")
            lifted.append(SignedLetter(ids[b].id, inv))
            cur_w = int(v.src[b] if inv else v.tgt[b])
        if cur_w == target_w:
            return Obstruction(E, StringWord.of(v, lifted), n)
    raise AssertionError("loop did not return to the starting lift within the fibre size")


def covering_obstruction(v: Winding, t: TensorWinding | None = None) -> Obstruction | None:
    """Obstruction read off a non-diagonal covering component, if there is one."""
    require_indecomposable(v)
    t = tensor(v, v) if t is None else t
    mask = covering_mask(t)
    diag = t.diagonal_component()
    others = [int(c) for c in np.flatnonzero(mask) if c != diag]
    if not others:
        return None
    c = others[0]
    sizes = np.unique(t.pi1[t.component_vertices(c)], return_counts=True)[1]
    if int(sizes[0]) == 1:
        return _obstruction_degree_one(v, t, c)
    return _obstruction_higher_degree(v, t, c)


def _walk(v: Winding, x: int, word: Sequence[tuple[int, bool]]) -> tuple[int, list[int]] | None:
    arrows = []
    for color, inv in word:
        b = _step(v, x, color, inv)
        if b < 0:
            return None
        arrows.append(b)
        x = int(v.src[b] if inv else v.tgt[b])
    return x, arrows


def search_obstruction(v: Winding, max_length: int = 4) -> Obstruction | None:
    """Direct search for an obstruction with ``len(E) <= max_length``.

    A coloured word determines at most one string from a given start, so for
    each candidate ``E`` the completion ``D`` is found by walking
    ``colour(E)`` from ``t(E)`` until it returns to ``s(E)``. Candidates are
    tried by length, then start vertex, then arrow order with forward
    letters before inverse ones.
    """
    v.require_valid()
    n = v.n_vertices
    adj: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for k, (s, t) in enumerate(zip(v.src.tolist(), v.tgt.tolist())):
        adj[s].append((k, False))
        adj[t].append((k, True))
    for lst in adj:
        lst.sort()
    ids = v.total.arrows

    def extend(start, x, path, length):
        if len(path) == length:
            yield x, path
            return
        for k, inv in adj[x]:
            if path and path[-1] == (k, not inv):
                continue
            y = int(v.src[k] if inv else v.tgt[k])
            yield from extend(start, y, path + [(k, inv)], length)

    for length in range(1, max_length + 1):
        for start in range(n):
            for end, path in extend(start, start, [], length):
                if end == start:
                    continue
                word = [(int(v.acol[k]), inv) for k, inv in path]
                cur = end
                d_arrows: list[tuple[int, bool]] = []
                for s in range(1, n + 1):
                    step = _walk(v, cur, word)
                    if step is None:
                        break
                    cur, arrs = step
                    d_arrows += [(b, inv) for b, (_, inv) in zip(arrs, word)]
                    if cur == start:
                        E = StringWord.of(v, [SignedLetter(ids[k].id, inv) for k, inv in path])
                        D = StringWord.of(v, [SignedLetter(ids[b].id, inv) for b, inv in d_arrows])
                        return Obstruction(E, D, s)
                    if cur == end:
                        break
    return None


def extract_obstruction(v: Winding, search_length: int = 0) -> Obstruction | None:
    """Obstruction certifying infinite nice length, or ``None``.

    By default only the covering-component construction is used, so the
    result is ``None`` exactly when ``v`` is absolutely indecomposable. With
    ``search_length > 0`` a direct string search runs when that construction
    finds nothing; this also finds obstructions on absolutely
    indecomposable windings.
    """
    o = covering_obstruction(v)
    if o is None and search_length > 0:
        o = search_obstruction(v, search_length)
    return o


def obstruction_consequence_check(v: Winding, o: Obstruction, seq: Sequence[Grading]) -> bool:
    """Replay the induction: on the cycle ``D E`` every grade repeats with period ``len(E)``.

    Returns ``True`` when all equalities hold. A ``False`` can only come from
    a bug somewhere, since the equalities are forced for nice sequences.
    """
    if not is_nice_sequence(v, seq):
        raise F1RepError("sequence is not nice")
    if not verify_obstruction(v, o):
        raise F1RepError("invalid obstruction")
    cyc = o.cycle().letters
    m, L = len(o.E), len(cyc)
    starts = [letter_source(v, x) for x in cyc]
    for g in seq:
        for k in range(L):
            if g[starts[k]] != g[starts[(k + m) % L]]:
                return False
    return True


def sample_nice_sequences(
    v: Winding, count: int, length: int = 3, low: int = -2, high: int = 2, seed: int = 0, max_tries: int = 100_000
) -> list[list[dict[str, int]]]:
    """Rejection sampler: propose integer gradings level by level, keep the nice ones."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        seq: list[dict[str, int]] = []
        while len(seq) < length:
            tries += 1
            if tries > max_tries:
                raise RuntimeError("rejection sampler exceeded its proposal budget")
            g = {x: rng.randint(low, high) for x in v.total.vertices}
            if is_nice_extension(v, seq, g):
                seq.append(g)
        out.append(seq)
    return out
