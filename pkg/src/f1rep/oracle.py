"""Exact linear algebra ground truth for the combinatorial results.

Everything here is exact: rationals use :class:`fractions.Fraction` (rank by
fraction-free Bareiss elimination on integers), prime fields use integers
mod ``p``. No floating point is involved anywhere.

The Hom system is assembled straight from the representation tables, not
from the tensor product, so it stays an independent check of
:mod:`f1rep.hom`. Unknowns are the coefficients ``f[v, w]`` for colour-matched
basis pairs. For every base arrow ``alpha``, ``v`` over its source and
``w'`` over its target, commutativity of the square gives one row
``f[V_alpha(v), w'] - f[v, W_alpha^-1(w')] = 0`` where missing terms are zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .covering import covering_mask
from .errors import F1RepError, FieldError, ShapeError
from .hom import basis_matrices
from .tensor import TensorWinding, tensor
from .winding import Winding, _same_base, require_indecomposable, winding_to_rep

log = logging.getLogger(__name__)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Rationals:
    name = "q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "Rationals()"

    def convert(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, x: Fraction) -> Fraction:
        return 1 / x


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def convert(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        return pow(x, -1, self.p)


QQ = Rationals()
DEFAULT_FIELDS = (QQ, PrimeField(2), PrimeField(3), PrimeField(5))


def parse_field(descriptor) -> Rationals | PrimeField:
    """``"q"`` for the rationals, ``"fp:<prime>"`` for a prime field."""
    if isinstance(descriptor, (Rationals, PrimeField)):
        return descriptor
    s = str(descriptor).strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise FieldError(f"malformed field descriptor {descriptor!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown field {descriptor!r}; use 'q' or 'fp:<prime>'")


class ExactMatrix:
    """A dense matrix over :data:`QQ` or a :class:`PrimeField`."""

    def __init__(self, rows: Sequence[Sequence], field=QQ, ncols: int | None = None):
        self.field = parse_field(field)
        self.rows = [[self.field.convert(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ShapeError("ragged matrix rows")

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=QQ) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], field, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({self.rows!r}, {self.field!r})"

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
        return ExactMatrix(out, self.field, other.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def rank(self) -> int:
        if isinstance(self.field, Rationals):
            return _bareiss_rank(_integer_rows(self.rows))
        return len(self.rref()[1])

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form and pivot columns."""
        f = self.field
        a = [list(r) for r in self.rows]
        p = getattr(f, "p", None)
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = f.inv(a[r][c])
            a[r] = [x * inv for x in a[r]]
            if p:
                a[r] = [x % p for x in a[r]]
            for i in range(self.nrows):
                if i != r and a[i][c] != 0:
                    k = a[i][c]
                    a[i] = [x - k * y for x, y in zip(a[i], a[r])]
                    if p:
                        a[i] = [x % p for x in a[i]]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return a, pivots

    def nullspace(self) -> list[list]:
        """A basis of the right kernel, one vector per free column."""
        a, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        zero, one = self.field.convert(0), self.field.convert(1)
        basis = []
        for fc in free:
            vec = [zero] * self.ncols
            vec[fc] = one
            for row, pc in enumerate(pivots):
                vec[pc] = -a[row][fc]
                if isinstance(self.field, PrimeField):
                    vec[pc] %= self.field.p
            basis.append(vec)
        return basis


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
    return out


def _bareiss_rank(a: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in a]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if a[r][c] < 0:
            # negating a row is a row operation on the input, so divisibility survives
            a[r] = [-x for x in a[r]]
        pr = a[r]
        d = pr[c]
        for i in range(r + 1, nrows):
            ri = a[i]
            f = ri[c]
            if f == 0:
                if d != prev:
                    a[i] = [d * x // prev for x in ri]
                continue
            # exact division by the previous pivot is guaranteed (Sylvester)
            a[i] = [(d * x - f * y) // prev for x, y in zip(ri, pr)]
        prev = d
        r += 1
        if r == nrows:
            break
    return r


@dataclass(frozen=True)
class HomSystem:
    """Unknowns ``(v, w)`` and sparse rows ``{unknown index: +-1}``."""

    unknowns: tuple[tuple[str, str], ...]
    rows: tuple[dict[int, int], ...]

    def matrix(self, field=QQ) -> ExactMatrix:
        n = len(self.unknowns)
        dense = []
        for r in self.rows:
            row = [0] * n
            for c, x in r.items():
                row[c] = x
            dense.append(row)
        return ExactMatrix(dense, field, n)


def hom_system(v: Winding, w: Winding) -> HomSystem:
    _same_base(v, w)
    rv, rw = winding_to_rep(v), winding_to_rep(w)
    unknowns = [(x, y) for i in v.base.vertices for x in rv.spaces[i] for y in rw.spaces[i]]
    col = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for alpha in v.base.arrows:
        fv, fw = rv.maps[alpha.id], rw.maps[alpha.id]
        pre_w = {y: x for x, y in fw.items() if y is not None}
        for x in rv.spaces[alpha.source]:
            for y2 in rw.spaces[alpha.target]:
                row: dict[int, int] = {}
                if fv[x] is not None:
                    k = col[(fv[x], y2)]
                    row[k] = row.get(k, 0) + 1
                if y2 in pre_w:
                    k = col[(x, pre_w[y2])]
                    row[k] = row.get(k, 0) - 1
                row = {k: c for k, c in row.items() if c}
                if row:
                    rows.append(row)
    return HomSystem(tuple(unknowns), tuple(rows))


def hom_nullspace_dim(v: Winding, w: Winding, field="q") -> int:
    system = hom_system(v, w)
    return len(system.unknowns) - system.matrix(parse_field(field)).rank()


def rank_across_fields(v: Winding, w: Winding, fields=DEFAULT_FIELDS) -> dict[str, int]:
    """Rank of the Hom system per field; disagreements are logged, never hidden."""
    system = hom_system(v, w)
    ranks = {f.name: system.matrix(f).rank() for f in map(parse_field, fields)}
    if len(set(ranks.values())) > 1:
        log.warning("Hom system rank depends on the field: %s", ranks)
    return ranks


def zero_class(v: Winding, w: Winding) -> set[tuple[str, str]]:
    """Pairs whose coefficient vanishes on every intertwiner (over the rationals)."""
    system = hom_system(v, w)
    basis = system.matrix(QQ).nullspace()
    return {u for k, u in enumerate(system.unknowns) if all(vec[k] == 0 for vec in basis)}


def arrow_matrix(rep_spaces, rep_map, source: str, target: str, field=QQ) -> ExactMatrix:
    """Matrix of one arrow action in the distinguished bases (columns = source)."""
    src, tgt = rep_spaces[source], rep_spaces[target]
    pos = {y: k for k, y in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for c, x in enumerate(src):
        y = rep_map[x]
        if y is not None:
            rows[pos[y]][c] = 1
    return ExactMatrix(rows, field, len(src))


@dataclass(frozen=True)
class IntertwinerCheck:
    ok: bool
    failed_arrow: str | None = None

    def __bool__(self):
        return self.ok


def verify_intertwiner(v: Winding, w: Winding, blocks: Mapping[str, object], field="q") -> IntertwinerCheck:
    """Check ``W_alpha * block[s(alpha)] == block[t(alpha)] * V_alpha`` for every arrow.

    ``blocks[i]`` has shape ``|W_i| x |V_i|`` (an :class:`ExactMatrix` or
    nested lists); a mismatched shape raises :class:`ShapeError`.
    """
    _same_base(v, w)
    f = parse_field(field)
    rv, rw = winding_to_rep(v), winding_to_rep(w)
    mats = {}
    for i in v.base.vertices:
        b = blocks[i]
        m = b if isinstance(b, ExactMatrix) else ExactMatrix(b, f, len(rv.spaces[i]))
        if m.shape != (len(rw.spaces[i]), len(rv.spaces[i])):
            raise ShapeError(f"block at {i} has shape {m.shape}, expected {(len(rw.spaces[i]), len(rv.spaces[i]))}")
        mats[i] = m if m.field == f else ExactMatrix(m.rows, f, m.ncols)
    for alpha in v.base.arrows:
        va = arrow_matrix(rv.spaces, rv.maps[alpha.id], alpha.source, alpha.target, f)
        wa = arrow_matrix(rw.spaces, rw.maps[alpha.id], alpha.source, alpha.target, f)
        if wa @ mats[alpha.source] != mats[alpha.target] @ va:
            return IntertwinerCheck(False, alpha.id)
    return IntertwinerCheck(True)


def basis_rank(v: Winding, w: Winding, field="q") -> int:
    """Rank of the hom basis elements flattened to coefficient vectors."""
    system = hom_system(v, w)
    col = {u: k for k, u in enumerate(system.unknowns)}
    rows = []
    for el in basis_matrices(v, w):
        row = [0] * len(col)
        for p in el.pairs:
            row[col[p]] = 1
        rows.append(row)
    if not rows:
        return 0
    return ExactMatrix(rows, parse_field(field), len(col)).rank()


# nilpotency via boolean matrix powers (row bitsets)


def _bool_mul(a: list[int], b: list[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc |= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return out


def _has_diagonal(a: list[int]) -> bool:
    return any((row >> i) & 1 for i, row in enumerate(a))


def nilpotency_check(v: Winding) -> bool:
    """Is the sum of all non-identity basis endomorphisms nilpotent?

    The entries are nonnegative, so the ``n``-th power (``n`` = number of
    basis vectors) vanishes iff its zero pattern does; powers are taken on
    0/1 patterns by square-and-multiply, stopping early on a zero square
    or on a positive diagonal entry (which rules out nilpotency).
    """
    require_indecomposable(v)
    n = v.n_vertices
    pos = v.total.vertex_index
    t = tensor(v, v)
    diag = t.diagonal_component()
    rows = [0] * n
    for el in basis_matrices(v, v, t):
        if el.component == diag:
            continue
        for x, y in el.pairs:
            rows[pos[x]] |= 1 << pos[y]
    power = None
    square = rows
    e = n
    while e:
        if not any(square):
            return True
        if _has_diagonal(square):
            return False
        if e & 1:
            power = square if power is None else _bool_mul(power, square)
        e >>= 1
        if e:
            square = _bool_mul(square, square)
    return not any(power)


def component_matrix(t: TensorWinding, idx: int) -> list[list[int]]:
    """Adjacency matrix of the graph on V with one edge ``v -> w`` per pair of the component."""
    n = t.left.n_vertices
    a = [[0] * n for _ in range(n)]
    verts = t.component_vertices(idx)
    for x, y in zip(t.pi1[verts].tolist(), t.pi2[verts].tolist()):
        a[x][y] += 1
    return a


def _require_covering_square(t: TensorWinding, idx: int) -> None:
    if t.left != t.right:
        raise F1RepError("needs the tensor square of one winding")
    require_indecomposable(t.left)
    if not covering_mask(t)[idx]:
        raise F1RepError(f"component {idx} is not a covering component")


def regularity_check(t: TensorWinding, idx: int) -> int:
    """Common row and column sum of the component's matrix (the covering degree)."""
    _require_covering_square(t, idx)
    a = component_matrix(t, idx)
    sums = {sum(r) for r in a} | {sum(c) for c in zip(*a)}
    if len(sums) != 1:
        raise AssertionError(f"covering component {idx} gives a non-regular graph: sums {sorted(sums)}")
    return sums.pop()


# characteristic polynomials; coefficient lists are lowest degree first


def charpoly(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """``det(xI - A)`` by Faddeev-LeVerrier, exact over the rationals."""
    n = len(a)
    A = [[Fraction(x) for x in r] for r in a]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(A[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        tr = sum(sum(A[i][l] * m[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _trim(a)
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _trim(a)
    return a


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    return [c / a[-1] for c in a] if a else a


def squarefree_degree(p: list[Fraction]) -> int:
    """Number of distinct roots over an algebraic closure."""
    p = _trim(p)
    if len(p) <= 1:
        return 0
    dp = [i * c for i, c in enumerate(p)][1:]
    return (len(p) - 1) - (len(poly_gcd(p, dp)) - 1)


def spectral_witness(t: TensorWinding, idx: int) -> int:
    """Number of distinct eigenvalues of the component's matrix.

    At least two eigenvalues on a covering component other than the
    diagonal certify that the complex scalar extension decomposes.
    """
    _require_covering_square(t, idx)
    return squarefree_degree(charpoly(component_matrix(t, idx)))


def spectral_witness_blocks(t: TensorWinding, idx: int) -> list[int]:
    """Distinct-eigenvalue counts per connected piece of the component's graph.

    Pieces are taken in the undirected sense and listed by smallest vertex;
    the matrix is block diagonal over them.
    """
    _require_covering_square(t, idx)
    a = component_matrix(t, idx)
    n = len(a)
    seen = [False] * n
    used = [any(a[i]) or any(r[i] for r in a) for i in range(n)]
    result = []
    for s in range(n):
        if seen[s] or not used[s]:
            continue
        block, stack = [], [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            block.append(x)
            for y in range(n):
                if (a[x][y] or a[y][x]) and not seen[y]:
                    seen[y] = True
                    stack.append(y)
        block.sort()
        sub = [[a[i][j] for j in block] for i in block]
        result.append(squarefree_degree(charpoly(sub)))
    return result
