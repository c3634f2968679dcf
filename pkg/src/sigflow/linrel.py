"""Matrices, reduced row echelon form and linear relations.

A linear relation ``L: k^m -> k^n`` is a subspace of ``k^(m+n)`` stored by
the rows of its reduced row echelon basis.  Columns ``0..m-1`` are input
coordinates and ``m..m+n-1`` output coordinates.  Because the RREF basis of
a subspace is unique, two relations are equal exactly when their bases are.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotAMap, OracleTooLarge
from .exactfield import Field, FieldElem

Row = tuple[FieldElem, ...]


class Matrix:
    """Dense matrix of field elements, stored as a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: Sequence[Sequence[FieldElem]]):
        data = tuple(tuple(r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"expected a {rows}x{cols} array")
        for r in data:
            for x in r:
                if not isinstance(x, FieldElem) or x.field != field:
                    raise FieldMismatch(f"matrix entry {x!r} is not in {field}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def _trusted(cls, field: Field, rows: int, cols: int, data) -> Matrix:
        """Skip validation; for rows produced inside this module."""
        M = cls.__new__(cls)
        M.field, M.rows, M.cols = field, rows, cols
        M.data = tuple(tuple(r) for r in data)
        return M

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        """Build from nested lists of anything ``field`` can coerce."""
        data = [[field(x) for x in r] for r in rows]
        if cols is None:
            if not data:
                raise DimensionMismatch("column count needed for a matrix with no rows")
            cols = len(data[0])
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero()
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero(), field.one()
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> FieldElem:
        i, j = ij
        return self.data[i][j]

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, list(zip(*self.data)) if self.rows else [() for _ in range(self.cols)])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        z = self.field.zero()
        out = []
        for r in self.data:
            row = []
            for j in range(other.cols):
                acc = z
                for k, x in enumerate(r):
                    if x:
                        y = other.data[k][j]
                        if y:
                            acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(self.field, self.rows, other.cols, out)

    def direct_sum(self, other: Matrix) -> Matrix:
        """Block-diagonal matrix with ``self`` top-left."""
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        z = self.field.zero()
        top = [list(r) + [z] * other.cols for r in self.data]
        bottom = [[z] * self.cols + list(r) for r in other.data]
        return Matrix(self.field, self.rows + other.rows, self.cols + other.cols, top + bottom)

    def to_lists(self) -> list[list[FieldElem]]:
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix[{self.rows}x{self.cols} over {self.field}]({body})"


def _rref_rows(rows: Iterable[Sequence[FieldElem]], ncols: int) -> tuple[list[list[FieldElem]], list[int]]:
    """Reduced row echelon form of a list of rows; returns (rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        prow = work[r]
        inv = prow[c].inverse()
        if not prow[c].is_one():
            prow = [x * inv if x else x for x in prow]
            work[r] = prow
        for i in range(len(work)):
            if i != r:
                f = work[i][c]
                if f:
                    row = work[i]
                    work[i] = [row[j] - f * prow[j] if prow[j] else row[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rref(M: Matrix) -> Matrix:
    """Unique reduced row echelon form with zero rows dropped."""
    rows, _ = _rref_rows(M.data, M.cols)
    return Matrix._trusted(M.field, len(rows), M.cols, rows)


def nullspace(M: Matrix) -> Matrix:
    """Rows spanning ``{z : M z = 0}``, one per free column."""
    rows, pivots = _rref_rows(M.data, M.cols)
    zero, one = M.field.zero(), M.field.one()
    pivset = set(pivots)
    out = []
    for f in range(M.cols):
        if f in pivset:
            continue
        z = [zero] * M.cols
        z[f] = one
        for i, pc in enumerate(pivots):
            z[pc] = -rows[i][f]
        out.append(z)
    return Matrix._trusted(M.field, len(out), M.cols, out)


class LinRel:
    """Linear relation from ``k^m`` to ``k^n`` given by a canonical basis.

    Use :func:`span` to build one from arbitrary spanning vectors.
    """

    __slots__ = ("m", "n", "basis")

    def __init__(self, m: int, n: int, basis: Matrix):
        self.m = m
        self.n = n
        self.basis = basis

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def signature(self) -> tuple[int, int]:
        return (self.m, self.n)

    def rows(self) -> tuple[Row, ...]:
        return self.basis.data

    def __rshift__(self, other: LinRel) -> LinRel:
        return rel_compose(self, other)

    def __matmul__(self, other: LinRel) -> LinRel:
        return rel_tensor(self, other)

    def dagger(self) -> LinRel:
        return rel_dagger(self)

    def __eq__(self, other):
        if not isinstance(other, LinRel):
            return NotImplemented
        return rel_equal(self, other)

    def __hash__(self):
        return hash((self.m, self.n, self.basis))

    def __repr__(self):
        return f"LinRel({self.m}->{self.n}, dim {self.dim} over {self.field}: {[list(map(str, r)) for r in self.rows()]})"


def span(m: int, n: int, rows: Iterable[Sequence], field: Field | None = None) -> LinRel:
    """Relation ``m -> n`` spanned by ``rows``.

    ``field`` may be omitted when some row holds a FieldElem; it is required
    for an empty row list.
    """
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != m + n:
            raise DimensionMismatch(f"vector of length {len(r)} in a relation {m}->{n}")
    if field is None:
        field = next((x.field for r in rows for x in r if isinstance(x, FieldElem)), None)
        if field is None:
            raise ValueError("cannot infer the field of an empty spanning set")
    rows = [[field(x) if not isinstance(x, FieldElem) else x for x in r] for r in rows]
    for r in rows:
        for x in r:
            if x.field != field:
                raise FieldMismatch(f"{x.field} vs {field}")
    basis, _ = _rref_rows(rows, m + n)
    return LinRel(m, n, Matrix._trusted(field, len(basis), m + n, basis))


def _same_field(a: LinRel, b: LinRel) -> Field:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return a.field


def _map_part(L: LinRel) -> list[Row] | None:
    """For a relation of the form ``[I | A^T]`` return its rows, else None."""
    rows = L.rows()
    if L.dim != L.m:
        return None
    for i, r in enumerate(rows):
        if not r[i].is_one() or any(r[j] for j in range(i)):
            return None
    return rows


def rel_compose(L: LinRel, L2: LinRel) -> LinRel:
    """``{(u, w) : (u, v) in L and (v, w) in L2 for some v}``."""
    if L.n != L2.m:
        raise DimensionMismatch(f"cannot compose {L.m}->{L.n} with {L2.m}->{L2.n}")
    field = _same_field(L, L2)
    p = L.n
    r1, r2 = L.dim, L2.dim
    A = L.rows()
    B = L2.rows()
    zero = field.zero()
    graph = _map_part(L2)
    if graph is not None:
        # L2 is the graph of a map: push every row of L through it
        out = []
        for r in A:
            w = [zero] * L2.n
            for i in range(p):
                vi = r[L.m + i]
                if vi:
                    w = [x + vi * y if y else x for x, y in zip(w, graph[i][p:])]
            out.append(list(r[: L.m]) + w)
        return span(L.m, L2.n, out, field)
    # columns index coefficient vectors (a, b) with sum a_i v_i = sum b_j v'_j
    mid = [[A[i][L.m + k] for i in range(r1)] + [-B[j][k] for j in range(r2)] for k in range(p)]
    K = nullspace(Matrix._trusted(field, p, r1 + r2, mid))
    out = []
    for coeffs in K.data:
        a, b = coeffs[:r1], coeffs[r1:]
        u = [zero] * L.m
        w = [zero] * L2.n
        for i, ai in enumerate(a):
            if ai:
                u = [x + ai * y for x, y in zip(u, A[i][: L.m])]
        for j, bj in enumerate(b):
            if bj:
                w = [x + bj * y for x, y in zip(w, B[j][L2.m :])]
        out.append(u + w)
    return span(L.m, L2.n, out, field)


def _pivot(r: Row) -> int:
    return next(i for i, x in enumerate(r) if not x.is_zero())


def rel_tensor(L: LinRel, L2: LinRel) -> LinRel:
    """Direct sum; inputs of ``L`` precede inputs of ``L2``, likewise outputs."""
    field = _same_field(L, L2)
    z = field.zero()
    keyed = []
    for r in L.rows():
        p = _pivot(r)
        keyed.append((p if p < L.m else p + L2.m, list(r[: L.m]) + [z] * L2.m + list(r[L.m :]) + [z] * L2.n))
    for r in L2.rows():
        p = _pivot(r)
        keyed.append((L.m + p if p < L2.m else L.m + L.n + p, [z] * L.m + list(r[: L2.m]) + [z] * L.n + list(r[L2.m :])))
    # the blocks use disjoint columns, so sorting by pivot keeps the form reduced
    keyed.sort(key=lambda t: t[0])
    rows = [r for _, r in keyed]
    width = L.m + L2.m + L.n + L2.n
    return LinRel(L.m + L2.m, L.n + L2.n, Matrix._trusted(field, len(rows), width, rows))


def rel_dagger(L: LinRel) -> LinRel:
    return span(L.n, L.m, [list(r[L.m :]) + list(r[: L.m]) for r in L.rows()], L.field)


def rel_equal(L: LinRel, L2: LinRel) -> bool:
    return L.m == L2.m and L.n == L2.n and L.field == L2.field and L.basis.data == L2.basis.data


def identity_rel(field: Field, n: int) -> LinRel:
    return graph_of(Matrix.identity(field, n))


def graph_of(A: Matrix) -> LinRel:
    """Graph ``{(x, A x)}`` of an ``n x m`` matrix, as a relation ``m -> n``."""
    n, m = A.shape
    zero, one = A.field.zero(), A.field.one()
    rows = []
    for i in range(m):
        e = [zero] * m
        e[i] = one
        rows.append(e + [A.data[k][i] for k in range(n)])
    return span(m, n, rows, A.field)


def as_map(L: LinRel) -> Matrix:
    """The matrix whose graph is ``L``; raises :class:`NotAMap` otherwise."""
    rows = L.rows()
    input_rank = sum(1 for r in rows if any(r[: L.m]))
    if input_rank < L.dim:
        raise NotAMap("not-functional")
    if input_rank < L.m:
        raise NotAMap("not-total")
    # basis is [I_m | A^T] once the input block has full rank
    data = [[rows[i][L.m + k] for i in range(L.m)] for k in range(L.n)]
    return Matrix(L.field, L.n, L.m, data)


def annihilator(L: LinRel) -> Matrix:
    """RREF constraint matrix ``C`` with ``L = {z : C z = 0}``."""
    return rref(nullspace(L.basis))


def relation_from_constraints(m: int, n: int, C: Matrix) -> LinRel:
    """The relation ``{z : C z = 0}`` with ``m`` inputs and ``n`` outputs."""
    if C.cols != m + n:
        raise DimensionMismatch(f"constraints have {C.cols} columns, expected {m + n}")
    return span(m, n, nullspace(C).data, C.field)


def format_rel(L: LinRel) -> str:
    lines = [f"rel {L.m} {L.n} {L.dim}"]
    lines += [" ".join(str(x) for x in r) for r in L.rows()]
    return "\n".join(lines)


ORACLE_LIMIT = 10**6


def relation_elements(L: LinRel) -> set[tuple[int, ...]]:
    """Every vector of ``L`` over GF(p), as tuples of residues."""
    if L.field.kind != "GF":
        raise FieldMismatch("element enumeration needs a prime field")
    p = L.field.p
    rows = [[x.value for x in r] for r in L.rows()]
    width = L.m + L.n
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = [0] * width
        for c, r in zip(coeffs, rows):
            if c:
                v = [(a + c * b) % p for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


def brute_compose(L: LinRel, L2: LinRel) -> LinRel:
    """Composite computed on explicit finite sets; a check on :func:`rel_compose`."""
    if L.n != L2.m:
        raise DimensionMismatch(f"cannot compose {L.m}->{L.n} with {L2.m}->{L2.n}")
    field = _same_field(L, L2)
    if field.kind != "GF":
        raise FieldMismatch("brute_compose needs a prime field")
    if field.p ** (L.m + L.n + L2.n) > ORACLE_LIMIT:
        raise OracleTooLarge(f"{field.p}^{L.m + L.n + L2.n} vectors exceed {ORACLE_LIMIT}")
    by_middle: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for vec in relation_elements(L):
        by_middle.setdefault(vec[L.m :], []).append(vec[: L.m])
    pairs = set()
    for vec in relation_elements(L2):
        for u in by_middle.get(vec[: L2.m], ()):
            pairs.add(u + vec[L2.m :])
    return span(L.m, L2.n, [[field(x) for x in v] for v in sorted(pairs)], field)
