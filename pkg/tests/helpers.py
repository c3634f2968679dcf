"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from sigflow.diagram import (
    ADD,
    BRAID,
    CAP,
    CUP,
    DELETE,
    DUP,
    EMPTY,
    ID,
    ZERO,
    Diagram,
    Par,
    Seq,
    identity_n,
    scale,
)
from sigflow.exactfield import Field, FieldElem, Poly, ratfunc_canonical
from sigflow.linrel import LinRel, Matrix, span


def random_fraction(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_poly(rng: random.Random, degree: int = 2, size: int = 4) -> Poly:
    return Poly([rng.randint(-size, size) for _ in range(rng.randint(0, degree) + 1)])


def random_elem(rng: random.Random, field: Field, zero_rate: float = 0.2) -> FieldElem:
    if rng.random() < zero_rate:
        return field.zero()
    if field.kind == "GF":
        return field(rng.randrange(field.p))
    if field.kind == "Q":
        return field(random_fraction(rng))
    den = random_poly(rng, 2)
    while den.is_zero():
        den = random_poly(rng, 2)
    return FieldElem(field, ratfunc_canonical(random_poly(rng, 2), den))


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    return Matrix(field, rows, cols, [[random_elem(rng, field) for _ in range(cols)] for _ in range(rows)])


def random_relation(rng: random.Random, field: Field, m: int, n: int, dim: int | None = None) -> LinRel:
    """Span of a few random vectors; sparse enough to hit every dimension."""
    count = rng.randint(0, m + n) if dim is None else dim
    rows = [[random_elem(rng, field, zero_rate=0.4) for _ in range(m + n)] for _ in range(count)]
    return span(m, n, rows, field)


_LEAVES = [ADD, ZERO, DUP, DELETE, ID, BRAID]
_COMPACT = [CUP, CAP]


def random_leaf(rng: random.Random, field: Field, compact: bool = True) -> Diagram:
    pool = _LEAVES + (_COMPACT if compact else [])
    r = rng.random()
    if r < 0.25:
        return scale(random_elem(rng, field))
    if r < 0.28:
        return EMPTY
    return rng.choice(pool)


def fit_dom(rng: random.Random, d: Diagram, k: int, compact: bool = True) -> Diagram:
    """Precompose adapters so that ``d`` takes ``k`` inputs."""
    while d.dom > k:
        options = ["zero"] + (["dup"] if d.dom >= 2 else []) + (["cap"] if compact and d.dom - 2 >= k else [])
        pick = rng.choice(options)
        if pick == "dup":
            d = Seq(Par(DUP, identity_n(d.dom - 2)), d)
        elif pick == "cap":
            d = Seq(Par(identity_n(d.dom - 2), CAP), d)
        else:
            d = Seq(Par(identity_n(d.dom - 1), ZERO), d)
    while d.dom < k:
        options = ["del"] + (["add"] if d.dom >= 1 else []) + (["cup"] if compact and d.dom + 2 <= k else [])
        pick = rng.choice(options)
        if pick == "add":
            d = Seq(Par(ADD, identity_n(d.dom - 1)), d)
        elif pick == "cup":
            d = Seq(Par(CUP, identity_n(d.dom)), d)
        else:
            d = Seq(Par(identity_n(d.dom), DELETE), d)
    return d


def fit_cod(rng: random.Random, d: Diagram, k: int, compact: bool = True) -> Diagram:
    """Postcompose adapters so that ``d`` has ``k`` outputs."""
    while d.cod > k:
        options = ["del"] + (["add"] if d.cod >= 2 else []) + (["cup"] if compact and d.cod - 2 >= k else [])
        pick = rng.choice(options)
        if pick == "add":
            d = Seq(d, Par(ADD, identity_n(d.cod - 2)))
        elif pick == "cup":
            d = Seq(d, Par(identity_n(d.cod - 2), CUP))
        else:
            d = Seq(d, Par(identity_n(d.cod - 1), DELETE))
    while d.cod < k:
        options = ["zero"] + (["dup"] if d.cod >= 1 else []) + (["cap"] if compact and d.cod + 2 <= k else [])
        pick = rng.choice(options)
        if pick == "dup":
            d = Seq(d, Par(DUP, identity_n(d.cod - 1)))
        elif pick == "cap":
            d = Par(d, CAP)
        else:
            d = Par(d, ZERO)
    return d


def random_diagram(
    rng: random.Random, field: Field, depth: int = 4, compact: bool = True, max_wires: int = 5
) -> Diagram:
    """Random well-typed term of bounded depth with at most ``max_wires`` ports per side."""
    if depth <= 0 or rng.random() < 0.25:
        return random_leaf(rng, field, compact)
    sub = lambda: random_diagram(rng, field, depth - 1, compact, max_wires)
    if rng.random() < 0.5:
        f, g = sub(), sub()
        if f.dom + g.dom <= max_wires and f.cod + g.cod <= max_wires:
            return Par(f, g)
        return f
    f = sub()
    g = fit_dom(rng, sub(), f.cod, compact)
    return Seq(f, g)


def random_diagram_sig(
    rng: random.Random, field: Field, dom: int, cod: int, depth: int = 3, compact: bool = True
) -> Diagram:
    d = random_diagram(rng, field, depth, compact)
    return fit_cod(rng, fit_dom(rng, d, dom, compact), cod, compact)


def reassociate(rng: random.Random, d: Diagram) -> Diagram:
    """Randomly rotate nested Seq/Par nodes; the denotation is unchanged."""
    if isinstance(d, (Seq, Par)):
        left, right = reassociate(rng, d.left), reassociate(rng, d.right)
        node = type(d)
        if isinstance(left, node) and rng.random() < 0.5:
            return node(left.left, node(left.right, right))
        if isinstance(right, node) and rng.random() < 0.5:
            return node(node(left, right.left), right.right)
        return node(left, right)
    return d
