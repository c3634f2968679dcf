"""Denotation of diagrams as linear relations, and as matrices when possible."""

from __future__ import annotations

from .diagram import Diagram, Empty, Gen, Kind, Par, Seq, scalar_fields
from .errors import FieldMismatch, NonFinVectGenerator
from .exactfield import QQ, Field
from .linrel import LinRel, Matrix, graph_of, rel_compose, rel_tensor, span


def _map_matrix(kind: Kind, field: Field, scalar=None) -> Matrix:
    rows = {
        Kind.ADD: [[1, 1]],
        Kind.ZERO: [[]],
        Kind.DUP: [[1], [1]],
        Kind.DELETE: [],
        Kind.ID: [[1]],
        Kind.BRAID: [[0, 1], [1, 0]],
    }
    if kind is Kind.SCALE:
        return Matrix(field, 1, 1, [[scalar]])
    dom = {Kind.ZERO: 0, Kind.DELETE: 1}.get(kind)
    data = rows[kind]
    return Matrix.from_rows(field, data, cols=dom if dom is not None else len(data[0]))


def denote_generator(g: Gen, field: Field | None = None) -> LinRel:
    """The linear relation a single generator stands for."""
    if g.scalar is not None:
        if field is not None and g.scalar.field != field:
            raise FieldMismatch(f"scale({g.scalar}) is over {g.scalar.field}, evaluating over {field}")
        field = g.scalar.field
    field = field or QQ
    if g.kind is Kind.CUP:
        return span(2, 0, [[1, 1]], field)
    if g.kind is Kind.CAP:
        return span(0, 2, [[1, 1]], field)
    return graph_of(_map_matrix(g.kind, field, g.scalar))


def infer_field(d: Diagram, field: Field | None = None) -> Field:
    """The field of the scalars in ``d``; ``field`` wins, Q if no scalars."""
    fields = scalar_fields(d)
    if field is not None:
        stray = [f for f in fields if f != field]
        if stray:
            raise FieldMismatch(f"diagram has scalars over {stray[0]}, evaluating over {field}")
        return field
    if len(fields) > 1:
        raise FieldMismatch(f"diagram mixes scalars over {', '.join(sorted(map(str, fields)))}")
    return fields.pop() if fields else QQ


def eval_rel(d: Diagram, field: Field | None = None) -> LinRel:
    """Evaluate ``d`` to a linear relation, memoizing repeated subterms."""
    field = infer_field(d, field)
    memo: dict[Diagram, LinRel] = {}

    def go(t: Diagram) -> LinRel:
        hit = memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Gen):
            out = denote_generator(t, field)
        elif isinstance(t, Seq):
            out = rel_compose(go(t.left), go(t.right))
        elif isinstance(t, Par):
            out = rel_tensor(go(t.left), go(t.right))
        elif isinstance(t, Empty):
            out = span(0, 0, [], field)
        else:
            raise TypeError(f"not a diagram: {t!r}")
        memo[t] = out
        return out

    return go(d)


def eval_mat(d: Diagram, field: Field | None = None) -> Matrix:
    """Evaluate a diagram without cups or caps to its ``cod x dom`` matrix."""
    field = infer_field(d, field)
    memo: dict[Diagram, Matrix] = {}

    def go(t: Diagram) -> Matrix:
        hit = memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Gen):
            if t.kind in (Kind.CUP, Kind.CAP):
                raise NonFinVectGenerator(f"{t!r} has no matrix: it is not a linear map")
            out = _map_matrix(t.kind, field, t.scalar)
        elif isinstance(t, Seq):
            out = go(t.right) @ go(t.left)
        elif isinstance(t, Par):
            out = go(t.left).direct_sum(go(t.right))
        elif isinstance(t, Empty):
            out = Matrix(field, 0, 0, [])
        else:
            raise TypeError(f"not a diagram: {t!r}")
        memo[t] = out
        return out

    return go(d)
