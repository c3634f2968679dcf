"""Canonical diagrams for matrices and linear relations.

``matrix_to_diagram`` lays a matrix out in three layers: fan-out clusters of
``Dup``, one ``Scale`` per entry, then routing into clusters of ``Add``.
``relation_to_diagram`` writes a relation as the constraints of its RREF
annihilator: caps bring the outputs back up as inputs, the constraint matrix
is drawn in the same three layers, and every constraint output is capped off
with a cozero.  Because the annihilator is canonical, so is the diagram.
"""

from __future__ import annotations

from .diagram import (
    ADD,
    COZERO,
    DELETE,
    DUP,
    ID,
    ZERO,
    Diagram,
    cap_block,
    compose_all,
    identity_n,
    par_all,
    permutation,
    scale,
    tensor_all,
)
from .exactfield import Field
from .linrel import LinRel, Matrix, annihilator
from .semantics import eval_rel


def dup_cluster(n: int) -> Diagram:
    """``1 -> n`` copier; each Dup's right output is a leaf of the cluster."""
    out = ID
    for _ in range(n - 1):
        out = DUP >> (out @ ID) if out is not ID else DUP
    return out


def add_cluster(m: int) -> Diagram:
    """``m -> 1`` adder; each Add's right input is a leaf of the cluster."""
    out = ID
    for _ in range(m - 1):
        out = (out @ ID) >> ADD if out is not ID else ADD
    return out


def matrix_to_diagram(A: Matrix) -> Diagram:
    n, m = A.shape
    if m == 0:
        return par_all([ZERO] * n)
    if n == 0:
        return par_all([DELETE] * m)
    fan_out = par_all([dup_cluster(n)] * m)
    scales = par_all([scale(A[i, j]) for j in range(m) for i in range(n)])
    # wire (input j, row i) moves to slot i*m + j of the sum clusters
    route = permutation([i * m + j for j in range(m) for i in range(n)])
    sums = par_all([add_cluster(m)] * n)
    return compose_all(fan_out, scales, route, sums)


def relation_to_diagram(L: LinRel) -> Diagram:
    m, n = L.m, L.n
    C = annihilator(L)
    return compose_all(
        tensor_all(identity_n(m), cap_block(n)),
        tensor_all(matrix_to_diagram(C), identity_n(n)),
        tensor_all(par_all([COZERO] * C.rows), identity_n(n)),
    )


def normalize(d: Diagram, field: Field | None = None) -> Diagram:
    return relation_to_diagram(eval_rel(d, field))
