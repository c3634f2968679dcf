"""Executable catalog of signal-flow laws, plus a small gallery of systems.

Every law is a pair of diagram templates.  A template takes the field and a
parameter assignment (``b`` and/or ``c``) and returns a diagram built only
from core generators; adjoints such as coaddition are expanded with
cups and caps when the template is instantiated.  A law holds for an
assignment when both sides evaluate to the same linear relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from .diagram import (
    ADD,
    BRAID,
    CAP,
    CODELETE,
    COZERO,
    CUP,
    DELETE,
    DUP,
    EMPTY,
    ID,
    ZERO,
    Diagram,
    adjoint,
    permutation,
    scale,
    seq_all,
)
from .exactfield import QQ, QS, Field, FieldElem
from .linrel import LinRel, Matrix, format_rel
from .semantics import eval_rel

Template = Callable[[Field, dict], Diagram]

COADD = adjoint(ADD)
CODUP = adjoint(DUP)


@dataclass(frozen=True)
class Law:
    name: str
    lhs: Template
    rhs: Template
    scope: str = "rel"
    params: tuple[str, ...] = ()
    side_condition: str = "none"
    summary: str = ""

    def admits(self, assignment: dict) -> bool:
        c = assignment.get("c")
        if self.side_condition == "c!=0":
            return not c.is_zero()
        if self.side_condition == "c!=1":
            return not c.is_one()
        return True

    def instantiate(self, field: Field, assignment: dict | None = None) -> tuple[Diagram, Diagram]:
        assignment = assignment or {}
        return self.lhs(field, assignment), self.rhs(field, assignment)


@dataclass
class LawCheck:
    params: dict
    verdict: str
    lhs: LinRel | None = None
    rhs: LinRel | None = None

    def line(self, law: str) -> str:
        parts = [f"law={law}"]
        if "b" in self.params:
            parts.append(f"b={self.params['b']}")
        parts.append(f"c={self.params['c']}" if "c" in self.params else "c=-")
        parts.append(f"verdict={self.verdict}")
        return " ".join(parts)


@dataclass
class LawReport:
    law: str
    field: Field
    checks: list[LawCheck] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict != "fail" for c in self.checks)

    @property
    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if c.verdict == "fail"]

    def lines(self, detail: bool = False) -> list[str]:
        out = []
        for c in self.checks:
            out.append(c.line(self.law))
            if detail and c.verdict == "fail":
                out += ["  lhs: " + s for s in format_rel(c.lhs).splitlines()]
                out += ["  rhs: " + s for s in format_rel(c.rhs).splitlines()]
        return out


def _k(field: Field, x) -> Diagram:
    return scale(field(x))


def _fixed(d: Diagram) -> Template:
    return lambda field, a: d


def _law(name, lhs, rhs, **kw) -> Law:
    wrap = lambda t: t if callable(t) else _fixed(t)
    return Law(name, wrap(lhs), wrap(rhs), **kw)


def _vect_laws() -> list[Law]:
    c = lambda f, a: scale(a["c"])
    return [
        _law("R01", (ZERO @ ID) >> ADD, ID, scope="vect", summary="zero is a unit for addition"),
        _law("R02", (ADD @ ID) >> ADD, (ID @ ADD) >> ADD, scope="vect", summary="addition is associative"),
        _law("R03", BRAID >> ADD, ADD, scope="vect", summary="addition is commutative"),
        _law("R04", DUP >> (DELETE @ ID), ID, scope="vect", summary="deletion is a counit"),
        _law("R05", DUP >> (DUP @ ID), DUP >> (ID @ DUP), scope="vect", summary="duplication is coassociative"),
        _law("R06", DUP >> BRAID, DUP, scope="vect", summary="duplication is cocommutative"),
        _law(
            "R07",
            ADD >> DUP,
            (DUP @ DUP) >> (ID @ BRAID @ ID) >> (ADD @ ADD),
            scope="vect",
            summary="duplicating a sum",
        ),
        _law("R08", ZERO >> DUP, ZERO @ ZERO, scope="vect", summary="duplicating zero"),
        _law("R09", ADD >> DELETE, DELETE @ DELETE, scope="vect", summary="deleting a sum"),
        _law("R10", ZERO >> DELETE, EMPTY, scope="vect", summary="deleting zero"),
        _law(
            "R11",
            lambda f, a: scale(a["b"] * a["c"]),
            lambda f, a: scale(a["c"]) >> scale(a["b"]),
            scope="vect",
            params=("b", "c"),
            summary="scaling twice multiplies",
        ),
        _law(
            "R12",
            lambda f, a: scale(a["b"] + a["c"]),
            lambda f, a: DUP >> (scale(a["b"]) @ scale(a["c"])) >> ADD,
            scope="vect",
            params=("b", "c"),
            summary="scaling distributes over sums of scalars",
        ),
        _law("R13", lambda f, a: _k(f, 1), ID, scope="vect", summary="scaling by one"),
        _law("R14", lambda f, a: _k(f, 0), DELETE >> ZERO, scope="vect", summary="scaling by zero"),
        _law(
            "R15",
            lambda f, a: (c(f, a) @ c(f, a)) >> ADD,
            lambda f, a: ADD >> c(f, a),
            scope="vect",
            params=("c",),
            summary="scaling commutes with addition",
        ),
        _law("R16", lambda f, a: ZERO >> c(f, a), ZERO, scope="vect", params=("c",), summary="scaling zero"),
        _law(
            "R17",
            lambda f, a: DUP >> (c(f, a) @ c(f, a)),
            lambda f, a: c(f, a) >> DUP,
            scope="vect",
            params=("c",),
            summary="scaling commutes with duplication",
        ),
        _law(
            "R18",
            lambda f, a: c(f, a) >> DELETE,
            DELETE,
            scope="vect",
            params=("c",),
            summary="scaling then deleting",
        ),
    ]


def _rel_laws() -> list[Law]:
    neg = lambda f: _k(f, -1)
    return [
        _law("R19", (ID @ CAP) >> (CUP @ ID), ID, summary="zigzag"),
        _law("R20", (CAP @ ID) >> (ID @ CUP), ID, summary="zigzag, mirrored"),
        _law("R21", (ID @ COADD) >> (ADD @ ID), ADD >> COADD, summary="addition is Frobenius"),
        _law("R22", ADD >> COADD, (COADD @ ID) >> (ID @ ADD), summary="addition is Frobenius, mirrored"),
        _law("R23", (ID @ DUP) >> (CODUP @ ID), CODUP >> DUP, summary="duplication is Frobenius"),
        _law("R24", CODUP >> DUP, (DUP @ ID) >> (ID @ CODUP), summary="duplication is Frobenius, mirrored"),
        _law("R25", COADD >> ADD, ID, summary="addition is special"),
        _law("R26", ZERO >> COZERO, EMPTY, summary="zero then cozero"),
        _law("R27", DUP >> CODUP, ID, summary="duplication is special"),
        _law("R28", CODELETE >> DELETE, EMPTY, summary="codelete then delete"),
        _law(
            "R29",
            lambda f, a: (neg(f) @ ID) >> CUP,
            ADD >> COZERO,
            summary="cup through addition with a sign",
        ),
        _law("R30", CAP, CODELETE >> DUP, summary="cap from duplication"),
        _law(
            "R31",
            lambda f, a: adjoint(scale(a["c"])),
            lambda f, a: scale(a["c"].inverse()),
            params=("c",),
            side_condition="c!=0",
            summary="adjoint of scaling is scaling by the inverse",
        ),
        _law("D01", DELETE, DUP >> CUP, summary="deletion from a cup"),
        _law(
            "D02",
            ZERO,
            lambda f, a: CAP >> CODUP >> _k(f, 0),
            summary="zero from a cap",
        ),
        _law(
            "D03",
            ADD,
            lambda f, a: (neg(f) @ COADD) >> (CUP @ ID),
            summary="addition from coaddition",
        ),
        _law("D04", DUP, (CAP @ ID) >> (ID @ CODUP), summary="duplication from coduplication"),
        _law(
            "D05",
            (ID @ CODUP) >> ADD,
            (DUP @ ID @ ID) >> (ID @ BRAID @ ID) >> (ADD @ ADD) >> CODUP,
            summary="adding into a coduplication",
        ),
        _law("D06", DUP >> (COZERO @ ID), COZERO >> ZERO, summary="cozero absorbs a copy"),
        _law("D07", (CODELETE @ ID) >> ADD, DELETE >> CODELETE, summary="adding an unconstrained signal"),
        _law(
            "D08",
            lambda f, a: COADD >> (ID @ scale(a["c"])) >> ADD,
            DELETE >> CODELETE,
            params=("c",),
            side_condition="c!=1",
            summary="skewed coaddition then addition is unconstrained",
        ),
        _law(
            "D09",
            lambda f, a: DUP >> (ID @ scale(a["c"])) >> CODUP,
            COZERO >> ZERO,
            params=("c",),
            side_condition="c!=1",
            summary="a copy equal to its multiple is zero",
        ),
        _law(
            "D10",
            CUP,
            lambda f, a: (neg(f) @ ID) >> ADD >> COZERO,
            summary="cup from cozero",
        ),
        _law(
            "antipode",
            lambda f, a: DUP >> (neg(f) @ ID) >> ADD,
            DELETE >> ZERO,
            summary="minus one is an antipode",
        ),
        _law(
            "braid-expr-a",
            BRAID,
            lambda f, a: seq_all(
                [
                    DUP @ ID,
                    neg(f) @ ADD,
                    ID @ DUP,
                    ADD @ ID,
                    DUP @ ID,
                    ID @ neg(f) @ ID,
                    ID @ ADD,
                ]
            ),
            summary="braiding from addition, duplication and negation",
        ),
        _law(
            "braid-expr-b",
            BRAID,
            lambda f, a: seq_all(
                [
                    DUP @ DUP,
                    neg(f) @ ADD @ neg(f),
                    ID @ DUP @ ID,
                    ADD @ ADD,
                ]
            ),
            summary="braiding from a symmetric layout",
        ),
        _law(
            "cozero-format",
            COZERO,
            lambda f, a: _parse_term(f, "(zero * id) ; cup"),
            summary="cozero as written in the text format",
        ),
    ]


def _parse_term(field: Field, text: str) -> Diagram:
    from .dsl import parse_term

    return parse_term(text, field)


def law_catalog() -> list[Law]:
    return _vect_laws() + _rel_laws()


def get_law(name: str) -> Law:
    for law in law_catalog():
        if law.name == name:
            return law
    raise KeyError(name)


SINGLE_SAMPLES = ("0", "1", "-1", "2", "s", "1/s", "(s+1)/(s-2)")
PAIR_SAMPLES = ("0", "1", "-1", "2", "s")


def standard_samples(law: Law, field: Field) -> list[dict]:
    """Parameter assignments used by default; ``s`` values only over Q(s)."""

    def usable(texts):
        vals = []
        for t in texts:
            if "s" in t and not field.has_variable:
                continue
            vals.append(field(t))
        return vals

    if not law.params:
        return [{}]
    if len(law.params) == 1:
        return [{law.params[0]: v} for v in usable(SINGLE_SAMPLES)]
    vals = usable(PAIR_SAMPLES)
    return [dict(zip(law.params, pair)) for pair in itertools.product(vals, repeat=len(law.params))]


def check_law(law: Law, samples: Iterable[dict] | None = None, field: Field = QS) -> LawReport:
    samples = standard_samples(law, field) if samples is None else list(samples)
    report = LawReport(law.name, field)
    for a in samples:
        if set(a) != set(law.params):
            raise ValueError(f"{law.name} takes parameters {law.params}, got {sorted(a)}")
        shown = {k: str(v) for k, v in a.items()}
        if not law.admits(a):
            report.checks.append(LawCheck(shown, "skipped-side-condition"))
            continue
        lhs, rhs = law.instantiate(field, a)
        L1, L2 = eval_rel(lhs, field), eval_rel(rhs, field)
        if L1 == L2:
            report.checks.append(LawCheck(shown, "pass"))
        else:
            report.checks.append(LawCheck(shown, "fail", L1, L2))
    return report


def daggered(law: Law) -> Law:
    """The same law with both sides turned around by cups and caps."""
    return Law(
        law.name + "-dagger",
        lambda f, a: adjoint(law.lhs(f, a)),
        lambda f, a: adjoint(law.rhs(f, a)),
        scope=law.scope,
        params=law.params,
        side_condition=law.side_condition,
        summary=law.summary + " (turned around)",
    )


def corrupted_r21() -> Law:
    """Negative control: R21 with its addition replaced by a crossed, one-legged map."""
    broken_add = BRAID >> (ID @ DELETE)
    return _law("R21-corrupted", (ID @ COADD) >> (broken_add @ ID), ADD >> COADD)


# Gallery


def _gain_up(field: Field, c) -> Diagram:
    """``0 -> 2`` block whose left output is ``c`` times its right output.

    This is a gain drawn against the flow: the right wire runs downward into
    the rest of the diagram and the scaled copy feeds back upward.
    """
    return CAP >> (scale(field(c)) @ ID)


def _integrate_twice(field: Field) -> Diagram:
    i = scale(field.variable().inverse())
    return i >> i


def feedback_loop(a, b, c, field: Field = QQ) -> Diagram:
    """Reference in, system output out: controller ``a``, plant ``b``, sensor ``c``."""
    sensor = CAP >> ((scale(field(c)) >> scale(field(-1))) @ ID)
    return seq_all(
        [
            sensor @ ID,
            ID @ BRAID,
            ADD @ ID,
            (scale(field(a)) >> scale(field(b))) @ ID,
            DUP @ ID,
            BRAID @ ID,
            ID @ CUP,
        ]
    )


def _pendulum_scalars(M, m, g, l) -> tuple[FieldElem, ...]:
    return tuple(QS(x) for x in (M, m, g, l))


def pendulum(M, m, g, l) -> tuple[Diagram, Diagram]:
    """Cart-and-pendulum diagrams over Q(s), both from force F to (x, theta).

    The first is glued from the three equations of motion; the second is the
    textbook form with two integrator chains and two feedback gains.
    """
    M, m, g, l = _pendulum_scalars(M, m, g, l)
    f = QS
    ii = _integrate_twice(f)

    # theta from the cart acceleration: l theta'' = g theta - x''
    angle = seq_all(
        [
            _gain_up(f, g / l) @ scale(-1 / l),
            ID @ BRAID,
            ADD @ ID,
            ii @ ID,
            DUP @ ID,
            BRAID @ ID,
            ID @ CUP,
        ]
    )
    composite = seq_all(
        [
            ID @ _gain_up(f, -(m * g)),  # F, -mg theta, theta
            ADD @ ID,  # F_net, theta
            scale(1 / M) @ ID,  # x'', theta
            DUP @ ID,
            ii @ angle @ ID,  # x, theta, theta
            ID @ DUP @ ID,
            ID @ ID @ CUP,  # coduplication of the two thetas
        ]
    )

    # x'' = F/M - (mg/M) theta ; theta'' = -F/(Ml) + (M+m)g/(Ml) theta
    route = permutation([0, 1, 4, 2, 3, 5])
    friedland = seq_all(
        [
            DUP >> (scale(1 / M) @ scale(-1 / (M * l))),
            ID @ _gain_up(f, -(m * g) / M) @ ID @ _gain_up(f, (M + m) * g / (M * l)),
            route,  # a, -mg/M u, b, K v, u, v
            ADD @ ADD @ ID @ ID,
            ii @ ii @ ID @ ID,  # x, theta, u, v
            ID @ DUP @ ID @ ID,
            ID @ ID @ DUP @ ID @ ID,  # x, t1, t2, t3, u, v
            permutation([0, 2, 1, 4, 3, 5]),  # x, t2, t1, u, t3, v
            ID @ ID @ CUP @ CUP,
        ]
    )
    return composite, friedland


def pendulum_transfer(M, m, g, l) -> tuple[FieldElem, FieldElem]:
    """Transfer functions (x/F, theta/F) by direct elimination.

    From F_net = F - mg theta, x'' = F_net / M and l theta'' = g theta - x'':
    theta = -F / (M l s^2 - (M+m) g) and x = (F - mg theta) / (M s^2).
    """
    M, m, g, l = _pendulum_scalars(M, m, g, l)
    s = QS.variable()
    theta = -1 / (M * l * s * s - (M + m) * g)
    x = (1 - m * g * theta) / (M * s * s)
    return x, theta


def pendulum_matrix(M, m, g, l) -> Matrix:
    x, theta = pendulum_transfer(M, m, g, l)
    return Matrix(QS, 2, 1, [[x], [theta]])
