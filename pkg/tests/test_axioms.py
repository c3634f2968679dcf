import pytest

from sigflow.axioms import (
    CODUP,
    COADD,
    check_law,
    corrupted_r21,
    daggered,
    feedback_loop,
    get_law,
    law_catalog,
    pendulum,
    pendulum_matrix,
    pendulum_transfer,
    standard_samples,
)
from sigflow.diagram import ADD, DUP, signature
from sigflow.exactfield import GF, QQ, QS
from sigflow.linrel import Matrix, as_map, graph_of, rel_dagger
from sigflow.semantics import eval_rel

FIELDS = [QQ, QS, GF(2), GF(7)]


def test_catalog_shape():
    laws = law_catalog()
    names = [law.name for law in laws]
    assert len(laws) == 45 and len(set(names)) == 45
    assert sum(law.scope == "vect" for law in laws) == 18
    assert names[:31] == [f"R{i:02d}" for i in range(1, 32)]
    assert [n for n in names if n.startswith("D")] == [f"D{i:02d}" for i in range(1, 11)]
    assert {"antipode", "braid-expr-a", "braid-expr-b", "cozero-format"} <= set(names)


def test_side_conditions():
    assert get_law("R31").side_condition == "c!=0"
    assert get_law("D08").side_condition == "c!=1"
    assert get_law("D09").side_condition == "c!=1"
    with pytest.raises(KeyError):
        get_law("R99")


def test_check_law_examples():
    report = check_law(get_law("R11"), [{"b": QS("s"), "c": QS("1/s")}])
    assert [c.verdict for c in report.checks] == ["pass"]
    report = check_law(get_law("R31"), [{"c": QS(0)}])
    assert [c.verdict for c in report.checks] == ["skipped-side-condition"]
    broken = check_law(corrupted_r21())
    assert not broken.passed
    fail = broken.failures[0]
    assert fail.lhs != fail.rhs
    assert fail.lhs.basis != fail.rhs.basis


def test_check_law_rejects_wrong_parameters():
    with pytest.raises(ValueError):
        check_law(get_law("R11"), [{"c": QS(1)}])


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_every_law_holds(field):
    for law in law_catalog():
        report = check_law(law, field=field)
        assert report.passed, report.lines(detail=True)


@pytest.mark.parametrize("field", [QS, GF(3)], ids=str)
def test_every_turned_around_law_holds(field):
    for law in law_catalog():
        report = check_law(daggered(law), field=field)
        assert report.passed, report.lines(detail=True)


def test_sample_sets():
    r31 = get_law("R31")
    assert len(standard_samples(r31, QS)) == 7
    assert len(standard_samples(r31, QQ)) == 4
    assert len(standard_samples(get_law("R11"), QS)) == 25
    assert standard_samples(get_law("R01"), QS) == [{}]


def test_report_lines():
    lines = check_law(get_law("R11"), [{"b": QS(2), "c": QS("s")}]).lines()
    assert lines == ["law=R11 b=2 c=s verdict=pass"]
    assert check_law(get_law("R01")).lines() == ["law=R01 c=- verdict=pass"]


def test_coaddition_and_coduplication_are_adjoints():
    assert eval_rel(COADD, QQ) == rel_dagger(eval_rel(ADD, QQ))
    assert eval_rel(CODUP, QQ) == rel_dagger(eval_rel(DUP, QQ))


def test_feedback_loop_transfer():
    # y = b (a (r - c y))  gives  y = a b / (1 + a b c) r
    loop = feedback_loop(2, 3, 5, QQ)
    assert signature(loop) == (1, 1)
    assert as_map(eval_rel(loop, QQ)) == Matrix.from_rows(QQ, [["6/31"]])


PENDULUM = [(2, 1, 10, 1), (1, 1, 1, 1), (3, "1/2", "49/5", 2)]


@pytest.mark.parametrize("params", PENDULUM, ids=str)
def test_pendulum_diagrams_agree(params):
    composite, reference = pendulum(*params)
    assert signature(composite) == signature(reference) == (1, 2)
    L = eval_rel(composite, QS)
    assert L == eval_rel(reference, QS)
    assert as_map(L) == pendulum_matrix(*params)
    assert L == graph_of(pendulum_matrix(*params))


def test_pendulum_closed_form():
    x, theta = pendulum_transfer(2, 1, 10, 1)
    # frozen from the elimination: theta = -1/(2 s^2 - 30), x = (1 - 10 theta)/(2 s^2)
    assert theta == QS("-1/(2*s^2-30)")
    assert x == QS("(s^2-10)/(s^4-15*s^2)") * QS("1/2")
    # the equations of motion hold for force F = 1
    s = QS.variable()
    M, m, g, l = (QS(v) for v in (2, 1, 10, 1))
    f_net = 1 - m * g * theta
    assert M * s * s * x == f_net
    assert l * s * s * theta == g * theta - s * s * x
