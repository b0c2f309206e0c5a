import pytest

from clonegroups.braids import instance_bV
from clonegroups.core import Element, equals
from clonegroups.expr import ParseError, evaluate, render, tokenize
from clonegroups.maps import x0
from clonegroups.perms import instance_F, instance_V

F = instance_F(2)
V = instance_V(2)


def test_literals_and_products():
    assert render(evaluate(F, "x0 * x0^-1")) == "[L;;L]"
    assert render(evaluate(V, "x0 * inv(x0)")) == "[L;1;L]"
    assert render(evaluate(F, "x0 * x0^-1 == one")) == "true"
    assert render(evaluate(F, "x0 == x1")) == "false"


def test_functions():
    assert evaluate(F, "theta(x0^3)") == 3
    assert render(evaluate(F, "theta(x1 * x0^-2)")) == "-1"
    y = evaluate(instance_bV(2), "pi([(L(LL));1 -2;((LL)L)])")
    assert isinstance(y, Element) and y.middle.images == (3, 1, 2)
    assert render(evaluate(F, "reduce([((LL)L);;((LL)L)])")) == "[L;;L]"


def test_figure_pair_equal():
    src = "[(L(LL));3 1 2;((LL)L)] == [(L((LL)L));4 1 2 3;((LL)(LL))]"
    assert evaluate(V, src) is True


def test_precedence():
    a = evaluate(F, "x0 * x1^2")
    b = evaluate(F, "x0 * (x1 * x1)")
    assert equals(a, b)
    assert equals(evaluate(F, "(x0^2)^-1"), x0(F).inverse() * x0(F).inverse())


@pytest.mark.parametrize(
    "src,pos",
    [
        ("x0 *", 4),
        ("x0 ? x1", 3),
        ("[(LL);;(LL)", 0),
        ("q", 0),
        ("theta(x0) * x1", 10),
        ("x0 x1", 3),
        ("[(LLL);;L]", 0),
    ],
)
def test_parse_errors_report_position(src, pos):
    with pytest.raises(ParseError) as e:
        evaluate(F, src)
    assert e.value.pos == pos
    assert f"position {pos}" in str(e.value)


def test_tokenize():
    kinds = [t.kind for t in tokenize("[L;;L] * x0^-2 == one")]
    assert kinds == ["elem", "*", "name", "^", "int", "==", "name", "end"]
