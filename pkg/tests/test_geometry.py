import random

import pytest

from arcmodel.errors import InputError
from arcmodel.fields import PrimeField, RationalField
from arcmodel.geometry import (
    Arc,
    DimensionMismatchError,
    NoFiniteMinorError,
    ReductionFailedError,
    SearchCapExceededError,
    Variety,
    check_arc,
    minor_determinant,
    ord_along_arc,
    reduce_to_complete_intersection,
    select_minor,
)
from arcmodel.series import TruncSeries

from conftest import monomial_arc


def _node(field):
    X = Variety(field, ["x", "y"], ["x*y"])
    arc = monomial_arc(field, X, {"x": 1, "y": None}, 8)
    return X, arc


def test_check_arc_node(qq):
    X, arc = _node(qq)
    report = check_arc(X, arc)
    assert report.passed
    assert report.orders == (("x*y", None),)


def test_check_arc_quadric_cone(qq):
    X = Variety(qq, ["x", "y", "z"], ["x^2 - y*z"])
    arc = monomial_arc(qq, X, {"x": None, "y": 1, "z": None}, 8)
    assert check_arc(X, arc).passed


def test_check_arc_failure(qq):
    X = Variety(qq, ["x", "y"], ["x*y"])
    arc = monomial_arc(qq, X, {"x": 1, "y": 1}, 8)
    report = check_arc(X, arc)
    assert not report.passed
    assert report.orders[0][1] == 2


def test_check_arc_dimension_mismatch(qq):
    X = Variety(qq, ["x", "y"], ["x*y"])
    arc = Arc({"x": TruncSeries(qq, [], 8)}, 8)
    with pytest.raises(DimensionMismatchError):
        check_arc(X, arc)


def test_ord_along_arc(qq):
    X, arc = _node(qq)
    assert ord_along_arc(X.ring.var("x"), X, arc) == 1
    assert ord_along_arc(X.ring.one(), X, arc) == 0
    cone = Variety(qq, ["x", "y", "z"], ["x^2 - y*z"])
    carc = monomial_arc(qq, cone, {"y": 1}, 8)
    assert ord_along_arc(-cone.ring.var("y"), cone, carc) == 1


def test_select_minor_node(qq):
    X, arc = _node(qq)
    sel = select_minor(X, arc)
    assert sel.eliminated == ("y",)
    assert sel.d == 1


def test_select_minor_quadric_cone(qq):
    X = Variety(qq, ["x", "y", "z"], ["x^2 - y*z"])
    arc = monomial_arc(qq, X, {"y": 1}, 8)
    sel = select_minor(X, arc)
    # minors are (2x, -z, -y) with orders (>=8, >=8, 1)
    assert sel.eliminated == ("z",)
    assert sel.d == 1
    orders = dict((names[0], o) for names, o in sel.minor_order_table)
    assert orders == {"x": None, "y": None, "z": 1}


def test_select_minor_smooth(qq):
    X = Variety(qq, ["x", "y"], ["x - y^2"])
    arc = Arc(
        {
            "x": TruncSeries(qq, [qq.zero(), qq.zero(), qq.one()], 8),
            "y": TruncSeries(qq, [qq.zero(), qq.one()], 8),
        },
        8,
    )
    sel = select_minor(X, arc)
    assert sel.d == 0
    assert sel.eliminated == ("x",)


def test_select_minor_no_finite(qq):
    X = Variety(qq, ["x", "y"], ["x*y"])
    arc = monomial_arc(qq, X, {"x": None, "y": None}, 8)  # origin: singular
    with pytest.raises(NoFiniteMinorError):
        select_minor(X, arc)


def test_select_minor_cap(qq):
    X = Variety(qq, ["x", "y"], ["x*y"])
    arc = monomial_arc(qq, X, {"x": 1}, 8)
    with pytest.raises(SearchCapExceededError):
        select_minor(X, arc, cap=1)
    sel = select_minor(X, arc, cap=1, forced=("y",))
    assert sel.eliminated == ("y",)


def test_minor_order_invariant_under_scaling(qq):
    X = Variety(qq, ["x", "y", "z"], ["x^2 - y*z"])
    arc = monomial_arc(qq, X, {"y": 1}, 8)
    d0 = select_minor(X, arc).d
    scaled = X.scale_equation(0, qq.from_int(-7))
    assert select_minor(scaled, arc).d == d0


def test_minor_determinant(qq):
    X = Variety(qq, ["x", "y"], ["x*y"])
    assert minor_determinant(X, ("y",)) == X.ring.var("x")


def test_reduce_identity_when_already_ci(qq):
    X, arc = _node(qq)
    red, sel, report = reduce_to_complete_intersection(X, arc, seed=0)
    assert red is X
    assert report.trials == 0
    assert sel.d == 1


def test_reduce_monomial_curve(qq):
    X = Variety(
        qq,
        ["x", "y", "z"],
        ["x*z - y^2", "x^2*y - y*z", "x*y^2 - z^2"],
        codim=2,
    )
    arc = monomial_arc(qq, X, {"x": 2, "y": 3, "z": 4}, 30)
    assert check_arc(X, arc).passed
    red, sel, report = reduce_to_complete_intersection(X, arc, seed=7)
    assert len(red.equations) == 2
    assert check_arc(red, arc).passed
    assert sel.d is not None and sel.d >= 1
    # determinism of the draw
    red2, sel2, report2 = reduce_to_complete_intersection(X, arc, seed=7)
    assert [str(e) for e in red2.equations] == [str(e) for e in red.equations]
    assert (sel2.eliminated, sel2.d) == (sel.eliminated, sel.d)


def test_reduce_retry_path():
    # over F2 the zero draw is likely, exercising the retry loop
    f2 = PrimeField(2)
    X = Variety(f2, ["x", "y", "z"], ["x*y", "x*z", "y*z"], codim=2)
    arc = monomial_arc(f2, X, {"x": 1}, 12)
    retried = None
    for seed in range(60):
        red, sel, report = reduce_to_complete_intersection(X, arc, seed=seed)
        assert check_arc(red, arc).passed
        if report.trials > 1:
            retried = seed
            break
    assert retried is not None, "no seed exercised the retry path"


def test_reduce_failure_reports(qq):
    # an arc through the singular point of every combination:
    # all minors vanish along the zero section, so reduction cannot certify
    X = Variety(qq, ["x", "y", "z"], ["x*y", "x*z", "y*z"], codim=2)
    arc = monomial_arc(qq, X, {}, 8)  # the constant origin arc
    with pytest.raises(ReductionFailedError):
        reduce_to_complete_intersection(X, arc, seed=1, max_trials=4)


def test_reduce_requires_enough_equations(qq):
    X = Variety(qq, ["x", "y", "z"], ["x*y"], codim=2)
    arc = monomial_arc(qq, X, {"z": 1}, 8)
    with pytest.raises(InputError):
        reduce_to_complete_intersection(X, arc, seed=0)
