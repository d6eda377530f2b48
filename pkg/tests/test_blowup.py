"""Point and curve blow-ups: chart data, multiplicities, dicritical tags."""

import pytest

from foliation_lab import (LocalDivisor, blowup_curve3, blowup_point2,
                           blowup_point3)
from foliation_lab.blowup import dicritical_test2
from foliation_lab.forms import DivisorBranch
from foliation_lab.poly import MPoly

from conftest import Q, XYZ, corpus2, f2, f3, mk


def test_dicritical_test_on_radial_and_node():
    c = corpus2()
    assert dicritical_test2(c["radial"][0])
    assert not dicritical_test2(c["node"][0])


def test_blowup_point2_radial_is_dicritical():
    form = corpus2()["radial"][0]
    charts = blowup_point2(form, LocalDivisor.empty())
    assert len(charts) == 2
    for ch in charts:
        assert ch.dicritical
        assert ch.mult == 2  # nu + 1 on a dicritical blow-up
        # the exceptional branch enters the divisor, tagged dicritical
        assert any(b.dicritical for b in ch.divisor)


def test_blowup_point2_cusp_chart_content():
    form = corpus2()["cusp"][0]         # -3u^2 du + 2v dv
    charts = blowup_point2(form, LocalDivisor.empty())
    c1 = next(ch for ch in charts if ch.label == "c1")
    assert not c1.dicritical
    assert c1.mult == 1
    # strict transform in chart (u, uv): v du-part picks up -3u + 2uv^2 du ...
    zero = {w: Q.zero() for w in c1.form.vars}
    assert c1.form.A.evaluate(zero).is_zero()
    assert c1.form.B.evaluate(zero).is_zero()


def test_blowup_point2_refuses_regular_point():
    form = f2({(0, 0): 1}, {(1, 0): 1})
    with pytest.raises(ValueError):
        blowup_point2(form, LocalDivisor.empty())


def test_blowup_point2_divisor_strict_transform():
    form = corpus2()["cusp"][0]
    div = LocalDivisor((DivisorBranch(mk(("u", "v"), {(1, 0): 1})),))
    charts = blowup_point2(form, div)
    c1 = next(ch for ch in charts if ch.label == "c1")
    # {u = 0} passes through chart c1 where it coincides with the
    # exceptional line, plus the new exceptional branch itself
    assert len(c1.divisor.branches) >= 1
    assert all(not b.equation.is_zero() for b in c1.divisor)


def test_blowup_point3_charts():
    # d(xyz)
    form = f3({(0, 1, 1): 1}, {(1, 0, 1): 1}, {(1, 1, 0): 1})
    charts = blowup_point3(form, LocalDivisor.empty())
    assert len(charts) == 3
    for ch in charts:
        assert ch.mult >= 1
        zero = {w: Q.zero() for w in XYZ}
        # still vanishing at every chart origin along an invariant model
        assert all(p.evaluate(zero).is_zero() for p in ch.form.coeffs())


def test_blowup_curve3_refuses_non_singular_center():
    # d(xyz) is regular along the z-axis complement but singular on axes;
    # a form not vanishing on the axis must be refused
    form = f3({(0, 0, 0): 1}, {(1, 0, 1): 1}, {(1, 1, 0): 1})
    with pytest.raises(ValueError):
        blowup_curve3(form, "z", LocalDivisor.empty())


def test_blowup_curve3_along_z_axis():
    form = f3({(0, 1, 1): 1}, {(1, 0, 1): 1}, {(1, 1, 0): 1})  # d(xyz)
    charts = blowup_curve3(form, "z", LocalDivisor.empty())
    assert len(charts) == 2
    for ch in charts:
        assert not ch.dicritical
        assert any(not b.dicritical for b in ch.divisor)
