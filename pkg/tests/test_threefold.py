"""Three-variable germs: model matching, section tests, main harness."""

from fractions import Fraction

import pytest

from foliation_lab import (dimensional_type, match_simple_model3,
                           second_type3_via_sections, theorem_main_harness)
from foliation_lab.forms import OneForm3
from foliation_lab.poly import MPoly

from conftest import (CUSP_LINE_SCRIPT, Q, Q2, XYZ, cusp_line_form, f3)

_R2 = Q2.sqrt_gen()


def _m3(e, c, desc=Q2):
    return MPoly(XYZ, {e: c}, desc)


def _dxyz():
    return f3({(0, 1, 1): 1}, {(1, 0, 1): 1}, {(1, 1, 0): 1})


def _fibered_tangent():
    """The plane germ y(y - x) dx + x^2 dy made constant along z."""
    return f3({(0, 2, 0): 1, (1, 1, 0): -1}, {(2, 0, 0): 1}, {})


def test_dimensional_type():
    assert dimensional_type(_dxyz()) == 3
    assert dimensional_type(_fibered_tangent()) == 2


def test_match_model_a():
    m = match_simple_model3(_dxyz())
    assert m.code == "A" and m.tau == 3
    fa = OneForm3(_m3((0, 1, 1), Q2.one()), _m3((1, 0, 1), _R2),
                  _m3((1, 1, 0), _R2 + _R2), XYZ)
    m = match_simple_model3(fa)
    assert m.code == "A"
    assert [r.render() for r in m.residues] == ["1", "rt(2)", "(2)*rt(2)"]


def test_match_rejects_zero_sum_residues():
    fn = f3({(0, 1, 1): 1}, {(1, 0, 1): 1}, {(1, 1, 0): -2})
    assert match_simple_model3(fn).code == "NotSimple"


def test_match_model_b1():
    fb1 = OneForm3(_m3((0, 1, 1), Q2.one()), _m3((2, 0, 1), _R2),
                   _m3((2, 1, 0), Q2.one()), XYZ)
    m = match_simple_model3(fb1)
    assert m.code == "B1"
    assert m.powers == (1,)
    assert [r.render() for r in m.residues] == ["1", "rt(2)", "1"]
    assert sorted(w.render() for w in m.weak_planes) == ["y", "z"]


def test_match_model_b2():
    fb2 = f3({(0, 1, 1): 1}, {(1, 0, 1): 1}, {(2, 2, 0): 1})
    m = match_simple_model3(fb2)
    assert m.code == "B2"
    assert m.powers == (1, 1)
    assert [w.render() for w in m.weak_planes] == ["z"]


def test_match_model_b3_resonant_monomial():
    # residues (1, 1, 1) carrying the resonant monomial xyz
    fb3 = OneForm3(
        _m3((0, 1, 1), Q2.one()),
        _m3((1, 0, 1), Q2.one()) + _m3((2, 1, 2), Q2.one()),
        _m3((1, 1, 0), Q2.one()) + _m3((2, 2, 1), _R2), XYZ)
    m = match_simple_model3(fb3)
    assert m.code == "B3"
    assert m.powers == (1, 1, 1)


def test_match_cylinder_over_tangent_germ_is_not_simple():
    assert match_simple_model3(_fibered_tangent()).code == "NotSimple"


def test_section_test_falsifies_tangent_germ():
    v = second_type3_via_sections(_fibered_tangent(), trials=4, seed=7)
    assert v.kind == "NotSecondType"
    assert len(v.witnesses) == 6
    # every witness names where it was found and carries leaf records
    for w in v.witnesses:
        assert w[0] and w[1]


def test_section_test_confirms_logarithmic_model():
    la = OneForm3(_m3((0, 1, 1), Q2.one()), _m3((1, 0, 1), _R2),
                  _m3((1, 1, 0), -Q2.one() - _R2), XYZ)
    v = second_type3_via_sections(la, trials=4, seed=0)
    assert v.kind == "SecondType"
    assert not v.witnesses


def test_section_test_confirms_exact_product_form():
    v = second_type3_via_sections(_dxyz(), trials=4, seed=0)
    assert v.kind == "SecondType"


def test_harness_product_form_all_simple():
    S = [MPoly.variable(XYZ, w, Q) for w in XYZ]
    rep = theorem_main_harness(_dxyz(), S, [])
    assert rep.ok
    assert len(rep.records) == 4
    assert all(r.simple for r in rep.records)
    assert not rep.diagnostics


@pytest.mark.parametrize("lam2,desc", [
    (Q2.sqrt_gen(), Q2),
    (Q.rational(Fraction(5, 2)), Q),
])
def test_harness_cusp_times_line(lam2, desc):
    form = cusp_line_form(lam2)
    S = [MPoly(XYZ, {(0, 2, 0): desc.one(), (3, 0, 0): -desc.one()}, desc),
         MPoly.variable(XYZ, "z", desc)]
    rep = theorem_main_harness(form, S, CUSP_LINE_SCRIPT)
    assert rep.ok, rep.diagnostics
    assert len(rep.records) == 12
    assert all(r.simple for r in rep.records)


def test_harness_flags_non_simple_point():
    S = [MPoly.variable(XYZ, "x", Q), MPoly.variable(XYZ, "y", Q)]
    rep = theorem_main_harness(_fibered_tangent(), S, [])
    assert not rep.ok
    assert any(not r.simple for r in rep.records)
