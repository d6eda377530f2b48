"""Residue indices of plane projective foliations and their sum laws."""

import cmath
import math
from fractions import Fraction

import pytest

from foliation_lab import (ProjFoliation, bb_index, cs_index, gsv_index,
                           localize_at, logarithmic_criterion,
                           plane_singularities, sum_theorem_check)
from foliation_lab.indices import _cs_over_branches, _local_branches
from foliation_lab.poly import MPoly
from foliation_lab.reduce2d import SADDLE_NODE

from conftest import (PROJ3, Q, UV, corpus2, log_plane_foliation, mk,
                      planes4_foliation, saddle_node_plane_foliation)


def test_projective_form_validation():
    X = MPoly.variable(PROJ3, "X", Q)
    Y = MPoly.variable(PROJ3, "Y", Q)
    Z = MPoly.variable(PROJ3, "Z", Q)
    fol = ProjFoliation((Y * Z, X * Z, -(X * Y) - (X * Y)), PROJ3)
    assert fol.degree == 1
    with pytest.raises(ValueError):
        ProjFoliation((Y * Z, X * Z, X * Y), PROJ3)  # Euler sum nonzero


def test_camacho_sad_on_linear_node():
    # v du + 2u dv: CS of {v=0} is -1/2, CS of {u=0} is -2
    node = corpus2()["node"][0]
    assert cs_index(node, mk(UV, {(0, 1): 1})).value.as_fraction() \
        == Fraction(-1, 2)
    assert cs_index(node, mk(UV, {(1, 0): 1})).value.as_fraction() == -2


def test_index_sums_along_one_line():
    fol, (X, Y, Z) = log_plane_foliation()
    rep = sum_theorem_check(fol, X)
    assert rep.degree == 1 and rep.curve_degree == 1
    assert rep.cs_sum.as_fraction() == 1          # d0^2
    assert rep.gsv_sum.as_fraction() == 2         # (d+2) d0 - d0^2
    assert rep.bb_sum.as_fraction() == 9          # (d+2)^2
    assert rep.cs_ok and rep.gsv_ok and rep.bb_ok


def test_index_sums_over_the_full_triangle():
    fol, (X, Y, Z) = log_plane_foliation()
    rep = sum_theorem_check(fol, X * Y * Z)
    assert rep.cs_sum.as_fraction() == 9
    assert rep.gsv_sum.as_fraction() == 0
    assert rep.bb_sum.as_fraction() == 9
    assert rep.cs_ok and rep.gsv_ok and rep.bb_ok


def test_baum_bott_values_at_the_three_vertices():
    fol, _ = log_plane_foliation()
    sings = plane_singularities(fol)
    got = {tuple(c.render() for c in s.point): bb_index(s).value.render()
           for s in sings}
    assert got == {
        ("0", "0", "1"): "2 + (-3/2)*rt(2)",
        ("0", "1", "0"): "2 + (2)*rt(2)",
        ("1", "0", "0"): "5 + (-1/2)*rt(2)",
    }
    # BB - CS - 2 GSV vanishes pointwise on the triangle
    X, Y, Z = (MPoly.variable(PROJ3, w, fol.desc) for w in PROJ3)
    C = X * Y * Z
    for s in sings:
        cl = localize_at(C, s)
        brs = _local_branches(cl, s.desc, 12)
        cs = _cs_over_branches(s.form, brs, 12)
        gsv = gsv_index(s.form, brs, g=cl).value
        bb = bb_index(s).value
        assert (bb - cs - gsv - gsv).is_zero()


def test_saddle_node_baum_bott_and_sums():
    fol, (X, Y, Z) = saddle_node_plane_foliation()
    sings = plane_singularities(fol)
    by_point = {tuple(c.render() for c in s.point): s for s in sings}
    sn = by_point[("0", "0", "1")]
    assert sn.code.kind == SADDLE_NODE
    # degenerate linear part: the value comes from CS + 2 GSV over both
    # separatrices of the germ
    assert bb_index(sn).value.as_fraction() == 5
    other = by_point[("0", "1", "0")]
    assert other.code.kind != SADDLE_NODE
    assert bb_index(other).value.as_fraction() == 4
    rep = sum_theorem_check(fol, X * Y)
    assert rep.cs_sum.as_fraction() == 4
    assert rep.gsv_sum.as_fraction() == 2
    assert rep.bb_sum.as_fraction() == 9
    assert rep.cs_ok and rep.gsv_ok and rep.bb_ok


def test_sum_check_rejects_non_invariant_curve():
    fol, (X, Y, Z) = log_plane_foliation()
    with pytest.raises(ValueError):
        sum_theorem_check(fol, X + Y)


def test_logarithmic_criterion_positive():
    fol, gens = planes4_foliation()
    S = gens[0] * gens[1] * gens[2] * gens[3]
    rep = logarithmic_criterion(fol, S, (1, 2, 3))
    assert rep.logarithmic
    assert rep.degree == 2 and rep.curve_degree == 4   # d0 = d + 2
    assert rep.slack == 0
    assert rep.sums.cs_sum.as_fraction() == 16
    assert rep.sums.gsv_sum.as_fraction() == 0
    assert rep.sums.bb_sum.as_fraction() == 16


def test_logarithmic_criterion_negative():
    fol, gens = planes4_foliation()
    S = gens[0] * gens[1] * gens[2]
    rep = logarithmic_criterion(fol, S, (1, 2, 3))
    assert not rep.logarithmic
    assert rep.curve_degree == 3 and rep.slack == 1
    assert rep.sums.cs_sum.as_fraction() == 9
    assert rep.sums.gsv_sum.as_fraction() == 3
    assert rep.sums.bb_sum.as_fraction() == 16
    assert rep.sums.cs_ok and rep.sums.gsv_ok and rep.sums.bb_ok


# --- floating contour oracle for the GSV index ------------------------------


def _num_eval(jet, z):
    total = 0j
    for e, c in jet.coeffs.items():
        total += c.to_complex() * z ** e[0]
    return total


def _winding(jet, r=1e-3, n=512):
    vals = [_num_eval(jet, r * cmath.exp(2j * math.pi * k / n))
            for k in range(n)]
    if max(abs(v) for v in vals) < 1e-30:
        return None
    total = 0.0
    for k in range(n):
        total += cmath.phase(vals[(k + 1) % n] / vals[k])
    return total / (2 * math.pi)


def _contour_gsv(form, branches, g):
    """Winding-number evaluation of the proportionality factor along each
    branch, mirroring the exact order computation numerically."""
    u, v = form.vars
    gu, gv = g.partial(u), g.partial(v)
    total = 0.0
    for br in branches:
        g1, g2 = br.param.components
        sub = {u: g1, v: g2}
        wu = _winding(gu.substitute(sub))
        wv = _winding(gv.substitute(sub))
        if wv is None or (wu is not None and wu <= wv + 0.5):
            total += _winding(form.A.substitute(sub)) - wu
        else:
            total += _winding(form.B.substitute(sub)) - wv
    return total


def _oracle_cases():
    logf, (X, Y, Z) = log_plane_foliation()
    snf, (XQ, YQ, ZQ) = saddle_node_plane_foliation()
    yield logf, X * Y * Z
    yield logf, X
    yield logf, Y
    yield logf, Z
    yield snf, XQ * YQ


def test_gsv_matches_floating_contour_oracle_everywhere():
    checked = 0
    for fol, C in _oracle_cases():
        for sing in plane_singularities(fol):
            cl = localize_at(C.coerce_to(sing.desc), sing)
            origin = {w: sing.desc.zero() for w in cl.vars}
            if not cl.evaluate(origin).is_zero():
                continue  # the curve misses this singular point
            branches = _local_branches(cl, sing.desc, 12)
            exact = gsv_index(sing.form, branches, g=cl).value.as_fraction()
            approx = _contour_gsv(sing.form, branches, cl)
            assert abs(approx - exact) < 1e-6, (sing.point, exact, approx)
            checked += 1
    assert checked >= 8
