"""Projective foliations and their index arithmetic.

Degree-d foliations of the projective plane (and 3-space) are given by
homogeneous 1-forms satisfying the Euler condition.  The module builds
logarithmic foliations from factor/residue data, locates the plane
singularities chart by chart, evaluates Camacho-Sad, Gomez-Mont-Seade-
Verjovski and Baum-Bott indices at reduced singular points, verifies the
classical index sum formulas, and decides the logarithmic criterion
through the pole degree of a plane section.
"""

from __future__ import annotations

from .fields import FieldDescriptor, FieldElement, WidenRequest, sort_key
from .forms import CurveJet, LocalDivisor, OneForm2, normalize2
from .poly import (
    MPoly,
    divides,
    gcd_bivariate,
    to_univariate,
    u_gcd,
    u_roots_in_tower,
)
from .reduce2d import SADDLE_NODE, classify_point2
from .separatrix import _scale_dir, _trace_graph
from .threefold import _resultant_eliminating

_UV = ("u", "v")


# ---------------------------------------------------------------------------
# projective 1-forms


def _homogeneous_degree(p: MPoly):
    """The degree of a homogeneous polynomial, or None for zero; raises
    for inhomogeneous input."""
    if p.is_zero():
        return None
    degs = {sum(e) for e in p.coeffs}
    if len(degs) != 1:
        raise ValueError("coefficient is not homogeneous")
    return degs.pop()


def _integrable4(coeffs, vars4) -> bool:
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                terms = (
                    coeffs[i] * (coeffs[k].partial(vars4[j])
                                 - coeffs[j].partial(vars4[k])),
                    coeffs[j] * (coeffs[i].partial(vars4[k])
                                 - coeffs[k].partial(vars4[i])),
                    coeffs[k] * (coeffs[j].partial(vars4[i])
                                 - coeffs[i].partial(vars4[j])),
                )
                if not (terms[0] + terms[1] + terms[2]).is_zero():
                    return False
    return True


class ProjFoliation:
    """A foliation of P^2 or P^3 by a homogeneous 1-form.

    Coefficients are homogeneous of degree d+1 where d is the degree of
    the foliation; the Euler contraction sum x_i A_i vanishes, and in
    four variables the form is integrable.
    """

    __slots__ = ("coeffs", "vars", "degree", "desc")

    def __init__(self, coeffs, variables=None):
        coeffs = tuple(coeffs)
        vars_ = tuple(variables) if variables is not None else coeffs[0].vars
        if len(coeffs) != len(vars_) or len(vars_) not in (3, 4):
            raise ValueError("a projective form needs 3 or 4 coefficients")
        desc = coeffs[0].desc
        degs = set()
        for p in coeffs:
            if p.prec is not None:
                raise ValueError("projective coefficients must be exact")
            d = _homogeneous_degree(p)
            if d is not None:
                degs.add(d)
        if len(degs) != 1:
            raise ValueError(
                "coefficients must be homogeneous of one common degree")
        euler = MPoly.zero(vars_, desc)
        for w, p in zip(vars_, coeffs):
            euler = euler + p * MPoly.variable(vars_, w, desc)
        if not euler.is_zero():
            raise ValueError("the Euler condition fails")
        if len(vars_) == 4 and not _integrable4(coeffs, vars_):
            raise ValueError("the form is not integrable")
        self.coeffs = coeffs
        self.vars = vars_
        self.degree = degs.pop() - 1
        self.desc = desc

    def coerce_to(self, desc: FieldDescriptor) -> "ProjFoliation":
        return ProjFoliation(tuple(p.coerce_to(desc) for p in self.coeffs),
                             self.vars)

    def __repr__(self):
        return "ProjFoliation(degree=%d, vars=%s)" % (self.degree, self.vars)


class LogarithmicData:
    """Factors and residues of a logarithmic form sum lam_i dF_i / F_i.

    The residues must balance the factor degrees (sum lam_i deg F_i = 0)
    and the product of factors must be reduced.
    """

    __slots__ = ("factors", "residues", "vars", "desc")

    def __init__(self, factors, residues):
        factors = tuple(factors)
        residues = tuple(residues)
        if len(factors) != len(residues) or not factors:
            raise ValueError("factors and residues must pair up")
        vars_ = factors[0].vars
        desc = factors[0].desc
        residues = tuple(lam if isinstance(lam, FieldElement)
                         else desc.rational(lam) for lam in residues)
        balance = desc.zero()
        for f, lam in zip(factors, residues):
            if f.vars != vars_ or f.prec is not None:
                raise ValueError("factors must be exact and share variables")
            d = _homogeneous_degree(f)
            if d is None or d < 1:
                raise ValueError("factors must be nonzero and homogeneous")
            balance = balance + lam * desc.rational(d)
        if not balance.is_zero():
            raise ValueError("the residue condition sum lam_i deg F_i = 0 fails")
        for i, f in enumerate(factors):
            for g in factors[i + 1:]:
                if divides(f, g) or divides(g, f):
                    raise ValueError("the factor product is not reduced")
        self.factors = factors
        self.residues = residues
        self.vars = vars_
        self.desc = desc

    def surface_degree(self) -> int:
        return sum(_homogeneous_degree(f) for f in self.factors)

    def degree(self) -> int:
        return self.surface_degree() - 2

    def surface(self) -> MPoly:
        out = MPoly.constant(self.vars, 1, self.desc)
        for f in self.factors:
            out = out * f
        return out


def logarithmic_build(data: LogarithmicData) -> ProjFoliation:
    """The polynomial form F_1...F_l * sum lam_i dF_i / F_i."""
    desc = data.desc
    vars_ = data.vars
    coeffs = []
    for w in vars_:
        acc = MPoly.zero(vars_, desc)
        for i, (f, lam) in enumerate(zip(data.factors, data.residues)):
            term = f.partial(w).scale(lam)
            for j, g in enumerate(data.factors):
                if j != i:
                    term = term * g
            acc = acc + term
        coeffs.append(acc)
    return ProjFoliation(tuple(coeffs), vars_)


# ---------------------------------------------------------------------------
# plane singularities


class PlaneSingularity:
    """One singular point of a plane projective foliation.

    `point` is a normalized homogeneous coordinate triple, `chart` the
    variable set to one, and `form` the translated affine local 1-form in
    (u, v); `code` and `linear` come from the plane classification.
    """

    __slots__ = ("point", "chart", "base", "form", "code", "well_oriented",
                 "linear", "desc")

    def __init__(self, point, chart, base, form, code, well_oriented, linear):
        self.point = tuple(point)
        self.chart = chart
        self.base = tuple(base)
        self.form = form
        self.code = code
        self.well_oriented = well_oriented
        self.linear = linear
        self.desc = form.desc

    def __repr__(self):
        return "PlaneSingularity(%s-chart, %s)" % (self.chart, self.code.kind)


def _dehomog(p: MPoly, drop: int) -> MPoly:
    """Set variable `drop` to one; remaining two become (u, v) in order."""
    desc = p.desc
    coeffs = {}
    for e, c in p.coeffs.items():
        rest = tuple(k for j, k in enumerate(e) if j != drop)
        prev = coeffs.get(rest)
        coeffs[rest] = c if prev is None else prev + c
    return MPoly(_UV, {e: c for e, c in coeffs.items() if not c.is_zero()},
                 desc)


_CHART_DROP = {"Z": 2, "Y": 1, "X": 0}


def localize_at(p: MPoly, sing: PlaneSingularity) -> MPoly:
    """Local equation of a homogeneous polynomial at a singular point."""
    q = _dehomog(p.coerce_to(sing.desc), _CHART_DROP[sing.chart])
    return q.translate({"u": sing.base[0], "v": sing.base[1]})


def _affine_common_roots(a: MPoly, b: MPoly, desc: FieldDescriptor):
    """Common zeros of two exact bivariate polynomials, as (u, v) pairs."""
    if a.is_zero() or b.is_zero():
        raise ValueError("the singular locus is positive-dimensional")
    if gcd_bivariate(a, b).degree() > 0:
        raise ValueError("the singular locus is positive-dimensional")
    if a.degree_in("v") == 0 and b.degree_in("v") == 0:
        g = u_gcd(to_univariate(a, "u"), to_univariate(b, "u"), desc)
        if len(g) > 1:
            raise ValueError("the singular locus is positive-dimensional")
        return []
    res = _resultant_eliminating(a, b, "v", desc)
    if all(c.is_zero() for c in res):
        raise ValueError("the singular locus is positive-dimensional")
    points = []
    for x0 in u_roots_in_tower(res, desc):
        ca = to_univariate(a.restrict({"u": x0}), "v")
        cb = to_univariate(b.restrict({"u": x0}), "v")
        if not ca or not cb:
            common = ca or cb
        else:
            common = u_gcd(ca, cb, desc)
        if len(common) <= 1:
            continue
        for y0 in u_roots_in_tower(common, desc):
            points.append((x0, y0))
    return points


def plane_singularities(fol: ProjFoliation, jet_order: int = 8):
    """All singular points over the field tower, with affine local forms."""
    if len(fol.vars) != 3:
        raise ValueError("plane singularities need a 3-variable form")
    desc = fol.desc
    while True:
        try:
            return _plane_sings(fol.coerce_to(desc), jet_order)
        except WidenRequest as w:
            desc = desc.widened(w.m)


def _classified(point, chart, base, a, b, jet_order):
    form = OneForm2(a.translate({"u": base[0], "v": base[1]}),
                    b.translate({"u": base[0], "v": base[1]}), _UV)
    code, well, M = classify_point2(form, LocalDivisor.empty(), jet_order)
    return PlaneSingularity(point, chart, base, form, code, well, M)


def _plane_sings(fol: ProjFoliation, jet_order: int):
    desc = fol.desc
    zero, one = desc.zero(), desc.one()
    A, B, C = fol.coeffs
    sings = []
    # chart Z = 1, coordinates (X, Y)
    a, b = _dehomog(A, 2), _dehomog(B, 2)
    pts = _affine_common_roots(a, b, desc)
    for x0, y0 in sorted(pts, key=lambda p: (sort_key(p[0]), sort_key(p[1]))):
        sings.append(_classified((x0, y0, one), "Z", (x0, y0), a, b,
                                 jet_order))
    # chart Y = 1 restricted to Z = 0, coordinates (X, Z)
    a, c = _dehomog(A, 1), _dehomog(C, 1)
    ra = to_univariate(a.restrict({"v": zero}), "u")
    rc = to_univariate(c.restrict({"v": zero}), "u")
    if not ra and not rc:
        raise ValueError("the singular locus is positive-dimensional")
    common = (ra or rc) if not (ra and rc) else u_gcd(ra, rc, desc)
    if len(common) > 1:
        for x0 in u_roots_in_tower(common, desc):
            sings.append(_classified((x0, one, zero), "Y", (x0, zero), a, c,
                                     jet_order))
    # chart X = 1 at the single point Y = Z = 0
    origin = {"u": zero, "v": zero}
    b, c = _dehomog(B, 0), _dehomog(C, 0)
    if b.evaluate(origin).is_zero() and c.evaluate(origin).is_zero():
        sings.append(_classified((one, zero, zero), "X", (zero, zero), b, c,
                                 jet_order))
    return sings


# ---------------------------------------------------------------------------
# index values


class IndexValue:
    """A residue-type index: exact value, kind, and anchor data."""

    __slots__ = ("value", "kind", "anchor", "nonsingular")

    def __init__(self, value: FieldElement, kind: str, anchor=None,
                 nonsingular=False):
        self.value = value
        self.kind = kind
        self.anchor = anchor
        self.nonsingular = nonsingular

    def __repr__(self):
        return "IndexValue(%s, %s)" % (self.kind, self.value)


def _u_list(p: MPoly, var: str, other: str, N: int):
    """Coefficients in `var` of a two-variable jet restricted to other=0."""
    i = p.vars.index(var)
    j = p.vars.index(other)
    out = [p.desc.zero()] * (N + 1)
    for e, c in p.coeffs.items():
        if e[j] == 0 and e[i] <= N:
            out[e[i]] = out[e[i]] + c
    return out


def _u_trimmed(c):
    n = len(c)
    while n and c[n - 1].is_zero():
        n -= 1
    return c[:n]


def _u_inverse(c, N: int):
    """First N coefficients of the reciprocal of a unit coefficient list."""
    inv0 = c[0].inverse()
    out = [inv0]
    zero = c[0].desc.zero()
    for k in range(1, N):
        s = zero
        for j in range(1, min(k, len(c) - 1) + 1):
            s = s + c[j] * out[k - j]
        out.append(-(s * inv0))
    return out


def _residue(n, m, desc: FieldDescriptor) -> FieldElement:
    """Residue at the origin of the Laurent series n(t)/m(t)."""
    m = _u_trimmed(list(m))
    if not m:
        raise ValueError("residue of a series over the zero denominator")
    r = 0
    while m[r].is_zero():
        r += 1
    if r == 0:
        return desc.zero()
    inv = _u_inverse(m[r:], r)
    out = desc.zero()
    for j in range(r):
        if j < len(n):
            out = out + n[j] * inv[r - 1 - j]
    return out


def _graph_series(f: MPoly, solve: str, N: int) -> MPoly:
    """Series s with f(u, s(u)) = 0 (or symmetric) for a smooth implicit
    jet f; returned as a polynomial in the free variable only."""
    desc = f.desc
    u, v = f.vars
    dep, free = (v, u) if solve == v else (u, v)
    fd0 = f.coefficient(tuple(1 if w == dep else 0 for w in f.vars))
    if fd0.is_zero():
        raise ValueError("the branch is not a graph in this direction")
    inv = fd0.inverse()
    i_free = f.vars.index(free)
    free_p = MPoly.variable(f.vars, free, desc, prec=N + 1)
    dep_p = MPoly.variable(f.vars, dep, desc, prec=N + 1)
    s = MPoly.zero(f.vars, desc, prec=N + 1)
    for k in range(1, N + 1):
        e = f.substitute({free: free_p, dep: s})
        mono = tuple(k if w == free else 0 for w in f.vars)
        t = e.coefficient(mono)
        if not t.is_zero():
            s = s - (free_p ** k).scale(t * inv)
    return s


def cs_index(form: OneForm2, branch, N: int = 12) -> IndexValue:
    """Camacho-Sad index of a smooth invariant branch at the origin.

    The branch is straightened to a coordinate axis and the index is the
    residue of the straightened form's axis coefficient ratio.
    """
    f = branch.implicit if hasattr(branch, "implicit") else branch
    form = normalize2(form)
    desc = form.desc
    u, v = form.vars
    lu = f.coefficient(tuple(1 if w == u else 0 for w in f.vars))
    lv = f.coefficient(tuple(1 if w == v else 0 for w in f.vars))
    if lu.is_zero() and lv.is_zero():
        raise ValueError("the Camacho-Sad branch must be smooth")
    uu = MPoly.variable(form.vars, u, desc, prec=N + 1)
    vv = MPoly.variable(form.vars, v, desc, prec=N + 1)
    if not lv.is_zero():
        s = _graph_series(f, v, N)
        sub = {u: uu, v: vv + s}
        sp = s.partial(u)
        a_new = form.A.substitute(sub) + form.B.substitute(sub) * sp
        b_new = form.B.substitute(sub)
        along, dep = u, v
    else:
        s = _graph_series(f, u, N)
        sub = {u: uu + s, v: vv}
        sp = s.partial(v)
        a_new = form.B.substitute(sub) + form.A.substitute(sub) * sp
        b_new = form.A.substitute(sub)
        along, dep = v, u
    tail = _u_list(a_new, along, dep, N)
    if any(not c.is_zero() for c in tail[:max(N - 1, 0)]):
        raise ValueError("the branch is not invariant")
    i_a = form.vars.index(along)
    i_d = form.vars.index(dep)
    n = [desc.zero()] * (N + 1)
    for e, c in a_new.coeffs.items():
        if e[i_d] == 1 and e[i_a] <= N:
            n[e[i_a]] = n[e[i_a]] + c
    m = _u_list(b_new, along, dep, N)
    return IndexValue(-_residue(n, m, desc), "CS", anchor=f)


def _param_t(s: MPoly, free: str) -> MPoly:
    """A one-variable (u or v) polynomial rewritten in the parameter t."""
    i = s.vars.index(free)
    return MPoly(("t",), {(e[i],): c for e, c in s.coeffs.items()}, s.desc,
                 s.prec)


def _jet_order(p: MPoly):
    return None if p.is_zero() else p.order()


def gsv_index(form: OneForm2, branches, g: MPoly = None,
              N: int = 12) -> IndexValue:
    """GSV index of the curve defined by `branches` (equation g).

    Along each branch the form is proportional to dg; the index is the
    total vanishing order of the proportionality factor, which realizes
    the decomposition route omega = h dg + g eta branch by branch.
    """
    form = normalize2(form)
    desc = form.desc
    u, v = form.vars
    zero = {u: desc.zero(), v: desc.zero()}
    if not (form.A.evaluate(zero).is_zero()
            and form.B.evaluate(zero).is_zero()):
        # regular point on a smooth invariant branch: conventional value
        return IndexValue(desc.one(), "GSV", nonsingular=True)
    branches = list(branches)
    if g is None:
        g = MPoly.constant(form.vars, 1, desc)
        for br in branches:
            g = g * (br.implicit if hasattr(br, "implicit") else br)
    gu, gv = g.partial(u), g.partial(v)
    total = 0
    for br in branches:
        g1, g2 = br.param.components
        sub = {u: g1, v: g2}
        a_g, b_g = form.A.substitute(sub), form.B.substitute(sub)
        gu_g, gv_g = gu.substitute(sub), gv.substitute(sub)
        cross = a_g * gv_g - b_g * gu_g
        if not cross.is_zero() and cross.order() < N - 2:
            raise ValueError("the branch is not invariant")
        ou, ov = _jet_order(gu_g), _jet_order(gv_g)
        if ou is None and ov is None:
            raise ValueError("the curve equation degenerates on the branch")
        if ov is None or (ou is not None and ou <= ov):
            num, den = _jet_order(a_g), ou
        else:
            num, den = _jet_order(b_g), ov
        if num is None:
            raise ValueError("the proportionality factor vanishes on the "
                             "branch to the computed order")
        total += num - den
    return IndexValue(desc.rational(total), "GSV")


def bb_index(sing: PlaneSingularity, N: int = 12) -> IndexValue:
    """Baum-Bott index at a reduced singular point.

    Non-degenerate points use tr^2/det of the dual linear part; at
    saddle-nodes the value is obtained through BB = CS + 2 GSV over the
    complete local separatrix set.
    """
    M = sing.linear
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if not det.is_zero():
        return IndexValue(tr * tr / det, "BB", anchor=sing.point)
    if sing.code.kind != SADDLE_NODE:
        raise ValueError("Baum-Bott needs a non-degenerate point or a "
                         "saddle-node")
    branches = _germ_branches(sing.form, sing.code, N)
    cs = _cs_over_branches(sing.form, branches, N)
    gsv = gsv_index(sing.form, branches, N=N).value
    return IndexValue(cs + gsv + gsv, "BB", anchor=sing.point)


class _CurveBranch:
    __slots__ = ("param", "implicit")

    def __init__(self, param, implicit):
        self.param = param
        self.implicit = implicit


def _germ_branches(form: OneForm2, code, N: int):
    """Both separatrix branches of a reduced germ, as jets."""
    form = normalize2(form)
    d1 = _scale_dir(code.strong)
    d2 = _scale_dir(code.weak)
    out = []
    for d, other in ((d1, d2), (d2, d1)):
        param, implicit = _trace_graph(form, d, other, N)
        out.append(_CurveBranch(param, implicit))
    return out


def _intersection_order(br_i: _CurveBranch, br_j: _CurveBranch) -> int:
    g1, g2 = br_i.param.components
    pulled = br_j.implicit.substitute(
        {br_j.implicit.vars[0]: g1, br_j.implicit.vars[1]: g2})
    if pulled.is_zero():
        raise ValueError("curve branches coincide")
    return pulled.order()


def _cs_over_branches(form: OneForm2, branches, N: int) -> FieldElement:
    """CS of the (possibly multi-branch) curve: branch indices plus twice
    the pairwise intersection orders."""
    desc = form.desc
    out = desc.zero()
    for br in branches:
        out = out + cs_index(form, br, N).value
    for i in range(len(branches)):
        for j in range(i + 1, len(branches)):
            k = _intersection_order(branches[i], branches[j])
            out = out + desc.rational(2 * k)
    return out


# ---------------------------------------------------------------------------
# local branches of an invariant algebraic curve


def _local_branches(c: MPoly, desc: FieldDescriptor, N: int):
    """Smooth branches of a reduced curve jet with distinct tangents.

    Returns _CurveBranch objects; raises when a branch is singular or
    tangencies make the configuration unresolvable here.
    """
    if c.is_zero():
        raise ValueError("the local curve equation vanishes identically")
    origin = {w: desc.zero() for w in c.vars}
    if not c.evaluate(origin).is_zero():
        return []
    m = c.order()
    i_u = c.vars.index(c.vars[0])
    # tangent cone roots as slopes lambda of v = lambda u
    lam = [desc.zero()] * (m + 1)
    for e, coeff in c.coeffs.items():
        if sum(e) == m:
            lam[e[1 - i_u]] = coeff
    plam = _u_trimmed(lam)
    vertical = m - (len(plam) - 1)
    if vertical > 1:
        raise ValueError("the curve has a multiple vertical tangent")
    branches = []
    if len(plam) > 1:
        roots = u_roots_in_tower(plam, desc)
        if len(roots) < len(plam) - 1:
            raise ValueError("the curve has coincident tangent directions")
        for slope in roots:
            s = _multi_graph(c, slope, m, N)
            implicit = (MPoly.variable(c.vars, c.vars[1], desc, N + 1) - s)
            branches.append(_CurveBranch(
                CurveJet((MPoly.variable(("t",), "t", desc, N + 1),
                          _param_t(s, c.vars[0]))), implicit))
    if vertical == 1:
        cs = MPoly(c.vars, {(e[1], e[0]): k for e, k in c.coeffs.items()},
                   desc, c.prec)
        s = _multi_graph(cs, desc.zero(), m, N)
        implicit = (MPoly.variable(c.vars, c.vars[0], desc, N + 1)
                    - MPoly(c.vars, {(e[1], e[0]): k
                                     for e, k in s.coeffs.items()}, desc,
                            s.prec))
        branches.append(_CurveBranch(
            CurveJet((_param_t(s, c.vars[0]),
                      MPoly.variable(("t",), "t", desc, N + 1))), implicit))
    return branches


def _multi_graph(c: MPoly, slope: FieldElement, m: int, N: int) -> MPoly:
    """Graph series of the single branch of c tangent to v = slope*u,
    through a product of branches with distinct tangents."""
    desc = c.desc
    u, v = c.vars
    uu = MPoly.variable(c.vars, u, desc, prec=N + m)
    s = uu.scale(slope)
    cv = c.partial(v)
    eta = cv.substitute({u: uu, v: s}).coefficient(
        tuple(m - 1 if w == u else 0 for w in c.vars))
    if eta.is_zero():
        raise ValueError("the tangent direction is not a simple branch")
    inv = eta.inverse()
    i_u = c.vars.index(u)
    for k in range(2, N + 1):
        e = c.substitute({u: uu, v: s})
        mono = tuple(m - 1 + k if w == u else 0 for w in c.vars)
        t = e.coefficient(mono)
        low = [ee for ee, cc in e.coeffs.items()
               if ee[1 - i_u] == 0 and ee[i_u] < m - 1 + k
               and not cc.is_zero()]
        if low:
            raise ValueError("the tangent direction is not a simple branch")
        if not t.is_zero():
            s = s - (uu ** k).scale(t * inv)
    return s


# ---------------------------------------------------------------------------
# sum theorems


class SumReport:
    """Exact evaluation of the three classical index sums."""

    __slots__ = ("degree", "curve_degree", "cs_sum", "gsv_sum", "bb_sum",
                 "cs_ok", "gsv_ok", "bb_ok", "points")

    def __init__(self, degree, curve_degree, cs_sum, gsv_sum, bb_sum, desc,
                 points):
        self.degree = degree
        self.curve_degree = curve_degree
        self.cs_sum = cs_sum
        self.gsv_sum = gsv_sum
        self.bb_sum = bb_sum
        d, d0 = degree, curve_degree
        self.cs_ok = (cs_sum - desc.rational(d0 * d0)).is_zero()
        self.gsv_ok = (gsv_sum
                       - desc.rational((d + 2) * d0 - d0 * d0)).is_zero()
        self.bb_ok = (bb_sum - desc.rational((d + 2) ** 2)).is_zero()
        self.points = tuple(points)

    @property
    def ok(self) -> bool:
        return self.cs_ok and self.gsv_ok and self.bb_ok

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return ("SumReport(CS=%s %s, GSV=%s %s, BB=%s %s)"
                % (self.cs_sum, self.cs_ok, self.gsv_sum, self.gsv_ok,
                   self.bb_sum, self.bb_ok))


def _check_invariant_curve(fol: ProjFoliation, C: MPoly):
    vars_ = fol.vars
    parts = [C.partial(w) for w in vars_]
    n = len(vars_)
    for i in range(n):
        for j in range(i + 1, n):
            comp = fol.coeffs[i] * parts[j] - fol.coeffs[j] * parts[i]
            if not comp.is_zero() and not divides(comp, C):
                raise ValueError("the declared curve is not invariant")


def sum_theorem_check(fol: ProjFoliation, C: MPoly, jet_order: int = 8,
                      N: int = 12) -> SumReport:
    """Verify CS over C = d0^2, GSV over C = (d+2)d0 - d0^2, and the
    global BB sum (d+2)^2, all exactly."""
    if len(fol.vars) != 3 or C.vars != fol.vars:
        raise ValueError("the sum theorems run on plane foliations")
    d0 = _homogeneous_degree(C)
    if d0 is None:
        raise ValueError("the invariant curve must be nonzero")
    desc = fol.desc
    while True:
        try:
            return _sum_check(fol.coerce_to(desc), C.coerce_to(desc), d0,
                              jet_order, N)
        except WidenRequest as w:
            desc = desc.widened(w.m)


def _sum_check(fol, C, d0, jet_order, N):
    _check_invariant_curve(fol, C)
    sings = plane_singularities(fol, jet_order)
    desc = sings[0].desc if sings else fol.desc
    cs_sum = desc.zero()
    gsv_sum = desc.zero()
    bb_sum = desc.zero()
    points = []
    for sing in sings:
        bb = bb_index(sing, N).value
        bb_sum = bb_sum + bb
        entry = {"point": sing.point, "bb": bb}
        cl = localize_at(C, sing)
        origin = {w: sing.desc.zero() for w in cl.vars}
        if cl.evaluate(origin).is_zero():
            branches = _local_branches(cl, sing.desc, N)
            cs = _cs_over_branches(sing.form, branches, N)
            gsv = gsv_index(sing.form, branches, g=cl, N=N).value
            cs_sum = cs_sum + cs
            gsv_sum = gsv_sum + gsv
            entry["cs"] = cs
            entry["gsv"] = gsv
        points.append(entry)
    return SumReport(fol.degree, d0, cs_sum, gsv_sum, bb_sum, desc, points)


# ---------------------------------------------------------------------------
# logarithmic criterion on projective 3-space


class LogCriterionReport:
    """Verdict of the pole-degree characterization d0 = d + 2."""

    __slots__ = ("degree", "curve_degree", "slack", "logarithmic", "sums",
                 "hypotheses")

    def __init__(self, degree, curve_degree, sums, hypotheses):
        self.degree = degree
        self.curve_degree = curve_degree
        self.slack = (curve_degree - (degree + 2)) ** 2
        self.logarithmic = curve_degree == degree + 2 and sums.ok
        self.sums = sums
        self.hypotheses = dict(hypotheses)

    def __bool__(self):
        return self.logarithmic

    def __repr__(self):
        return ("LogCriterionReport(logarithmic=%s, d0=%d, d=%d, slack=%d)"
                % (self.logarithmic, self.curve_degree, self.degree,
                   self.slack))


def logarithmic_criterion(fol: ProjFoliation, S: MPoly, section,
                          hypotheses=None, jet_order: int = 8,
                          N: int = 12) -> LogCriterionReport:
    """Decide d0 = d + 2 through a plane section W = a X + b Y + c Z.

    `S` is the declared invariant surface; `section` gives (a, b, c).
    Caller-asserted hypotheses (separatrix containment, first integrals)
    are recorded verbatim in the report.
    """
    if len(fol.vars) != 4:
        raise ValueError("the logarithmic criterion runs in four variables")
    desc = fol.desc
    if S.vars != fol.vars or _homogeneous_degree(S) is None:
        raise ValueError("the invariant surface must be homogeneous")
    parts = [S.partial(w) for w in fol.vars]
    for i in range(4):
        for j in range(i + 1, 4):
            comp = fol.coeffs[i] * parts[j] - fol.coeffs[j] * parts[i]
            if not comp.is_zero() and not divides(comp, S):
                raise ValueError("the declared surface is not invariant")
    plane_vars = ("X", "Y", "Z")
    gens = [MPoly.variable(plane_vars, w, desc) for w in plane_vars]
    coeffs_abc = [c if isinstance(c, FieldElement) else desc.rational(c)
                  for c in section]
    img_w = (gens[0].scale(coeffs_abc[0]) + gens[1].scale(coeffs_abc[1])
             + gens[2].scale(coeffs_abc[2]))
    mapping = dict(zip(fol.vars, gens + [img_w]))
    pulled = [p.substitute(mapping) for p in fol.coeffs]
    sec_coeffs = tuple(pulled[i] + pulled[3].scale(coeffs_abc[i])
                       for i in range(3))
    if all(p.is_zero() for p in sec_coeffs):
        raise ValueError("the section plane is invariant, not transversal")
    C = S.substitute(mapping)
    if C.is_zero():
        raise ValueError("the section plane lies inside the surface")
    sec = ProjFoliation(sec_coeffs, plane_vars)
    sums = sum_theorem_check(sec, C, jet_order, N)
    return LogCriterionReport(sec.degree, _homogeneous_degree(C), sums,
                              hypotheses or {})
