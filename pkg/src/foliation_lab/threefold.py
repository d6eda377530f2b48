"""Three-variable singularities: dimensional type, simple-model matching,
plane sections and the blow-up script harness.

A germ in three variables is matched against the list of simple models:
the nonresonant linear model, the three saddle-node shaped models with a
resonant series factor, and the cylinder cases over the plane models.
Sections by embedded planes pull the foliation back to two variables
where the plane reduction machinery applies; a seeded family of sections
drives the section-based second-type test.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd as _igcd

from .fields import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    FieldExtensionError,
    WidenRequest,
    _fraction_sqrt,
    sort_key,
)
from .forms import (
    DivisorBranch,
    LocalDivisor,
    OneForm2,
    OneForm3,
    PrecisionError,
    integrable3,
    invariant_surface3,
    normalize2,
    normalize3,
    nu0,
)
from .blowup import blowup_curve3, blowup_point3
from .linalg import nullspace
from .poly import (
    MPoly,
    exact_divide,
    to_univariate,
    u_gcd,
    u_resultant,
    u_roots_in_tower,
    u_eval,
    vanishing_order,
)
from .reduce2d import (
    NON_SIMPLE,
    REGULAR,
    SADDLE_NODE,
    SIMPLE,
    ReductionError,
    classify_point2,
    is_second_type2,
)

SIMPLE_CORNER = "SimpleCorner"
TRACE = "Trace"


class InconclusiveError(FieldError):
    """A three-variable question could not be settled by these methods."""


# ---------------------------------------------------------------------------
# dimensional type


def _degree_monomials(top: int):
    """All exponent triples of total degree at most `top`."""
    out = []
    for d in range(top + 1):
        for e1 in range(d + 1):
            for e2 in range(d - e1 + 1):
                out.append((e1, e2, d - e1 - e2))
    return out


def _cylinder_candidate(form: OneForm3, order: int):
    """Constant part of a polynomial vector field X of degree below
    `order` with i_X(form) = 0 modulo degree `order`, or None."""
    desc = form.desc
    zero = desc.zero()
    monos = _degree_monomials(order - 1)
    idx = {e: j for j, e in enumerate(monos)}
    n = len(monos)
    rows_map = {}
    for i, coeff in enumerate(form.coeffs()):
        for ec, c in coeff.coeffs.items():
            dc = sum(ec)
            if dc > order or c.is_zero():
                continue
            for ex in monos:
                if sum(ex) + dc > order:
                    continue
                m = (ex[0] + ec[0], ex[1] + ec[1], ex[2] + ec[2])
                col = i * n + idx[ex]
                row = rows_map.setdefault(m, {})
                prev = row.get(col)
                row[col] = c if prev is None else prev + c
    rows = [[row.get(j, zero) for j in range(3 * n)]
            for _, row in sorted(rows_map.items())]
    const = [i * n + idx[(0, 0, 0)] for i in range(3)]
    for vec in nullspace(rows, 3 * n, desc):
        v = tuple(vec[c] for c in const)
        if any(not c.is_zero() for c in v):
            return v
    return None


def _formal_cylinder_direction(form: OneForm3, jet_order: int = 8):
    """Constant part X(0) of a formal vector field X with X(0) != 0 and
    i_X(form) = 0, decided on jets, or None.

    By integrability such a field is an infinitesimal symmetry tangent to
    the foliation, so the germ is a cylinder along X(0) even when the
    straightening change of coordinates is only formal.  A cheap
    low-order pass filters out most points before the confirming solve.
    """
    if _cylinder_candidate(form, 4) is None:
        return None
    return _cylinder_candidate(form, min(6, max(4, jet_order)))


def dimensional_type(form: OneForm3, jet_order: int = 8) -> int:
    """Smallest number of variables needed to define the germ: 1, 2 or 3.

    1 means the point is regular.  2 is detected through a formal vector
    field with nonzero constant part annihilating the form on jets; by
    integrability the germ is then a cylinder along that direction.
    """
    form = normalize3(form)
    desc = form.desc
    zero = {w: desc.zero() for w in form.vars}
    if any(not p.evaluate(zero).is_zero() for p in form.coeffs()):
        return 1
    return 2 if _formal_cylinder_direction(form, jet_order) is not None else 3


def cylinder_direction(form: OneForm3):
    """The coordinate along which the germ is a cylinder, or None.

    Only coordinate-axis directions are recognized (the cylinder itself
    may be dressed by a formal straightening); a cylinder along a skew
    direction raises InconclusiveError.
    """
    form = normalize3(form)
    for i, w in enumerate(form.vars):
        coeff = form.coeffs()[i]
        others = [p for j, p in enumerate(form.coeffs()) if j != i]
        if coeff.is_zero() and all(p.degree_in(w) == 0 for p in others):
            return w
    v = _formal_cylinder_direction(form)
    if v is None:
        return None
    axes = [i for i, c in enumerate(v) if not c.is_zero()]
    if len(axes) == 1:
        return form.vars[axes[0]]
    raise InconclusiveError(
        "cylinder direction is not a coordinate axis in these coordinates")


# ---------------------------------------------------------------------------
# simple-model matching


class Model3Match:
    """Result of matching a germ against the simple models.

    `code` is one of A, B1, B2, B3 (three-variable models), a, b1, b2
    (cylinders over the plane models) or NotSimple.  `weak_planes` holds
    local equations of the weak separatrix surfaces of the saddle-node
    shaped models.
    """

    __slots__ = ("code", "tau", "residues", "powers", "phi",
                 "weak_planes", "permutation")

    def __init__(self, code, tau, residues=(), powers=(), phi=None,
                 weak_planes=(), permutation=(0, 1, 2)):
        self.code = code
        self.tau = tau
        self.residues = tuple(residues)
        self.powers = tuple(powers)
        self.phi = phi
        self.weak_planes = tuple(weak_planes)
        self.permutation = tuple(permutation)

    def is_simple(self) -> bool:
        return self.code != "NotSimple"

    def __repr__(self):
        return "Model3Match(%s, tau=%d)" % (self.code, self.tau)


def _perm_poly(p: MPoly, perm):
    coeffs = {tuple(e[perm[i]] for i in range(3)): c
              for e, c in p.coeffs.items()}
    return MPoly(p.vars, coeffs, p.desc, p.prec)


def _series_quot(p: MPoly, q: MPoly, N: int):
    """p / q truncated at order N; q must be a unit series."""
    if p.is_zero():
        return MPoly.zero(p.vars, p.desc, N)
    return exact_divide(p.truncate(N), q.truncate(N))


def _residue_series(p: MPoly, divisors, N: int):
    """p divided by the product of coordinate variables in `divisors`."""
    if p.is_zero():
        return MPoly.zero(p.vars, p.desc, N)
    q = p
    for w in divisors:
        if q.min_exponent_in(w) < 1:
            return None
        q = q.divide_var_power(w, 1)
    return q.truncate(N) if q.prec is None or q.prec > N else q


def _lead_term(q: MPoly):
    e = min(q.coeffs, key=lambda t: (sum(t), t))
    return e, q.coeffs[e]


def _phi_from_series(q: MPoly, pvec):
    """Interpret q as lam * phi(x^p1 y^p2 z^p3) with phi of leading
    coefficient one; returns (phi_jet, lam) or None when q is not a
    series in that single monomial."""
    desc = q.desc
    terms = {}
    axis = next(i for i, p in enumerate(pvec) if p)
    for e, c in q.coeffs.items():
        k, rem = divmod(e[axis], pvec[axis])
        if rem or k < 1 or any(e[i] != k * pvec[i] for i in range(3)):
            return None
        terms[k] = c
    if not terms:
        return None
    kmin = min(terms)
    lam = terms[kmin]
    inv = lam.inverse()
    phi = MPoly(("s",), {(k,): c * inv for k, c in terms.items()}, desc,
                prec=None if q.prec is None else max(
                    1, q.prec // max(1, sum(pvec))))
    return phi, lam


def _positive_rational(r: FieldElement):
    if r.is_rational():
        f = r.as_fraction()
        if f > 0:
            return f
    return None


def _pair_nonresonant(l2: FieldElement, l3: FieldElement) -> bool:
    """No relation m2*l2 + m3*l3 = 0 with m2, m3 >= 0 not both zero."""
    if l2.is_zero() or l3.is_zero():
        # one vanishing residue is tolerated; the relation with the other
        # alone is then excluded by its nonvanishing
        return not (l2.is_zero() and l3.is_zero())
    r = l2 / l3
    return not (r.is_rational() and r.as_fraction() < 0)


def _fully_nonresonant(lams, bound: int) -> bool:
    """No relation m . lam = 0 with m in Z_{>=0}^3 \\ 0, |m| <= bound."""
    for total in range(1, bound + 1):
        for m1 in range(total + 1):
            for m2 in range(total - m1 + 1):
                m3 = total - m1 - m2
                s = lams[0].desc.zero()
                for m, lam in zip((m1, m2, m3), lams):
                    if m:
                        s = s + lam * lam.desc.rational(m)
                if s.is_zero():
                    return False
    return True


def _match_tau3(form: OneForm3, jet_order: int, resonance_bound: int):
    desc = form.desc
    vars3 = form.vars
    for perm in itertools.permutations(range(3)):
        A = _perm_poly(form.coeffs()[perm[0]], perm)
        B = _perm_poly(form.coeffs()[perm[1]], perm)
        C = _perm_poly(form.coeffs()[perm[2]], perm)
        x, y, z = vars3
        a = _residue_series(A, (y, z), jet_order)
        b = _residue_series(B, (x, z), jet_order)
        c = _residue_series(C, (x, y), jet_order)
        if a is None or b is None or c is None:
            continue
        zero = {w: desc.zero() for w in vars3}
        a0, b0, c0 = (p.evaluate(zero) for p in (a, b, c))
        if a0.is_zero():
            continue
        plane = lambda i: MPoly.variable(vars3, vars3[perm[i]], desc)
        if not b0.is_zero() and not c0.is_zero():
            # model B3 first: a positive integer residue vector carrying a
            # resonant monomial.  Tried before model A because integer
            # residue ratios always pass the zero-sum non-resonance check
            # yet the germ need not be linearizable.
            r2 = _positive_rational(b0 / a0)
            r3 = _positive_rational(c0 / a0)
            if r2 is not None and r3 is not None:
                den = r2.denominator * r3.denominator // _igcd(
                    r2.denominator, r3.denominator)
                p1, p2, p3 = den, int(r2 * den), int(r3 * den)
                g = _igcd(_igcd(p1, p2), p3)
                p1, p2, p3 = p1 // g, p2 // g, p3 // g
                p1e = desc.rational(p1)
                qb = _series_quot(b.scale(p1e), a, jet_order)
                qc = _series_quot(c.scale(p1e), a, jet_order)
                if qb is not None and qc is not None:
                    qb = qb - MPoly.constant(vars3, desc.rational(p2), desc,
                                             jet_order)
                    qc = qc - MPoly.constant(vars3, desc.rational(p3), desc,
                                             jet_order)
                    got = _extract_pair(qb, qc, (p1, p2, p3))
                    if got is not None:
                        phi, l2, l3 = got
                        if _pair_nonresonant(l2, l3):
                            return Model3Match(
                                "B3", 3,
                                residues=(desc.rational(p1), l2, l3),
                                powers=(p1, p2, p3), phi=phi,
                                permutation=perm)
            # model A: three nonzero, fully non-resonant residues.  The
            # residue series need not be constant: a non-resonant germ is
            # formally linearizable, so unit factors picked up along the
            # way do not change the model.
            if _fully_nonresonant((a0, b0, c0), resonance_bound):
                return Model3Match("A", 3, residues=(a0, b0, c0),
                                   permutation=perm)
            continue
        if not b0.is_zero() and c0.is_zero():
            # model B2: two positive integer residues, weak plane {z = 0}
            r2 = _positive_rational(b0 / a0)
            if r2 is None or c.is_zero():
                continue
            p1, p2 = r2.denominator, r2.numerator
            p1e = desc.rational(p1)
            qb = _series_quot(b.scale(p1e), a, jet_order)
            qc = _series_quot(c.scale(p1e), a, jet_order)
            if qb is None or qc is None:
                continue
            qb = qb - MPoly.constant(vars3, desc.rational(p2), desc, jet_order)
            got = _extract_pair(qb, qc, (p1, p2, 0))
            if got is None:
                continue
            phi, l2, l3 = got
            if l3.is_zero() or not _pair_nonresonant(l2, l3):
                continue
            return Model3Match("B2", 3, residues=(desc.rational(p1), l2, l3),
                               powers=(p1, p2), phi=phi,
                               weak_planes=(plane(2),), permutation=perm)
        if b0.is_zero() and c0.is_zero():
            # model B1: one nonzero residue, weak planes {y = 0}, {z = 0}
            qb = _series_quot(b, a, jet_order)
            qc = _series_quot(c, a, jet_order)
            if qb is None or qc is None or qb.is_zero() or qc.is_zero():
                continue
            if any(q.degree_in(y) or q.degree_in(z) for q in (qb, qc)):
                continue
            exps = set()
            for q in (qb, qc):
                exps.update(e[0] for e in q.coeffs)
            p1 = 0
            for e in exps:
                p1 = _igcd(p1, e)
            got = _extract_pair(qb, qc, (p1, 0, 0))
            if got is None:
                continue
            phi, l2, l3 = got
            l2, l3 = l2 * desc.rational(p1), l3 * desc.rational(p1)
            if not _pair_nonresonant(l2, l3):
                continue
            return Model3Match("B1", 3, residues=(desc.rational(p1), l2, l3),
                               powers=(p1,), phi=phi,
                               weak_planes=(plane(1), plane(2)),
                               permutation=perm)
    return Model3Match("NotSimple", 3)


def _extract_pair(qb: MPoly, qc: MPoly, pvec):
    """Both series must be multiples of one phi(x^p1 y^p2 z^p3); returns
    (phi, lam_b, lam_c) or None.  One of the two may vanish."""
    desc = qb.desc
    ref = qc if not qc.is_zero() else qb
    if ref.is_zero():
        return None
    got = _phi_from_series(ref, pvec)
    if got is None:
        return None
    phi, lam_ref = got
    out = []
    for q in (qb, qc):
        if q.is_zero():
            out.append(desc.zero())
            continue
        _, lead = _lead_term(q)
        e_ref, _ = _lead_term(ref)
        if min(q.coeffs, key=lambda t: (sum(t), t)) != e_ref:
            return None
        lam_q = lead
        if not (q.scale(lam_ref) - ref.scale(lam_q)).is_zero():
            return None
        out.append(lam_q)
    return phi, out[0], out[1]


def _match_tau2(form: OneForm3, jet_order: int):
    w = cylinder_direction(form)
    if w is None:
        raise InconclusiveError("dimensional type changed under normalization")
    desc = form.desc
    others = [v for v in form.vars if v != w]
    idxs = [form.vars.index(v) for v in others]
    trace = [form.coeffs()[i].restrict({w: desc.zero()}) for i in idxs]
    form2 = OneForm2(trace[0].rename(tuple(others)),
                     trace[1].rename(tuple(others)), tuple(others))
    form2 = normalize2(form2)
    code, _, M = classify_point2(form2, LocalDivisor.empty(), jet_order)
    if code.kind == NON_SIMPLE:
        return Model3Match("NotSimple", 2)
    if code.kind == SADDLE_NODE:
        from .separatrix import weak_separatrix_jet
        try:
            weak = weak_separatrix_jet(form2, N=jet_order)
            planes = (_lift_to3(weak.implicit, form.vars),)
        except (ValueError, PrecisionError):
            planes = ()
        return Model3Match("b1", 2, weak_planes=planes)
    # nondegenerate: resonant (negative rational quotient) or not
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    t = tr * tr / det
    resonant = False
    if t.is_rational():
        tq = t.as_fraction()
        if tq <= 0 and _fraction_sqrt((tq - 2) ** 2 - 4) is not None:
            resonant = True
    residues = ()
    u2, v2 = form2.vars
    ra = _residue_series2(form2.A, v2, jet_order)
    rb = _residue_series2(form2.B, u2, jet_order)
    if ra is not None and rb is not None:
        zero2 = {u2: desc.zero(), v2: desc.zero()}
        residues = (ra.evaluate(zero2), rb.evaluate(zero2))
    return Model3Match("b2" if resonant else "a", 2, residues=residues)


def _residue_series2(p: MPoly, w: str, N: int):
    if p.is_zero() or p.min_exponent_in(w) < 1:
        return None
    return p.divide_var_power(w, 1)


def _lift_to3(eq2: MPoly, vars3):
    """A two-variable equation as a cylinder equation in three variables."""
    pair = eq2.vars
    pos = [vars3.index(v) if v in vars3 else None for v in pair]
    if None in pos:
        # renamed plane coordinates; place them on the first two slots
        pos = [i for i, v in enumerate(vars3)][:2]
    coeffs = {}
    for e, c in eq2.coeffs.items():
        e3 = [0, 0, 0]
        e3[pos[0]], e3[pos[1]] = e
        coeffs[tuple(e3)] = c
    return MPoly(vars3, coeffs, eq2.desc, eq2.prec)


def match_simple_model3(form: OneForm3, D: LocalDivisor = None,
                        jet_order: int = 8,
                        resonance_bound: int = 25) -> Model3Match:
    """Match a singular germ against the simple models in three variables."""
    form = normalize3(form)
    if not integrable3(form):
        raise ValueError("the form is not integrable")
    tau = dimensional_type(form, jet_order)
    if tau == 1:
        raise ValueError("model matching needs a singular point")
    if D is not None:
        e = len([b for b in D])
        if not tau - 1 <= e <= tau:
            raise ValueError("divisor is not adapted to the point")
    if tau == 2:
        return _match_tau2(form, jet_order)
    return _match_tau3(form, jet_order, resonance_bound)


def _same_surface(p: MPoly, q: MPoly) -> bool:
    """Equality of reduced equations up to a scalar, at joint precision."""
    if p.vars != q.vars:
        return False
    _, cp = _lead_term(p)
    _, cq = _lead_term(q)
    a = p.scale(cp.inverse())
    b = q.scale(cq.inverse())
    precs = [x for x in (a.prec, b.prec) if x is not None]
    if precs:
        N = min(precs)
        a, b = a.truncate(N), b.truncate(N)
    return (a - b).is_zero()


def well_oriented3(match: Model3Match, D: LocalDivisor) -> bool:
    """Whether no weak separatrix surface lies inside the divisor."""
    if not match.is_simple():
        raise ValueError("well-orientedness is defined at simple points")
    for w in match.weak_planes:
        for b in D.invariant_part():
            if _same_surface(w, b.equation):
                return False
    return True


def corner_or_trace(match: Model3Match, D: LocalDivisor) -> str:
    """Divisor geometry at a simple point: full corner or trace point."""
    if not match.is_simple():
        raise ValueError("corner/trace applies to simple points")
    e = len(list(D))
    if e == match.tau:
        return SIMPLE_CORNER
    if e == match.tau - 1:
        return TRACE
    raise ValueError("divisor is not adapted to the point")


# ---------------------------------------------------------------------------
# plane sections


class SectionMap:
    """A plane germ (u, v) -> (phi_1, phi_2, phi_3) into three-space."""

    __slots__ = ("components", "vars", "desc")

    def __init__(self, components):
        components = tuple(components)
        if len(components) != 3:
            raise ValueError("a section map needs three components")
        desc = components[0].desc
        vars2 = components[0].vars
        if len(vars2) != 2:
            raise ValueError("section components live in two variables")
        zero = {w: desc.zero() for w in vars2}
        for c in components:
            if c.vars != vars2 or c.desc != desc:
                raise FieldError("mismatched section components")
            if not c.evaluate(zero).is_zero():
                raise ValueError("section must send the origin to the origin")
        self.components = components
        self.vars = vars2
        self.desc = desc

    def factor(self, i: int):
        """Monomial factorization phi_i = u^r v^s * unit-or-strict part."""
        c = self.components[i]
        if c.is_zero():
            return (0, 0, c)
        r, s = c.monomial_content()
        rest = c
        u, v = self.vars
        if r:
            rest = rest.divide_var_power(u, r)
        if s:
            rest = rest.divide_var_power(v, s)
        return (r, s, rest)

    def __repr__(self):
        return "SectionMap(%s)" % ", ".join(c.render() for c in self.components)


def pullback_section(form: OneForm3, phi: SectionMap) -> OneForm2:
    """Pull the form back along the section and normalize the result."""
    if phi.desc != form.desc:
        raise FieldError("section and form live over different towers")
    u, v = phi.vars
    mapping = dict(zip(form.vars, phi.components))
    A2 = None
    B2 = None
    for p, comp in zip(form.coeffs(), phi.components):
        img = p.substitute(mapping)
        ta = img * comp.partial(u)
        tb = img * comp.partial(v)
        A2 = ta if A2 is None else A2 + ta
        B2 = tb if B2 is None else B2 + tb
    G = OneForm2(A2, B2, phi.vars)
    if G.is_zero():
        raise ValueError("the section is invariant; pull-back vanishes")
    return normalize2(G)


def _resultant_eliminating(p: MPoly, q: MPoly, var: str, desc):
    """Resultant of two exact bivariate polynomials eliminating `var`,
    as a univariate coefficient list in the other variable
    (evaluation-interpolation)."""
    other = [w for w in p.vars if w != var][0]
    bound = p.degree() * q.degree() + 1
    pts = [desc.rational(k) for k in range(bound)]
    vals = []
    for t in pts:
        pa = to_univariate(p.restrict({other: t}), var)
        pb = to_univariate(q.restrict({other: t}), var)
        vals.append(u_resultant(pa, pb, desc))
    # Lagrange interpolation on 0..bound-1
    coeffs = [desc.zero()] * bound
    for i, t in enumerate(pts):
        num = [desc.one()]
        denom = desc.one()
        for j, s in enumerate(pts):
            if j == i:
                continue
            new = [desc.zero()] * (len(num) + 1)
            for k, ck in enumerate(num):
                new[k] = new[k] - ck * s
                new[k + 1] = new[k + 1] + ck
            num = new
            denom = denom * (t - s)
        w = vals[i] / denom
        for k, ck in enumerate(num):
            coeffs[k] = coeffs[k] + ck * w
    return coeffs


def generic_transversality_check(form: OneForm3, phi: SectionMap,
                                 E: LocalDivisor,
                                 jet_order: int = 8) -> bool:
    """Whether the singular points of the pulled-back foliation all lie
    on the divisor E (the trace of the ambient divisor on the section)."""
    G = pullback_section(form, phi)
    desc = G.desc
    u, v = G.vars
    P = G.A if G.A.prec is None else G.A.truncate(jet_order).as_polynomial()
    Q = G.B if G.B.prec is None else G.B.truncate(jet_order).as_polynomial()
    P, Q = P.as_polynomial(), Q.as_polynomial()
    if P.is_zero() or Q.is_zero():
        raise InconclusiveError("a pulled-back coefficient vanishes identically")
    res = _resultant_eliminating(P, Q, u, desc)
    if all(c.is_zero() for c in res):
        raise InconclusiveError("the pulled-back coefficients share a factor")
    for v0 in u_roots_in_tower(res, desc):
        ca = to_univariate(P.restrict({v: v0}), u)
        cb = to_univariate(Q.restrict({v: v0}), u)
        if all(c.is_zero() for c in ca) or all(c.is_zero() for c in cb):
            common = cb if all(c.is_zero() for c in ca) else ca
        else:
            common = u_gcd(ca, cb, desc)
        if len([c for c in common if not c.is_zero()]) and len(common) == 1:
            continue
        for u0 in u_roots_in_tower(common, desc):
            point = {u: u0, v: v0}
            if not any(b.equation.evaluate(point).is_zero() for b in E):
                return False
    return True


# ---------------------------------------------------------------------------
# section-based second-type test


class Verdict3:
    """Outcome of the section-based second-type test."""

    __slots__ = ("kind", "witnesses", "evidence")

    def __init__(self, kind, witnesses=(), evidence=()):
        self.kind = kind  # SecondType | NotSecondType | Inconclusive
        self.witnesses = tuple(witnesses)
        self.evidence = tuple(evidence)

    def __bool__(self):
        return self.kind == "SecondType"

    def __repr__(self):
        return "Verdict3(%s)" % self.kind


def _invariant_planes(form: OneForm3):
    planes = []
    for w in form.vars:
        eq = MPoly.variable(form.vars, w, form.desc)
        try:
            if invariant_surface3(form, eq):
                planes.append(w)
        except PrecisionError:
            pass
    return planes


def _singular_axes(form: OneForm3):
    desc = form.desc
    axes = []
    for kept in form.vars:
        fixed = {w: desc.zero() for w in form.vars if w != kept}
        if all(p.restrict(fixed).is_zero() for p in form.coeffs()):
            axes.append(kept)
    return axes


def _axis_trace_form(form: OneForm3, kept: str, param_name: str = "s"):
    """The foliation on a transversal plane at a generic axis point, over
    the tower extended by a transcendental parameter."""
    desc_s = form.desc.with_parameter(param_name)
    s = desc_s.param_gen()
    others = [w for w in form.vars if w != kept]
    coeffs = []
    for w in others:
        p = form.coeffs()[form.vars.index(w)].coerce_to(desc_s)
        coeffs.append(p.restrict({kept: s}))
    A2 = coeffs[0].rename(tuple(others))
    B2 = coeffs[1].rename(tuple(others))
    return OneForm2(A2, B2, tuple(others)), desc_s


def _random_section(rng, vars3, vars2, desc):
    u, v = vars2
    uu = MPoly.variable(vars2, u, desc)
    vv = MPoly.variable(vars2, v, desc)
    while True:
        rows = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(3)]
        minors = [rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
                  for i, j in ((0, 1), (0, 2), (1, 2))]
        if any(minors) and all(r != (0, 0) for r in rows):
            break
    comps = []
    for r in rows:
        comp = uu.scale(desc.rational(r[0])) + vv.scale(desc.rational(r[1]))
        quad = [(rng.randint(-1, 1)) for _ in range(3)]
        comp = comp + (uu * uu).scale(desc.rational(quad[0])) \
            + (uu * vv).scale(desc.rational(quad[1])) \
            + (vv * vv).scale(desc.rational(quad[2]))
        comps.append(comp)
    return SectionMap(comps), rows


def second_type3_via_sections(form: OneForm3, trials: int = 8, seed: int = 0,
                              jet_order: int = 8, max_depth: int = 64,
                              resonance_bound: int = 25) -> Verdict3:
    """Decide second type through plane sections and transversal types.

    A tangent saddle-node found in any pulled-back reduction, or in the
    transversal type along a singular axis, falsifies second type and is
    reported as a witness.  The positive answer combines clean sampled
    sections with exhaustive checks along the singular locus; when a
    subcomputation leaves the supported towers the verdict degrades to
    Inconclusive rather than guessing.
    """
    form = normalize3(form)
    if not integrable3(form):
        raise ValueError("the form is not integrable")
    desc = form.desc
    zero = {w: desc.zero() for w in form.vars}
    if any(not p.evaluate(zero).is_zero() for p in form.coeffs()):
        return Verdict3("SecondType", evidence=("regular point",))
    witnesses = []
    evidence = []
    notes = []
    planes = _invariant_planes(form)

    # transversal type at a generic point of each singular axis
    for kept in _singular_axes(form):
        try:
            form2, desc_s = _axis_trace_form(form, kept)
            branches = []
            for w in planes:
                if w == kept:
                    continue
                branches.append(DivisorBranch(
                    MPoly.variable(form2.vars, w, desc_s), False))
            st = is_second_type2(form2, LocalDivisor(branches), max_depth)
            if not st:
                witnesses.append(("axis", kept, st.witnesses))
            else:
                evidence.append("axis %s: transversal reduction clean" % kept)
        except (FieldExtensionError, WidenRequest, PrecisionError,
                ReductionError) as exc:
            notes.append("axis %s: %s" % (kept, exc))

    # the origin itself
    origin_ok = False
    try:
        match = match_simple_model3(form, None, jet_order, resonance_bound)
        if match.is_simple():
            origin_ok = True
            evidence.append("origin matches model %s" % match.code)
        elif match.tau == 2:
            w = cylinder_direction(form)
            others = [v for v in form.vars if v != w]
            trace = [form.coeffs()[form.vars.index(v)].restrict(
                {w: desc.zero()}).rename(tuple(others)) for v in others]
            form2 = OneForm2(trace[0], trace[1], tuple(others))
            branches = [DivisorBranch(
                MPoly.variable(tuple(others), v, desc), False)
                for v in planes if v != w]
            st = is_second_type2(form2, LocalDivisor(branches), max_depth)
            if not st:
                witnesses.append(("origin", w, st.witnesses))
            else:
                origin_ok = True
                evidence.append("origin: cylinder reduction clean")
        else:
            origin_ok = _logarithmic_certificate(form, evidence, notes,
                                                 jet_order)
    except (FieldExtensionError, WidenRequest, PrecisionError,
            ReductionError, InconclusiveError) as exc:
        notes.append("origin: %s" % exc)

    # sampled plane sections
    rng = random.Random(seed)
    target = nu0(form)
    clean = 0
    for trial in range(trials):
        section = None
        for _ in range(40):
            cand, rows = _random_section(rng, form.vars, ("u", "v"), desc)
            try:
                G = pullback_section(form, cand)
            except ValueError:
                continue
            if nu0(G) == target:
                section = (cand, rows, G)
                break
        if section is None:
            notes.append("trial %d: no multiplicity-preserving section" % trial)
            continue
        cand, rows, G = section
        branches = []
        degenerate = False
        for w in planes:
            eq = cand.components[form.vars.index(w)]
            lin = [c for e, c in eq.coeffs.items() if sum(e) == 1]
            if not lin:
                degenerate = True
                break
            branches.append(DivisorBranch(eq, False))
        if degenerate:
            notes.append("trial %d: divisor trace not smooth" % trial)
            continue
        try:
            st = is_second_type2(G, LocalDivisor(branches), max_depth)
        except (FieldExtensionError, WidenRequest, PrecisionError,
                ReductionError) as exc:
            notes.append("trial %d: %s" % (trial, exc))
            continue
        if not st:
            witnesses.append(("section", rows, st.witnesses))
        else:
            clean += 1
    if clean:
        evidence.append("%d section pull-backs reduced cleanly" % clean)

    if witnesses:
        return Verdict3("NotSecondType", witnesses=witnesses,
                        evidence=evidence)
    if origin_ok and not notes and (clean or trials == 0):
        return Verdict3("SecondType", evidence=evidence)
    return Verdict3("Inconclusive", evidence=tuple(evidence) + tuple(notes))


def _logarithmic_certificate(form: OneForm3, evidence, notes,
                             jet_order: int) -> bool:
    """Normal-crossings logarithmic germ whose residues are pairwise
    rationally independent never develops a saddle-node: certify that."""
    desc = form.desc
    x, y, z = form.vars
    a = _residue_series(form.A, (y, z), jet_order)
    b = _residue_series(form.B, (x, z), jet_order)
    c = _residue_series(form.C, (x, y), jet_order)
    if a is None or b is None or c is None:
        notes.append("origin: no simple model and not logarithmic")
        return False
    zero = {w: desc.zero() for w in form.vars}
    lams = [p.evaluate(zero) for p in (a, b, c)]
    if any(l.is_zero() for l in lams):
        notes.append("origin: vanishing logarithmic residue")
        return False
    if not ((b.scale(lams[0]) - a.scale(lams[1])).is_zero()
            and (c.scale(lams[0]) - a.scale(lams[2])).is_zero()):
        notes.append("origin: residue series are not constant")
        return False
    for i, j in ((0, 1), (0, 2), (1, 2)):
        r = lams[i] / lams[j]
        if r.is_rational():
            notes.append("origin: residues %d and %d rationally dependent"
                         % (i, j))
            return False
    evidence.append("origin: logarithmic with pairwise irrational residues")
    return True


# ---------------------------------------------------------------------------
# blow-up script harness


class PointRecord:
    """One checkpoint of the harness with its classification."""

    __slots__ = ("path", "where", "result", "simple", "well_oriented")

    def __init__(self, path, where, result, simple, well_oriented=None):
        self.path = path
        self.where = where
        self.result = result
        self.simple = simple
        self.well_oriented = well_oriented

    def __repr__(self):
        return "PointRecord(%s %s: %s)" % ("/".join(self.path) or ".",
                                           self.where, self.result)


class TheoremReport:
    __slots__ = ("ok", "records", "diagnostics")

    def __init__(self, ok, records, diagnostics):
        self.ok = ok
        self.records = tuple(records)
        self.diagnostics = tuple(diagnostics)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "TheoremReport(ok=%s, %d records)" % (self.ok, len(self.records))


def _chart_mapping(label: str, vars3, desc, prec):
    gens = {w: MPoly.variable(vars3, w, desc, prec) for w in vars3}
    if label.startswith("c"):
        exc = label[1:]
        mapping = {exc: gens[exc]}
        for w in vars3:
            if w != exc:
                mapping[w] = gens[exc] * gens[w]
        return mapping, exc
    exc = label[1:]
    # axis chart: the kept variable is whichever coordinate is untouched;
    # recover it from the strict-transform convention of blowup_curve3
    raise ValueError("axis charts need the kept axis")


def _axis_chart_mapping(label: str, kept: str, vars3, desc, prec):
    exc = label[1:]
    scaled = [w for w in vars3 if w not in (exc, kept)][0]
    gens = {w: MPoly.variable(vars3, w, desc, prec) for w in vars3}
    return {kept: gens[kept], exc: gens[exc],
            scaled: gens[exc] * gens[scaled]}, exc


def _strict_equation(eq: MPoly, mapping, exc_var: str):
    total = eq.substitute(mapping)
    if total.is_zero():
        return None
    k = total.min_exponent_in(exc_var)
    strict = total.divide_var_power(exc_var, k) if k else total
    zero = {w: strict.desc.zero() for w in strict.vars}
    if not strict.evaluate(zero).is_zero():
        return None
    return strict


def theorem_main_harness(form: OneForm3, surfaces, script,
                         jet_order: int = 8,
                         resonance_bound: int = 25) -> TheoremReport:
    """Run a prescribed sequence of point and axis blow-ups and verify
    that every final checkpoint is a simple, well-oriented singularity
    and that the strict transforms of the declared separatrix surfaces
    stay smooth.

    `script` is a list of (path, center) pairs; `path` is a tuple of
    chart labels and `center` is "point" or "axis-<var>".
    """
    diagnostics = []
    records = []
    form = normalize3(form)
    if not integrable3(form):
        raise ValueError("the form is not integrable")
    for s in surfaces:
        try:
            if not invariant_surface3(form, s):
                diagnostics.append("declared surface %s is not invariant"
                                   % s.render())
        except PrecisionError as exc:
            diagnostics.append("surface %s: %s" % (s.render(), exc))
    panels = {(): (form, LocalDivisor.empty(), list(surfaces))}
    for path, center in script:
        path = tuple(path)
        if path not in panels:
            diagnostics.append("script path %r does not name a live chart"
                               % (path,))
            return TheoremReport(False, records, diagnostics)
        f, D, seqs = panels.pop(path)
        desc = f.desc
        prec = f.prec()
        try:
            if center == "point":
                charts = blowup_point3(f, D)
                kept = None
            elif center.startswith("axis-"):
                kept = center[len("axis-"):]
                charts = blowup_curve3(f, kept, D)
            else:
                raise ValueError("unknown center %r" % (center,))
        except ValueError as exc:
            diagnostics.append("blow-up at %r refused: %s" % (path, exc))
            return TheoremReport(False, records, diagnostics)
        for chart in charts:
            if chart.dicritical:
                diagnostics.append(
                    "dicritical exceptional component in chart %s at %r"
                    % (chart.label, path))
            if kept is None:
                mapping, exc_var = _chart_mapping(chart.label, f.vars, desc,
                                                  prec)
            else:
                mapping, exc_var = _axis_chart_mapping(chart.label, kept,
                                                       f.vars, desc, prec)
            new_seqs = []
            for s in seqs:
                strict = _strict_equation(s, mapping, exc_var)
                if strict is not None:
                    new_seqs.append(strict)
            panels[path + (chart.label,)] = (chart.form, chart.divisor,
                                             new_seqs)

    all_simple = True
    for path in sorted(panels):
        f, D, seqs = panels[path]
        f = normalize3(f)
        desc = f.desc
        zero = {w: desc.zero() for w in f.vars}
        local = [b for b in D if b.equation.evaluate(zero).is_zero()]
        if any(not p.evaluate(zero).is_zero() for p in f.coeffs()):
            records.append(PointRecord(path, "origin", REGULAR, True))
        else:
            try:
                match = match_simple_model3(f, None, jet_order,
                                            resonance_bound)
                simple = match.is_simple()
                well = well_oriented3(match, LocalDivisor(local)) \
                    if simple else None
                records.append(PointRecord(path, "origin", match.code,
                                           simple, well))
                if not simple or well is False:
                    all_simple = False
            except (InconclusiveError, FieldExtensionError, WidenRequest,
                    ValueError) as exc:
                diagnostics.append("origin of %r: %s" % (path, exc))
                records.append(PointRecord(path, "origin", "Unresolved",
                                           False))
                all_simple = False
        for kept in _singular_axes(f):
            try:
                form2, desc_s = _axis_trace_form(f, kept)
                branches = []
                for b in local:
                    fixed = {w: desc.zero() for w in f.vars if w != kept}
                    if b.equation.restrict(fixed).is_zero():
                        continue  # contains the axis? then no trace
                    tr = b.equation.coerce_to(desc_s).restrict(
                        {kept: desc_s.param_gen()})
                    tr2 = tr.rename(form2.vars)
                    if tr2.evaluate({w: desc_s.zero()
                                     for w in form2.vars}).is_zero():
                        branches.append(DivisorBranch(tr2, b.dicritical))
                code, well, _ = classify_point2(form2,
                                                LocalDivisor(branches),
                                                jet_order)
                simple = code.kind in (SIMPLE, SADDLE_NODE, REGULAR)
                records.append(PointRecord(path, "axis-" + kept, code.kind,
                                           simple, well))
                if not simple or (code.kind == SADDLE_NODE and not well):
                    all_simple = False
            except (FieldExtensionError, WidenRequest, PrecisionError) as exc:
                diagnostics.append("axis %s of %r: %s" % (kept, path, exc))
                all_simple = False
        for s in seqs:
            if not s.evaluate(zero).is_zero():
                continue
            grads = [s.partial(w).evaluate(zero) for w in f.vars]
            if all(g.is_zero() for g in grads):
                diagnostics.append(
                    "separatrix strict transform singular at origin of %r"
                    % (path,))
                all_simple = False
    ok = all_simple and not diagnostics
    return TheoremReport(ok, records, diagnostics)
