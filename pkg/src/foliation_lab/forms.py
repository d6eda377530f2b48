"""One-forms in two and three variables and their basic invariants.

A plane form is written A du + B dv and a space form A dx + B dy + C dz,
with coefficients that are exact polynomials or truncated series over a
field tower.  This module provides normalization (removal of a common
coefficient factor), the algebraic multiplicity nu0, the Milnor number
mu0, the integrability test in three variables, and invariance tests for
parametrized curves and for surfaces given by a reduced equation.

Boolean questions about truncated series are three-valued internally;
an answer that cannot be certified at the available precision raises
PrecisionError instead of guessing.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    coerce,
    sort_key,
    sqrt_or_widen,
)
from .linalg import rank
from .poly import (
    MPoly,
    OrderIndeterminate,
    _utrim,
    exact_divide,
    gcd_bivariate,
    u_gcd,
    vanishing_order,
)


class PrecisionError(FieldError):
    """A series-level question could not be settled at the stored precision."""


class InvarianceResult:
    """Boolean answer together with the order to which it was certified."""

    __slots__ = ("value", "order")

    def __init__(self, value: bool, order):
        self.value = value
        self.order = order

    def __bool__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.value == other
        if isinstance(other, InvarianceResult):
            return self.value == other.value and self.order == other.order
        return NotImplemented

    def __repr__(self):
        return "InvarianceResult(%r, order=%r)" % (self.value, self.order)


class OneForm2:
    """A du + B dv with labeled variables, default (u, v)."""

    __slots__ = ("vars", "A", "B", "desc")

    def __init__(self, A: MPoly, B: MPoly, variables=("u", "v")):
        variables = tuple(variables)
        if len(variables) != 2:
            raise ValueError("a plane form needs exactly two variables")
        if A.vars != variables or B.vars != variables:
            raise ValueError("coefficient variables do not match the form")
        if A.desc != B.desc:
            raise FieldError("mismatched field descriptors in one form")
        self.vars = variables
        self.A = A
        self.B = B
        self.desc = A.desc

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def prec(self):
        pa, pb = self.A.prec, self.B.prec
        if pa is None:
            return pb
        if pb is None:
            return pa
        return min(pa, pb)

    def coerce_to(self, desc: FieldDescriptor) -> "OneForm2":
        return OneForm2(self.A.coerce_to(desc), self.B.coerce_to(desc), self.vars)

    def translate(self, shifts) -> "OneForm2":
        return OneForm2(self.A.translate(shifts), self.B.translate(shifts), self.vars)

    def rename(self, new_vars) -> "OneForm2":
        new_vars = tuple(new_vars)
        return OneForm2(self.A.rename(new_vars), self.B.rename(new_vars), new_vars)

    def dual_linear_part(self):
        """Linear part of the dual field B d/du - A d/dv as a 2x2 matrix."""
        u, v = self.vars
        z = self.desc.zero()

        def lin(p, w):
            e = tuple(1 if x == w else 0 for x in self.vars)
            return p.coeffs.get(e, z)

        return [
            [lin(self.B, u), lin(self.B, v)],
            [-lin(self.A, u), -lin(self.A, v)],
        ]

    def evaluate_at(self, point):
        return (self.A.evaluate(point), self.B.evaluate(point))

    def render(self) -> str:
        u, v = self.vars
        return "(%s) d%s + (%s) d%s" % (self.A.render(), u, self.B.render(), v)

    def __repr__(self):
        return "OneForm2(%s)" % self.render()


class OneForm3:
    """A dx + B dy + C dz with labeled variables, default (x, y, z)."""

    __slots__ = ("vars", "A", "B", "C", "desc")

    def __init__(self, A: MPoly, B: MPoly, C: MPoly, variables=("x", "y", "z")):
        variables = tuple(variables)
        if len(variables) != 3:
            raise ValueError("a space form needs exactly three variables")
        for p in (A, B, C):
            if p.vars != variables:
                raise ValueError("coefficient variables do not match the form")
        if not (A.desc == B.desc == C.desc):
            raise FieldError("mismatched field descriptors in one form")
        self.vars = variables
        self.A = A
        self.B = B
        self.C = C
        self.desc = A.desc

    def coeffs(self):
        return (self.A, self.B, self.C)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.coeffs())

    def prec(self):
        precs = [p.prec for p in self.coeffs() if p.prec is not None]
        return min(precs) if precs else None

    def coerce_to(self, desc: FieldDescriptor) -> "OneForm3":
        return OneForm3(
            self.A.coerce_to(desc),
            self.B.coerce_to(desc),
            self.C.coerce_to(desc),
            self.vars,
        )

    def translate(self, shifts) -> "OneForm3":
        return OneForm3(
            self.A.translate(shifts),
            self.B.translate(shifts),
            self.C.translate(shifts),
            self.vars,
        )

    def rename(self, new_vars) -> "OneForm3":
        new_vars = tuple(new_vars)
        return OneForm3(
            self.A.rename(new_vars),
            self.B.rename(new_vars),
            self.C.rename(new_vars),
            new_vars,
        )

    def render(self) -> str:
        x, y, z = self.vars
        return "(%s) d%s + (%s) d%s + (%s) d%s" % (
            self.A.render(), x, self.B.render(), y, self.C.render(), z,
        )

    def __repr__(self):
        return "OneForm3(%s)" % self.render()


class DivisorBranch:
    """One branch of a normal-crossings divisor: reduced local equation + tag."""

    __slots__ = ("equation", "dicritical")

    def __init__(self, equation: MPoly, dicritical: bool = False):
        if equation.is_zero():
            raise ValueError("divisor branch needs a nonzero equation")
        self.equation = equation
        self.dicritical = dicritical

    def is_invariant_tag(self) -> bool:
        return not self.dicritical

    def __repr__(self):
        tag = "dicritical" if self.dicritical else "invariant"
        return "DivisorBranch(%s, %s)" % (self.equation.render(), tag)


class LocalDivisor:
    """Normal-crossings divisor germ: a list of smooth branches."""

    __slots__ = ("branches",)

    def __init__(self, branches=()):
        self.branches = tuple(branches)

    @staticmethod
    def empty() -> "LocalDivisor":
        return LocalDivisor(())

    def e0(self) -> int:
        return len(self.branches)

    def invariant_part(self):
        return [b for b in self.branches if not b.dicritical]

    def dicritical_part(self):
        return [b for b in self.branches if b.dicritical]

    def with_branch(self, branch: DivisorBranch) -> "LocalDivisor":
        return LocalDivisor(self.branches + (branch,))

    def __iter__(self):
        return iter(self.branches)

    def __repr__(self):
        return "LocalDivisor(%r)" % (list(self.branches),)


class CurveJet:
    """Parametrized curve t -> (g_1(t), ..., g_n(t)) as truncated series."""

    __slots__ = ("components", "desc", "prec")

    def __init__(self, components):
        components = tuple(components)
        if len(components) not in (2, 3):
            raise ValueError("curve jets live in two or three variables")
        if all(c.is_zero() for c in components):
            raise ValueError("curve jet is identically zero")
        desc = components[0].desc
        for c in components:
            if c.vars != components[0].vars or len(c.vars) != 1:
                raise ValueError("curve components must share one parameter variable")
            if c.desc != desc:
                raise FieldError("mismatched field descriptors in curve jet")
        self.components = components
        self.desc = desc
        precs = [c.prec for c in components if c.prec is not None]
        self.prec = min(precs) if precs else None

    def tvar(self) -> str:
        return self.components[0].vars[0]

    def derivative(self):
        t = self.tvar()
        return tuple(c.partial(t) for c in self.components)

    def __repr__(self):
        return "CurveJet(%s)" % ", ".join(c.render() for c in self.components)


def _line_restriction(p: MPoly, k):
    """Coefficient list of p(u, k*u) in the single variable u."""
    desc = p.desc
    powers = {0: desc.one()}
    out = {}
    for (i, j), c in p.coeffs.items():
        if j not in powers:
            acc = desc.one()
            for _ in range(j):
                acc = acc * k
            powers[j] = acc
        d = i + j
        out[d] = out.get(d, desc.zero()) + c * powers[j]
    if not out:
        return []
    n = max(out)
    return _utrim([out.get(d, desc.zero()) for d in range(n + 1)])


def _strip_origin_root(r):
    k = 0
    while k < len(r) and r[k].is_zero():
        k += 1
    return r[k:]


def _dehomog_lowest(p: MPoly):
    """g(1, t) for the lowest homogeneous part g of p, as a coefficient list."""
    low = p.lowest_part()
    d = sum(next(iter(low.coeffs)))
    out = [p.desc.zero()] * (d + 1)
    for (_, j), c in low.coeffs.items():
        out[j] = c
    return _utrim(out)


def _quickly_coprime(polys):
    """Certify that the exact bivariate polynomials share no nonconstant
    factor.  A homogeneous common factor would divide all the lowest
    homogeneous parts; a non-homogeneous one leaves a nonconstant trace
    on one of 2*D+1 lines v = k*u after the forced root at the origin is
    stripped.  False means 'not certified', not 'not coprime'."""
    desc = polys[0].desc

    def common_constant(rests):
        g = rests[0]
        for r in rests[1:]:
            g = u_gcd(g, r, desc)
            if len(g) == 1:
                return True
        return len(g) == 1

    if not common_constant([_dehomog_lowest(p) for p in polys]):
        return False
    D = min(p.degree() for p in polys)
    for kq in range(1, 2 * D + 2):
        k = desc.rational(kq)
        rests = [_strip_origin_root(_line_restriction(p, k)) for p in polys]
        if any(not r for r in rests):
            return False
        if not common_constant(rests):
            return False
    return True


def _content_and_gcd(coeffs):
    """Common factor of a list of nonzero polynomials/series.

    Monomial content always comes out; a genuine polynomial gcd is taken
    only for exact bivariate input, where the subresultant walk applies.
    """
    alive = [p for p in coeffs if not p.is_zero()]
    if not alive:
        raise ValueError("zero form cannot be normalized")
    common = None
    for p in alive:
        mono = dict(zip(p.vars, p.monomial_content()))
        if common is None:
            common = mono
        else:
            common = {w: min(common[w], mono[w]) for w in common}
    stripped = []
    for p in coeffs:
        q = p
        for w, k in common.items():
            if k and not q.is_zero():
                q = q.divide_var_power(w, k)
        stripped.append(q)
    alive = [p for p in stripped if not p.is_zero()]
    exact = all(p.prec is None for p in alive)
    if exact and len(alive[0].vars) == 2 and len(alive) >= 2 \
            and _quickly_coprime(alive):
        return stripped
    if exact and len(alive[0].vars) == 2 and len(alive) >= 1:
        g = alive[0]
        for p in alive[1:]:
            g = gcd_bivariate(g, p)
            if g.degree() == 0:
                break
        if g.degree() > 0:
            out = []
            for p in stripped:
                if p.is_zero():
                    out.append(p)
                    continue
                q = exact_divide(p, g)
                if q is None:
                    raise FieldError("gcd division failed; inconsistent input")
                out.append(q)
            stripped = out
    return stripped


def normalize2(form: OneForm2) -> OneForm2:
    """Remove the common factor of the two coefficients.  Idempotent."""
    if form.is_zero():
        raise ValueError("zero form cannot be normalized")
    A, B = _content_and_gcd([form.A, form.B])
    return OneForm2(A, B, form.vars)


def normalize3(form: OneForm3) -> OneForm3:
    """Remove the common monomial content of the three coefficients."""
    if form.is_zero():
        raise ValueError("zero form cannot be normalized")
    A, B, C = _content_and_gcd([form.A, form.B, form.C])
    return OneForm3(A, B, C, form.vars)


def nu0(form) -> int:
    """Algebraic multiplicity: minimal vanishing order of the coefficients."""
    best = None
    for p in form.coeffs() if isinstance(form, OneForm3) else (form.A, form.B):
        if p.is_zero():
            continue
        try:
            o = vanishing_order(p)
        except OrderIndeterminate:
            continue
        if best is None or o < best:
            best = o
    if best is None:
        raise OrderIndeterminate("all coefficients vanish to the stored precision")
    return best


def _monomials_below(nvars: int, d: int):
    """All exponent tuples of total degree < d, lexicographic."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            prefix.append(e)
            rec(prefix, remaining - 1, budget - e)
            prefix.pop()

    rec([], nvars, d - 1)
    return sorted(out)


def _ideal_codim(A: MPoly, B: MPoly, d: int) -> int:
    """dim of O/((A,B) + m^d) by monomial linear algebra at degree < d."""
    desc = A.desc
    monos = _monomials_below(2, d)
    index = {e: i for i, e in enumerate(monos)}
    zero = desc.zero()
    rows = []
    for gen in (A, B):
        base = vanishing_order(gen)
        for m in _monomials_below(2, max(d - base, 1)):
            shifted = {}
            for e, c in gen.coeffs.items():
                f = (e[0] + m[0], e[1] + m[1])
                if sum(f) < d:
                    shifted[f] = c
            if not shifted:
                continue
            row = [zero] * len(monos)
            for e, c in shifted.items():
                row[index[e]] = c
            rows.append(row)
    return len(monos) - rank(rows, desc)


def mu0(form: OneForm2) -> int:
    """Milnor number: dimension of the local algebra of (A, B).

    Works by bounded monomial linear algebra: the codimension of the
    ideal in the truncated algebra stabilizes once the truncation degree
    passes the Milnor number.  Non-stabilization within the Bezout bound
    signals a non-isolated singularity.
    """
    A, B = form.A, form.B
    if A.is_zero() or B.is_zero():
        raise ValueError("Milnor number needs both coefficients nonzero")
    if A.prec is None and B.prec is None:
        cap = A.degree() * B.degree() + 2
    else:
        cap = form.prec()
    prev = None
    d = 2
    while d <= cap + 1:
        cur = _ideal_codim(A, B, d)
        if prev is not None and cur == prev and cur + 1 <= d:
            return cur
        prev = cur
        d += 1
    raise ValueError("Milnor number did not stabilize; singularity is not isolated")


def integrable3(form: OneForm3) -> bool:
    """Whether the form satisfies the Frobenius integrability condition."""
    x, y, z = form.vars
    A, B, C = form.A, form.B, form.C
    expr = (
        A * (B.partial(z) - C.partial(y))
        + B * (C.partial(x) - A.partial(z))
        + C * (A.partial(y) - B.partial(x))
    )
    return expr.is_zero()


def pullback_curve(form, curve: CurveJet) -> MPoly:
    """Coefficient of dt in the pull-back of the form along the curve."""
    ncomp = 3 if isinstance(form, OneForm3) else 2
    if len(curve.components) != ncomp:
        raise ValueError("curve dimension does not match the form")
    mapping = dict(zip(form.vars, curve.components))
    derivs = curve.derivative()
    coeffs = form.coeffs() if ncomp == 3 else (form.A, form.B)
    total = None
    for p, dg in zip(coeffs, derivs):
        term = p.substitute(mapping) * dg
        total = term if total is None else total + term
    return total


def invariant_curve(form, curve: CurveJet) -> InvarianceResult:
    """Whether the curve is invariant: the pull-back must vanish identically.

    The answer carries the order to which it is certified.  A pull-back
    that is zero only because no coefficient survives truncation raises
    PrecisionError instead of answering true.
    """
    pb = pullback_curve(form, curve)
    if not pb.is_zero():
        return InvarianceResult(False, vanishing_order(pb))
    if pb.prec is not None and pb.prec < 2:
        raise PrecisionError(
            "pull-back vanishes only below order %d; raise the truncation" % pb.prec
        )
    return InvarianceResult(True, pb.prec)


def invariant_surface3(form: OneForm3, f: MPoly) -> InvarianceResult:
    """Whether {f = 0} is invariant: every coefficient of w ^ df divisible by f."""
    if f.is_zero() or not f.evaluate({w: f.desc.zero() for w in f.vars}).is_zero():
        raise ValueError("surface equation must be nonzero and vanish at the origin")
    x, y, z = form.vars
    A, B, C = form.A, form.B, form.C
    fx, fy, fz = f.partial(x), f.partial(y), f.partial(z)
    components = (A * fy - B * fx, B * fz - C * fy, A * fz - C * fx)
    order = None
    for comp in components:
        if comp.is_zero():
            continue
        q = exact_divide(comp, f)
        if q is None:
            return InvarianceResult(False, comp.prec)
        if comp.prec is not None:
            o = comp.prec
            order = o if order is None else min(order, o)
    if order is not None and order < 2:
        raise PrecisionError("divisibility certified only below order %d" % order)
    return InvarianceResult(True, order)


def invariant_graph_jet(form: OneForm2, N: int):
    """Coefficients c_1..c_N of an invariant graph v = sum c_k u^k.

    Solves the invariance identity A(u, s(u)) + B(u, s(u)) s'(u) = 0
    order by order.  Each order gives a linear equation for the next
    coefficient; an inconsistent order means no invariant graph exists
    and raises ValueError.  A free coefficient is fixed to zero.
    """
    u, v = form.vars
    desc = form.desc
    if N < 1:
        raise ValueError("need at least one coefficient")
    prec_cap = form.prec()
    if prec_cap is not None and prec_cap <= N:
        raise PrecisionError("form precision %d too low for a degree-%d graph" % (prec_cap, N))
    coeffs = []
    one_var = (u,)

    def residual(cs, upto):
        # one guard order so the derivative still certifies degree `upto`
        s = MPoly(one_var, {(k + 1,): c for k, c in enumerate(cs) if not c.is_zero()},
                  desc, prec=upto + 2)
        ds = s.partial(u)
        uu = MPoly.variable(one_var, u, desc, prec=upto + 2)
        mapping = {u: uu, v: s}
        return (form.A.substitute(mapping)
                + form.B.substitute(mapping) * ds)

    for k in range(1, N + 1):
        r0 = residual(coeffs + [desc.zero()], k)
        r1 = residual(coeffs + [desc.one()], k)
        alpha = r0.coeffs.get((k,), desc.zero())
        if k == 1:
            # the order-1 equation is quadratic in the slope (it selects an
            # invariant direction); orders >= 2 are always linear
            r2 = residual(coeffs + [desc.rational(2)], k)
            val1 = r1.coeffs.get((k,), desc.zero())
            val2 = r2.coeffs.get((k,), desc.zero())
            half = desc.rational(Fraction(1, 2))
            q2 = (val2 - val1 - val1 + alpha) * half
            q1 = val1 - alpha - q2
            if not q2.is_zero() and not alpha.is_zero():
                disc = sqrt_or_widen(q1 * q1 - desc.rational(4) * q2 * alpha)
                roots = sorted(
                    ((-q1 + disc) / (q2 + q2), (-q1 - disc) / (q2 + q2)),
                    key=sort_key)
                coeffs.append(roots[0])
                continue
            beta = q1
        else:
            beta = r1.coeffs.get((k,), desc.zero()) - alpha
        if beta.is_zero():
            if not alpha.is_zero():
                raise ValueError("no invariant graph: obstruction at order %d" % k)
            coeffs.append(desc.zero())
        else:
            coeffs.append(-(alpha / beta))
    return coeffs
