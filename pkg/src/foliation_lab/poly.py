"""Sparse multivariate polynomials and truncated power series.

An MPoly maps exponent tuples to nonzero FieldElements over a fixed tuple of
variable labels.  A PSeries is the same data plus a precision N: coefficients
are trusted for total degree < N only, and arithmetic propagates the minimum
precision of the operands (pessimistic, never reporting an untrusted
coefficient).
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .fields import (FieldDescriptor, FieldElement, FieldError,
                     MismatchedFieldError, coerce, sort_key)


class OrderIndeterminate(FieldError):
    """The vanishing order cannot be certified at the available precision."""


def _as_element(c, desc: FieldDescriptor) -> FieldElement:
    if isinstance(c, FieldElement):
        if c.desc != desc:
            raise MismatchedFieldError("coefficient over a different tower")
        return c
    return desc.rational(Fraction(c))


class MPoly:
    """Polynomial (prec is None) or truncated series (prec = int)."""

    __slots__ = ("vars", "coeffs", "desc", "prec")

    def __init__(self, vars, coeffs, desc: FieldDescriptor, prec=None):
        self.vars = tuple(vars)
        self.desc = desc
        self.prec = prec
        clean = {}
        for exp, c in coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars) or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for variables {self.vars}")
            if prec is not None and sum(exp) >= prec:
                continue
            c = _as_element(c, desc)
            if not c.is_zero():
                clean[exp] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars, desc, prec=None):
        return cls(vars, {}, desc, prec)

    @classmethod
    def constant(cls, vars, c, desc, prec=None):
        return cls(vars, {(0,) * len(vars): c}, desc, prec)

    @classmethod
    def variable(cls, vars, name, desc, prec=None):
        exp = [0] * len(vars)
        exp[tuple(vars).index(name)] = 1
        return cls(vars, {tuple(exp): 1}, desc, prec)

    def _make(self, coeffs, prec):
        return MPoly(self.vars, coeffs, self.desc, prec)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def terms(self):
        """Deterministically ordered (exponent, coefficient) pairs."""
        return sorted(self.coeffs.items())

    def constant_coefficient(self) -> FieldElement:
        return self.coeffs.get((0,) * len(self.vars), self.desc.zero())

    def coefficient(self, exp) -> FieldElement:
        return self.coeffs.get(tuple(exp), self.desc.zero())

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def degree_in(self, name: str) -> int:
        if not self.coeffs:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.coeffs)

    def order(self) -> int:
        """Vanishing order at the origin (smallest total degree present)."""
        if not self.coeffs:
            if self.prec is not None:
                raise OrderIndeterminate(
                    f"series is zero to its precision {self.prec}")
            raise OrderIndeterminate("polynomial is identically zero")
        return min(sum(e) for e in self.coeffs)

    def order_lower_bound(self) -> int:
        """min(order, prec); defined even for the zero jet."""
        if not self.coeffs:
            return self.prec if self.prec is not None else 10 ** 9
        o = min(sum(e) for e in self.coeffs)
        return o if self.prec is None else min(o, self.prec)

    def min_exponent_in(self, name: str) -> int:
        if not self.coeffs:
            return 0
        i = self.vars.index(name)
        return min(e[i] for e in self.coeffs)

    def homogeneous_part(self, k: int) -> "MPoly":
        return self._make({e: c for e, c in self.coeffs.items() if sum(e) == k},
                          None)

    def lowest_part(self) -> "MPoly":
        return self.homogeneous_part(self.order())

    # -- arithmetic --------------------------------------------------------

    def _match(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = MPoly.constant(self.vars, other, self.desc)
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        if other.desc != self.desc:
            raise MismatchedFieldError("operands over different towers")
        return other

    @staticmethod
    def _join_prec(p, q):
        if p is None:
            return q
        if q is None:
            return p
        return min(p, q)

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return self._make(out, self._join_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._make({e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        prec = self._join_prec(self.prec, other.prec)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if prec is not None and sum(e) >= prec:
                    continue
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return self._make(out, prec)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = _as_element(c, self.desc)
        return self._make({e: v * c for e, v in self.coeffs.items()}, self.prec)

    def __eq__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __hash__(self):
        return hash((self.vars, tuple(self.terms()), self.prec))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.constant(self.vars, 1, self.desc, self.prec)
        for _ in range(n):
            result = result * self
        return result

    def partial(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        prec = None if self.prec is None else max(self.prec - 1, 0)
        return self._make(out, prec)

    def truncate(self, N: int) -> "MPoly":
        prec = N if self.prec is None else min(self.prec, N)
        return self._make(self.coeffs, prec)

    def as_polynomial(self) -> "MPoly":
        """Forget the precision bound (caller asserts exactness)."""
        return self._make(self.coeffs, None)

    # -- substitution ------------------------------------------------------

    def substitute(self, mapping: dict) -> "MPoly":
        """Replace each variable by the polynomial/series mapping[name].

        All images must share one variable tuple and tower.  Precision of the
        result is the minimum over the own precision and those of the images.
        """
        images = []
        for name in self.vars:
            img = mapping.get(name)
            if img is None:
                raise ValueError(f"no image for variable {name}")
            images.append(img)
        tgt = images[0]
        prec = self.prec
        for img in images:
            if img.vars != tgt.vars or img.desc != self.desc:
                raise ValueError("substitution images are incompatible")
            prec = self._join_prec(prec, img.prec)
        out = MPoly.zero(tgt.vars, self.desc, prec)
        pow_cache = [{0: MPoly.constant(tgt.vars, 1, self.desc, prec)}
                     for _ in images]
        for e, c in self.terms():
            term = MPoly.constant(tgt.vars, c, self.desc, prec)
            for i, k in enumerate(e):
                cache = pow_cache[i]
                if k not in cache:
                    kk = max(cache)
                    acc = cache[kk]
                    while kk < k:
                        acc = acc * images[i]
                        kk += 1
                        cache[kk] = acc
                term = term * cache[k]
            out = out + term
        return out

    def translate(self, shifts: dict) -> "MPoly":
        """Substitute name -> name + c for each (name, c) in shifts."""
        mapping = {}
        for name in self.vars:
            img = MPoly.variable(self.vars, name, self.desc, self.prec)
            if name in shifts:
                img = img + MPoly.constant(self.vars, shifts[name], self.desc,
                                           self.prec)
            mapping[name] = img
        return self.substitute(mapping)

    def evaluate(self, point: dict) -> FieldElement:
        total = self.desc.zero()
        vals = [_as_element(point[name], self.desc) for name in self.vars]
        for e, c in self.terms():
            term = c
            for v, k in zip(vals, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        return total

    def restrict(self, fixed: dict) -> "MPoly":
        """Set some variables to field constants, keeping the others."""
        keep = [v for v in self.vars if v not in fixed]
        out = {}
        for e, c in self.coeffs.items():
            val = c
            ne = []
            for name, k in zip(self.vars, e):
                if name in fixed:
                    base = _as_element(fixed[name], self.desc)
                    for _ in range(k):
                        val = val * base
                else:
                    ne.append(k)
            ne = tuple(ne)
            if not val.is_zero():
                out[ne] = out[ne] + val if ne in out else val
        return MPoly(keep, out, self.desc, self.prec)

    def rename(self, new_vars) -> "MPoly":
        if len(new_vars) != len(self.vars):
            raise ValueError("variable count mismatch")
        return MPoly(tuple(new_vars), self.coeffs, self.desc, self.prec)

    def coerce_to(self, desc: FieldDescriptor) -> "MPoly":
        """Embed the coefficients into a wider field tower."""
        if desc == self.desc:
            return self
        out = {e: coerce(c, desc) for e, c in self.coeffs.items()}
        return MPoly(self.vars, out, desc, self.prec)

    # -- divisibility ------------------------------------------------------

    def divide_var_power(self, name: str, k: int) -> "MPoly":
        """Exact division by name**k (series precision drops by k)."""
        if k == 0:
            return self
        i = self.vars.index(name)
        out = {}
        for e, c in self.coeffs.items():
            if e[i] < k:
                raise ValueError(f"not divisible by {name}^{k}")
            ne = list(e)
            ne[i] -= k
            out[tuple(ne)] = c
        prec = None if self.prec is None else max(self.prec - k, 0)
        return self._make(out, prec)

    def monomial_content(self):
        """Exponent tuple of the largest monomial dividing all terms."""
        if not self.coeffs:
            return (0,) * len(self.vars)
        exps = list(self.coeffs)
        return tuple(min(e[i] for e in exps) for i in range(len(self.vars)))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars, e) if k > 0)
            cs = c.render()
            if mono:
                cs = f"({cs})*{mono}" if not _plain(cs) else \
                    (mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            parts.append(cs)
        s = " + ".join(parts).replace("+ -", "- ")
        if self.prec is not None:
            s += f" + O(deg {self.prec})"
        return s

    def __repr__(self):
        return f"<{self.render()}>"


def _plain(s: str) -> bool:
    return all(ch not in s for ch in "+-*/ ") or (s.lstrip("-").isdigit())


def PSeries(vars, coeffs, desc, prec) -> MPoly:
    """Truncated power series constructor (an MPoly carrying a precision)."""
    if prec is None:
        raise ValueError("a series needs a finite precision")
    return MPoly(vars, coeffs, desc, prec)


def vanishing_order(p: MPoly) -> int:
    """Smallest total degree with a nonzero coefficient."""
    return p.order()


def series_compose(f: MPoly, g) -> MPoly:
    """Substitute the components of g into the one-variable series f.

    Each component of g must vanish at the origin.
    """
    if len(f.vars) != 1:
        raise ValueError("series_compose expects a one-variable series")
    if isinstance(g, MPoly):
        g = (g,)
    if len(g) != 1:
        raise ValueError("exactly one image per variable of f")
    img = g[0]
    if not img.constant_coefficient().is_zero():
        raise ValueError("substituted series must have zero constant term")
    return f.substitute({f.vars[0]: img})


def exact_divide(p: MPoly, q: MPoly):
    """Quotient r with p = q*r (exact, or to the joint precision); None if
    the division fails.

    Solved as a bounded linear system in the unknown coefficients of r, which
    avoids multivariate division orderings.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MPoly.zero(p.vars, p.desc, MPoly._join_prec(p.prec, q.prec))
    desc = p.desc
    nvars = len(p.vars)
    prec = MPoly._join_prec(p.prec, q.prec)
    try:
        oq = q.order()
    except OrderIndeterminate:
        return None
    if prec is None:
        bounds = []
        for i in range(nvars):
            dp = max(e[i] for e in p.coeffs)
            dq = max((e[i] for e in q.coeffs), default=0)
            if dp < dq:
                return None
            bounds.append(dp - dq)
        unknowns = _box_exponents(bounds)
        deg_cap = None
    else:
        cap = max(prec - oq, 0)
        unknowns = [e for e in _box_exponents([max(cap - 1, 0)] * nvars)
                    if sum(e) < cap]
        deg_cap = prec
    unknowns = sorted(set(unknowns))
    index = {e: j for j, e in enumerate(unknowns)}
    # equations: for every exponent E reachable in q*r or present in p
    eqs = {}
    for eq_exp, qc in q.coeffs.items():
        for ue in unknowns:
            E = tuple(a + b for a, b in zip(eq_exp, ue))
            if deg_cap is not None and sum(E) >= deg_cap:
                continue
            row = eqs.setdefault(E, {})
            j = index[ue]
            row[j] = row.get(j, desc.zero()) + qc
    for E in p.coeffs:
        if deg_cap is not None and sum(E) >= deg_cap:
            continue
        eqs.setdefault(E, {})
    exps = sorted(eqs)
    matrix = []
    rhs = []
    zero = desc.zero()
    for E in exps:
        row = [zero] * len(unknowns)
        for j, v in eqs[E].items():
            row[j] = v
        matrix.append(row)
        rhs.append(p.coeffs.get(E, zero))
    sol = linalg.solve(matrix, rhs, desc)
    if sol is None:
        return None
    out_prec = None if prec is None else max(prec - oq, 0)
    return MPoly(p.vars, {e: sol[j] for e, j in index.items()}, desc, out_prec)


def _box_exponents(bounds):
    exps = [()]
    for b in bounds:
        exps = [e + (k,) for e in exps for k in range(b + 1)]
    return exps


def divides(p: MPoly, q: MPoly) -> bool:
    """True when q divides p (exactly, or to the joint precision)."""
    return exact_divide(p, q) is not None


# ---------------------------------------------------------------------------
# univariate polynomials over the tower (dense FieldElement lists, low->high)


def to_univariate(p: MPoly, name: str):
    """Coefficient list of p viewed in `name`; other variables must be absent."""
    i = p.vars.index(name)
    coeffs = [p.desc.zero()] * (p.degree_in(name) + 1 if not p.is_zero() else 0)
    for e, c in p.coeffs.items():
        if any(k != 0 for j, k in enumerate(e) if j != i):
            raise ValueError("polynomial involves other variables")
        coeffs[e[i]] = c
    return _utrim(coeffs)


def _utrim(c):
    n = len(c)
    while n and c[n - 1].is_zero():
        n -= 1
    return c[:n]


def u_eval(c, x: FieldElement):
    acc = x.desc.zero()
    for k in reversed(c):
        acc = acc * x + k
    return acc


def u_divmod(a, b, desc):
    a = list(a)
    q = [desc.zero()] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(_utrim(a)) >= len(b):
        a = _utrim(a)
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for j in range(len(b)):
            a[k + j] = a[k + j] - f * b[j]
        a = a[:-1]
    return q, _utrim(a)


def u_gcd(a, b, desc):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, u_divmod(a, b, desc)[1]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def u_deflate(c, root, desc):
    """Divide by (X - root)."""
    out, rem = u_divmod(c, [-root, desc.one()], desc)
    if rem:
        raise ValueError("not a root")
    return out


def _rational_root_candidates(coeffs):
    """Rational-root-theorem candidates for a rational-coefficient list."""
    fracs = [c.as_fraction() for c in coeffs]
    from math import gcd as igcd
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // igcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return []

    def divisors(n):
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.extend((d, n // d))
            d += 1
        return sorted(set(out))

    cands = set()
    for p in divisors(a0):
        for q in divisors(an):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def u_roots_in_tower(coeffs, desc: FieldDescriptor):
    """All roots lying inside the tower, each listed once, sorted.

    Raises FieldExtensionError (or WidenRequest) when an irreducible factor
    of degree >= 2 resists the supported towers.
    """
    from .fields import FieldExtensionError, sqrt_or_widen

    c = _utrim(list(coeffs))
    if not c:
        raise ValueError("zero polynomial has every root")
    roots = []
    # strip root at the origin
    k = 0
    while k < len(c) and c[k].is_zero():
        k += 1
    if k:
        roots.append(desc.zero())
        c = c[k:]
    while len(c) > 1:
        if len(c) == 2:
            roots.append(-c[0] / c[1])
            break
        if all(x.is_rational() for x in c):
            found = None
            for cand in _rational_root_candidates(c):
                x = desc.rational(cand)
                if u_eval(c, x).is_zero():
                    found = x
                    break
            if found is not None:
                roots.append(found)
                c = u_deflate(c, found, desc)
                continue
        if len(c) == 3:
            a2, a1, a0 = c[2], c[1], c[0]
            disc = a1 * a1 - 4 * a2 * a0
            if disc.is_zero():
                roots.append(-a1 / (2 * a2))
                break
            s = sqrt_or_widen(disc)
            roots.append((-a1 + s) / (2 * a2))
            roots.append((-a1 - s) / (2 * a2))
            break
        raise FieldExtensionError(
            "irreducible factor of degree >= 3 lies outside the tower")
    seen = []
    for r in roots:
        if all(not (r - s).is_zero() for s in seen):
            seen.append(r)
    seen.sort(key=sort_key)
    return seen


def u_resultant(a, b, desc: FieldDescriptor) -> FieldElement:
    """Sylvester resultant of two univariate coefficient lists."""
    a, b = _utrim(list(a)), _utrim(list(b))
    if not a or not b:
        return desc.zero()
    n, m = len(a) - 1, len(b) - 1
    if n == 0:
        return a[0] ** m if m >= 0 else desc.one()
    if m == 0:
        return b[0] ** n
    size = n + m
    zero = desc.zero()
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, cj in enumerate(reversed(a)):
            row[i + j] = cj
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, cj in enumerate(reversed(b)):
            row[i + j] = cj
        rows.append(row)
    return linalg.det(rows, desc)


# ---------------------------------------------------------------------------
# bivariate gcd (used by 1-form normalization)


def gcd_bivariate(p: MPoly, q: MPoly) -> MPoly:
    """Gcd of two exact polynomials in exactly two variables, monic-ish
    (normalized so its leading term has coefficient one)."""
    if p.prec is not None or q.prec is not None:
        raise ValueError("gcd of series is not supported")
    if p.is_zero():
        return _normalize_lead(q)
    if q.is_zero():
        return _normalize_lead(p)
    u, v = p.vars
    a = _to_recursive(p, v)
    b = _to_recursive(q, v)
    g = _rec_gcd(a, b, p.vars, p.desc)
    return _normalize_lead(_from_recursive(g, p.vars, p.desc))


def _to_recursive(p: MPoly, v: str):
    """Map to a dict deg_v -> univariate MPoly in the first variable."""
    out = {}
    iu, iv = 0, 1
    for (eu, ev), c in p.coeffs.items():
        out.setdefault(ev, {})[(eu, 0)] = c
    return {k: MPoly(p.vars, d, p.desc) for k, d in out.items()}


def _from_recursive(d, vars, desc):
    total = MPoly.zero(vars, desc)
    v = MPoly.variable(vars, vars[1], desc)
    for k in sorted(d):
        total = total + d[k] * v ** k
    return total


def _rec_content(d, vars, desc):
    g = None
    for k in sorted(d):
        cu = to_univariate(d[k], vars[0])
        g = cu if g is None else u_gcd(g, cu, desc)
        if len(g) == 1:
            break
    return g


def _rec_primitive(d, vars, desc, content):
    if len(content) == 1:
        inv = content[0].inverse()
        return {k: p.scale(inv) for k, p in d.items()}
    out = {}
    for k, p in d.items():
        q, r = u_divmod(to_univariate(p, vars[0]), content, desc)
        if r:
            raise FieldError("content division left a remainder")
        out[k] = MPoly(vars, {(i, 0): c for i, c in enumerate(q)
                              if not c.is_zero()}, desc)
    return out


def _rec_deg(d):
    return max(d) if d else -1


def _rec_gcd(a, b, vars, desc):
    ca = _rec_content(a, vars, desc)
    cb = _rec_content(b, vars, desc)
    cg = u_gcd(ca, cb, desc)
    a = _rec_primitive(a, vars, desc, ca)
    b = _rec_primitive(b, vars, desc, cb)
    while b:
        if _rec_deg(a) < _rec_deg(b):
            a, b = b, a
            continue
        r = _rec_prem(a, b, vars, desc)
        a, b = b, r
        if b:
            cb2 = _rec_content(b, vars, desc)
            b = _rec_primitive(b, vars, desc, cb2)
    cgpoly = MPoly(vars, {(i, 0): c for i, c in enumerate(cg)}, desc)
    return {k: p * cgpoly for k, p in a.items()}


def _rec_prem(a, b, vars, desc):
    """Pseudo-remainder of a by b in the outer variable."""
    a = dict(a)
    db = _rec_deg(b)
    lb = b[db]
    while a and _rec_deg(a) >= db:
        da = _rec_deg(a)
        la = a[da]
        a = {k: p * lb for k, p in a.items()}
        for k, p in b.items():
            shift = k + da - db
            term = p * la
            a[shift] = a.get(shift, MPoly.zero(vars, desc)) - term
        a = {k: p for k, p in a.items() if not p.is_zero()}
        if _rec_deg(a) == da:
            a.pop(da, None)
    return a


def _normalize_lead(p: MPoly) -> MPoly:
    if p.is_zero():
        return p
    lead = max(p.coeffs)
    return p.scale(p.coeffs[lead].inverse())
