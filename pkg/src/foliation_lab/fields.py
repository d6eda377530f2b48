"""Exact coefficient field towers.

The ground field is Q.  A tower may adjoin one square root of a square-free
integer m (m = -1 gives the imaginary unit) and one transcendental parameter,
yielding at most Q(t)(sqrt(m)).  Elements are kept in canonical form
a + b*sqrt(m) with a, b reduced rational functions of the parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(Exception):
    """Base class for coefficient-field failures."""


class MismatchedFieldError(FieldError):
    """Two operands live over different field descriptors."""


class FieldExtensionError(FieldError):
    """A computation requires an extension the tower cannot host."""


class WidenRequest(FieldError):
    """Raised internally when a square root of m would solve the problem.

    Callers owning the whole computation may widen the tower and retry.
    """

    def __init__(self, m: int):
        super().__init__(f"requires adjoining sqrt({m})")
        self.m = m


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, low-to-high coefficient tuples


def _ptrim(c):
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                   for i in range(n)])


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    lead = q[-1]
    while len(r) - 1 >= dq and _ptrim(r):
        r = list(_ptrim(r))
        if len(r) - 1 < dq:
            break
        c = r[-1] / lead
        k = len(r) - 1 - dq
        quo[k] = c
        for j in range(len(q)):
            r[k + j] -= c * q[j]
        r = r[:-1]
    return _ptrim(quo), _ptrim(r)


def _pgcd(p, q):
    a, b = _ptrim(p), _ptrim(q)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = tuple(c / a[-1] for c in a)  # monic
    return a


def _pmonic_scale(p):
    """Return (monic polynomial, leading coefficient)."""
    if not p:
        return (), Fraction(1)
    lead = p[-1]
    return tuple(c / lead for c in p), lead


_ONE_DEN = (Fraction(1),)
_F0 = Fraction(0)


def _const_rf(c: Fraction) -> "RatFunc":
    """Constant rational function without normalization overhead."""
    r = object.__new__(RatFunc)
    r.num = (c,) if c else ()
    r.den = _ONE_DEN
    return r


class RatFunc:
    """A reduced rational function in one variable over Q.

    Constants are represented with denominator (1,).  Immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ONE_DEN):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),) if num != 0 else ()
        if isinstance(den, (int, Fraction)):
            den = (Fraction(den),)
        if type(num) is not tuple:
            num = tuple(num)
        if type(den) is not tuple:
            den = tuple(den)
        if any(type(c) is not Fraction for c in num):
            num = tuple(Fraction(c) for c in num)
        if any(type(c) is not Fraction for c in den):
            den = tuple(Fraction(c) for c in den)
        num = _ptrim(num)
        den = _ptrim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num = ()
            self.den = _ONE_DEN
            return
        if len(den) == 1:
            if den[0] != 1:
                lead = den[0]
                num = tuple(c / lead for c in num)
            self.num = num
            self.den = _ONE_DEN
            return
        g = _pgcd(num, den)
        if g and len(g) > 1 or (g and g != (Fraction(1),)):
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        den, lead = _pmonic_scale(den)
        num = tuple(c / lead for c in num)
        self.num = num
        self.den = den

    def _const_value(self):
        """The constant value when this is a constant, else None."""
        if self.den is _ONE_DEN or self.den == _ONE_DEN:
            if not self.num:
                return _F0
            if len(self.num) == 1:
                return self.num[0]
        return None

    @staticmethod
    def variable():
        return RatFunc((Fraction(0), Fraction(1)))

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and self.den == (Fraction(1),)

    def as_fraction(self):
        if not self.is_constant():
            raise FieldError("not a constant rational function")
        return self.num[0] if self.num else Fraction(0)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        a, b = self._const_value(), other._const_value()
        if a is not None and b is not None:
            return _const_rf(a + b)
        return RatFunc(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                       _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        a = self._const_value()
        if a is not None:
            return _const_rf(-a)
        return RatFunc(_pneg(self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        a, b = self._const_value(), other._const_value()
        if a is not None and b is not None:
            return _const_rf(a - b)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        a, b = self._const_value(), other._const_value()
        if a is not None and b is not None:
            return _const_rf(a * b)
        if (a is not None and not a) or (b is not None and not b):
            return _const_rf(_F0)
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        a, b = self._const_value(), other._const_value()
        if a is not None and b is not None:
            return _const_rf(a / b)
        return RatFunc(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def degree_pair(self):
        return (len(self.num) - 1 if self.num else -1, len(self.den) - 1)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"

    def render(self, name: str) -> str:
        def side(p):
            if not p:
                return "0"
            terms = []
            for k, c in enumerate(p):
                if c == 0:
                    continue
                if k == 0:
                    terms.append(str(c))
                elif k == 1:
                    terms.append(f"{c}*{name}" if c != 1 else name)
                else:
                    terms.append(f"{c}*{name}^{k}" if c != 1 else f"{name}^{k}")
            return " + ".join(terms).replace("+ -", "- ")
        if self.den == (Fraction(1),):
            return side(self.num)
        return f"({side(self.num)})/({side(self.den)})"


def _squarefree_part(n: int):
    """Return (s, k) with n = s*k^2 and s square-free."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, k = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            s *= d
        k *= d ** (e // 2)
        d += 1
    return sign * s * n, k


def _is_squarefree(n: int) -> bool:
    return _squarefree_part(n)[0] == n


@dataclass(frozen=True)
class FieldDescriptor:
    """Shape of the coefficient tower: Q, optionally (t), optionally sqrt(m)."""

    quadratic_extension: int | None = None
    parameter: str | None = None

    def __post_init__(self):
        m = self.quadratic_extension
        if m is not None:
            if m in (0, 1):
                raise FieldError(f"m = {m} is not an admissible quadratic extension")
            if not _is_squarefree(m):
                raise FieldError(f"m = {m} is not square-free")

    # -- constructors for elements over this descriptor

    def rational(self, q) -> "FieldElement":
        return FieldElement(self, RatFunc(Fraction(q)), RatFunc(0))

    def zero(self) -> "FieldElement":
        return self.rational(0)

    def one(self) -> "FieldElement":
        return self.rational(1)

    def sqrt_gen(self) -> "FieldElement":
        if self.quadratic_extension is None:
            raise FieldError("descriptor has no quadratic extension")
        return FieldElement(self, RatFunc(0), RatFunc(1))

    def param_gen(self) -> "FieldElement":
        if self.parameter is None:
            raise FieldError("descriptor has no transcendental parameter")
        return FieldElement(self, RatFunc.variable(), RatFunc(0))

    def widened(self, m: int) -> "FieldDescriptor":
        s, _ = _squarefree_part(m)
        if self.quadratic_extension is not None:
            if self.quadratic_extension == s:
                return self
            raise FieldExtensionError(
                f"tower already hosts sqrt({self.quadratic_extension}); "
                f"cannot also adjoin sqrt({s})")
        return FieldDescriptor(s, self.parameter)

    def with_parameter(self, name: str) -> "FieldDescriptor":
        if self.parameter is not None:
            if self.parameter == name:
                return self
            raise FieldExtensionError("tower already hosts a transcendental parameter")
        return FieldDescriptor(self.quadratic_extension, name)

    def extends(self, other: "FieldDescriptor") -> bool:
        ok_m = other.quadratic_extension in (None, self.quadratic_extension)
        ok_p = other.parameter in (None, self.parameter)
        return ok_m and ok_p

    def describe(self) -> str:
        s = "Q"
        if self.parameter is not None:
            s += f"({self.parameter})"
        if self.quadratic_extension is not None:
            s += f"(sqrt({self.quadratic_extension}))"
        return s


QQ = FieldDescriptor()


class FieldElement:
    """Element a + b*sqrt(m) of a field tower, a and b rational functions."""

    __slots__ = ("desc", "a", "b")

    def __init__(self, desc: FieldDescriptor, a: RatFunc, b: RatFunc):
        if desc.quadratic_extension is None and not b.is_zero():
            raise FieldError("sqrt coordinate in a tower without extension")
        if desc.parameter is None:
            for part in (a, b):
                if part.degree_pair() > (0, 0):
                    raise FieldError("parameter appears in a parameter-free tower")
        self.desc = desc
        self.a = a
        self.b = b

    # -- coercion helpers

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.desc, RatFunc(other), RatFunc(0))
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.desc != self.desc:
            raise MismatchedFieldError(
                f"{self.desc.describe()} vs {other.desc.describe()}")
        return other

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self):
        return self.b.is_zero() and self.a.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("element is not rational")
        return self.a.as_fraction()

    def involves_parameter(self) -> bool:
        return self.a.degree_pair() > (0, 0) or self.b.degree_pair() > (0, 0)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b.is_zero() and self.a == RatFunc(other)
        return (isinstance(other, FieldElement) and self.desc == other.desc
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.desc, self.a, self.b))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.desc, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.desc, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.desc.quadratic_extension
        a = self.a * other.a
        if m is not None:
            a = a + self.b * other.b * m
        b = self.a * other.b + self.b * other.a
        return FieldElement(self.desc, a, b)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.desc.one()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self._inv_conj()

    def _inv_conj(self):
        m = self.desc.quadratic_extension or 0
        norm = self.a * self.a - self.b * self.b * m
        if norm.is_zero():
            # impossible for square-free m over Q(t); defensive
            raise FieldError("zero norm in quadratic tower")
        return FieldElement(self.desc, self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self):
        return FieldElement(self.desc, self.a, -self.b)

    def render(self) -> str:
        name = self.desc.parameter or "t"
        m = self.desc.quadratic_extension
        if self.b.is_zero():
            return self.a.render(name)
        parts = []
        if not self.a.is_zero():
            parts.append(self.a.render(name))
        bs = self.b.render(name)
        root = f"rt({m})"
        if bs == "1":
            parts.append(root)
        elif bs == "-1":
            parts.append(f"-{root}")
        else:
            parts.append(f"({bs})*{root}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"<{self.render()} in {self.desc.describe()}>"

    def to_complex(self) -> complex:
        """Floating image; only for numerical test oracles."""
        if self.involves_parameter():
            raise FieldError("cannot take a numeric image of a parameter")
        val = complex(self.a.as_fraction())
        if self.desc.quadratic_extension is not None and self.b:
            val += complex(self.b.as_fraction()) * complex(self.desc.quadratic_extension) ** 0.5
        return val


def coerce(x: FieldElement, desc: FieldDescriptor) -> FieldElement:
    """Embed x into a tower that extends its own."""
    if x.desc == desc:
        return x
    if not desc.extends(x.desc):
        raise FieldExtensionError(
            f"cannot embed {x.desc.describe()} into {desc.describe()}")
    return FieldElement(desc, x.a, x.b)


def _fraction_sqrt(q: Fraction):
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = _int_sqrt_exact(num)
    rd = _int_sqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _int_sqrt_exact(n: int):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def sqrt_in_tower(x: FieldElement):
    """A square root of x inside its own tower, or None.

    Only elements free of the transcendental parameter are considered;
    parameter-dependent square roots lie outside the supported towers.
    """
    if x.involves_parameter():
        return None
    desc = x.desc
    m = desc.quadratic_extension
    a = x.a.as_fraction()
    if x.b.is_zero():
        r = _fraction_sqrt(a)
        if r is not None:
            return desc.rational(r)
        if m is not None:
            r = _fraction_sqrt(a / m)
            if r is not None:
                return FieldElement(desc, RatFunc(0), RatFunc(r))
        return None
    # x = a + b*sqrt(m); candidate sqrt c + d*sqrt(m) needs
    # c^2 + m d^2 = a and 2 c d = b, so z = c^2 solves z^2 - a z + m b^2 / 4 = 0.
    b = x.b.as_fraction()
    disc = a * a - Fraction(m) * b * b
    s = _fraction_sqrt(disc)
    if s is None:
        return None
    for root in ((a + s) / 2, (a - s) / 2):
        c = _fraction_sqrt(root)
        if c is not None and c != 0:
            d = b / (2 * c)
            cand = FieldElement(desc, RatFunc(c), RatFunc(d))
            if cand * cand == x:
                return cand
    return None


def sqrt_or_widen(x: FieldElement):
    """Square root in the tower; raise WidenRequest when one adjunction fixes it.

    Raises FieldExtensionError when the root lies beyond any supported tower.
    """
    r = sqrt_in_tower(x)
    if r is not None:
        return r
    if x.involves_parameter():
        raise FieldExtensionError("square root of a parameter-dependent element")
    if x.b.is_zero() and x.desc.quadratic_extension is None:
        q = x.a.as_fraction()
        s, _ = _squarefree_part(q.numerator * q.denominator)
        raise WidenRequest(s)
    raise FieldExtensionError(
        f"square root of {x.render()} needs a second quadratic extension")


def sort_key(x: FieldElement):
    """Deterministic total order key for elements of one tower."""
    return (x.a.num, x.a.den, x.b.num, x.b.den)


def ratio_in_positive_rationals(tr: FieldElement, det: FieldElement) -> str:
    """Classify the eigenvalue quotient of a 2x2 linear part from trace and
    determinant of its characteristic polynomial T^2 - tr*T + det.

    Returns one of 'yes', 'no', 'zero-eigenvalue', 'nilpotent'.  'yes' means
    the quotient of the two eigenvalues is a positive rational number,
    decided exactly: with t = tr^2/det, the quotient is in Q_{>0} iff t is
    rational, t >= 4 and (t-2)^2 - 4 is the square of a rational.
    """
    if det.is_zero():
        return "nilpotent" if tr.is_zero() else "zero-eigenvalue"
    t = tr * tr / det
    if not t.is_rational():
        return "no"
    tq = t.as_fraction()
    if tq < 4:
        return "no"
    return "yes" if _fraction_sqrt((tq - 2) ** 2 - 4) is not None else "no"
