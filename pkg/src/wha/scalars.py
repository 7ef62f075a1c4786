"""Exact scalars: a real algebraic number field Q[x]/(m(x)) with a designated
real embedding, and a tolerance-based complex backend for phase-valued data.

All structure constants of the algebras in this package live in one of these
two scalar domains.  The exact domain represents elements as residue-class
polynomials with rational coefficients; signs and embeddings are decided by
refining an isolating interval of the chosen real root of ``m``.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

_QZERO = _Q(0)
_QONE = _Q(1)


def _to_q(x):
    """Coerce ints, Fractions, strings 'p/q' and _Q values to _Q."""
    if isinstance(x, str):
        x = Fraction(x)
    try:
        return _Q(x)
    except (TypeError, SystemError):
        # rational-like object whose numerator/denominator are not plain ints
        return _Q(int(x.numerator)) / _Q(int(x.denominator))


def q_str(x) -> str:
    """Serialize a rational as 'p/q' (or 'p' when the denominator is 1)."""
    f = Fraction(x.numerator, x.denominator)
    return str(f)


# ---------------------------------------------------------------------------
# Rational polynomial helpers (coefficient lists, constant term first).
# ---------------------------------------------------------------------------

def poly_trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def poly_add(a, b):
    n = max(len(a), len(b))
    out = [_QZERO] * n
    for i, x in enumerate(a):
        out[i] = out[i] + x
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return poly_trim(out)


def poly_scale(a, s):
    return poly_trim([x * s for x in a])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [_QZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_divmod(a, b):
    a = list(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = _QONE / b[-1]
    q = [_QZERO] * max(0, len(a) - len(b) + 1)
    while len(poly_trim(a)) >= len(b):
        a = poly_trim(a)
        d = len(a) - len(b)
        coef = a[-1] * inv
        q[d] = coef
        for i, y in enumerate(b):
            a[i + d] = a[i + d] - coef * y
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b):
    """Monic gcd over the rationals."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = poly_scale(a, _QONE / a[-1])
    return a


def poly_deriv(a):
    return poly_trim([a[i] * i for i in range(1, len(a))])


def poly_eval(a, x):
    acc = _QZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _interval_mul(lo1, hi1, lo2, hi2):
    p = (lo1 * lo2, lo1 * hi2, hi1 * lo2, hi1 * hi2)
    return min(p), max(p)


def poly_eval_interval(a, lo, hi):
    """Image bounds of a polynomial over [lo, hi] via interval Horner."""
    alo = ahi = _QZERO
    for c in reversed(a):
        alo, ahi = _interval_mul(alo, ahi, lo, hi)
        alo, ahi = alo + c, ahi + c
    return alo, ahi


def sturm_chain(p):
    chain = [poly_trim(p), poly_deriv(p)]
    while chain[-1]:
        rem = poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(poly_scale(rem, _Q(-1)))
    return chain


def sturm_sign_changes(chain, x):
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(p, lo, hi):
    """Number of distinct real roots of p in (lo, hi]; p must be squarefree
    on that interval for multiplicity-free counting to be meaningful."""
    chain = sturm_chain(p)
    return sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi)


# ---------------------------------------------------------------------------
# The exact field.
# ---------------------------------------------------------------------------

class ScalarError(ArithmeticError):
    pass


class NumberField:
    """Q[x]/(m(x)) ordered by a designated real root of m.

    ``minpoly`` is an integer coefficient list, constant term first, monic and
    squarefree; ``interval`` is a rational pair isolating exactly one real
    root of m.  Elements are :class:`FieldElement` residue classes.
    """

    def __init__(self, minpoly, interval):
        m = [_to_q(c) for c in minpoly]
        m = poly_trim(m)
        if len(m) < 2:
            raise ScalarError("minimal polynomial must have degree >= 1")
        if m[-1] != 1:
            raise ScalarError("minimal polynomial must be monic")
        for c in m:
            if c.denominator != 1:
                raise ScalarError("minimal polynomial must have integer coefficients")
        if len(poly_gcd(m, poly_deriv(m))) > 1:
            raise ScalarError("minimal polynomial must be squarefree")
        lo, hi = _to_q(interval[0]), _to_q(interval[1])
        if not lo < hi:
            raise ScalarError("isolating interval must be nonempty")
        if poly_eval(m, lo) == 0 or poly_eval(m, hi) == 0:
            raise ScalarError("interval endpoints must not be roots")
        if count_real_roots(m, lo, hi) != 1:
            raise ScalarError("interval must isolate exactly one real root")

        self.minpoly = m
        self.degree = len(m) - 1
        self._lo, self._hi = lo, hi
        # x^k mod m for k = degree .. 2*degree-2, used by multiplication.
        red = []
        cur = [-c for c in m[:-1]]          # x^degree
        red.append(tuple(cur) + (_QZERO,) * (self.degree - len(cur)))
        for _ in range(self.degree - 2):
            cur = [_QZERO] + cur            # multiply by x
            if len(cur) > self.degree:
                top = cur.pop()
                if top:
                    for i in range(self.degree):
                        cur[i] = cur[i] + top * red[0][i]
            cur = cur + [_QZERO] * (self.degree - len(cur))
            red.append(tuple(cur))
        self._red = red
        self.zero = FieldElement(self, (_QZERO,) * self.degree)
        self.one = FieldElement(self, (_QONE,) + (_QZERO,) * (self.degree - 1))
        # Minimal polynomial of the isolated root itself (m may be reducible);
        # needed for the exact zero test behind sign_of.
        self._root_minpoly = self._find_root_factor()

    is_exact = True

    def _find_root_factor(self):
        if self.degree == 1:
            return self.minpoly
        from sympy import Poly, Symbol, factor_list
        x = Symbol("x")
        fr = [Fraction(c.numerator, c.denominator) for c in self.minpoly]
        _, factors = factor_list(Poly(sum(c * x ** i for i, c in enumerate(fr)), x))
        hits = []
        for f, _mult in factors:
            coeffs = [_to_q(Fraction(c.p, c.q)) for c in reversed(f.all_coeffs())]
            coeffs = poly_scale(coeffs, _QONE / coeffs[-1])
            if len(coeffs) == 2 and self._lo < -coeffs[0] < self._hi:
                hits.append(coeffs)
            elif len(coeffs) > 2 and count_real_roots(coeffs, self._lo, self._hi) == 1:
                hits.append(coeffs)
        assert len(hits) == 1
        return hits[0]

    # -- construction ------------------------------------------------------

    def from_coeffs(self, coeffs):
        c = [_to_q(x) for x in coeffs]
        if len(c) > self.degree:
            c = self._reduce_long(c)
        c = c + [_QZERO] * (self.degree - len(c))
        return FieldElement(self, tuple(c))

    def _reduce_long(self, c):
        c = list(c) + [_QZERO] * max(0, self.degree - len(c))
        for k in range(len(c) - 1, self.degree - 1, -1):
            top = c[k]
            if top:
                row = self._red[k - self.degree]
                for i in range(self.degree):
                    c[i] = c[i] + top * row[i]
            c.pop()
        return c

    def from_int(self, n):
        return self.from_coeffs([n])

    def from_fraction(self, fr):
        return self.from_coeffs([fr])

    def gen(self):
        if self.degree == 1:
            # x = root is rational here
            return self.from_coeffs([-self.minpoly[0]])
        return self.from_coeffs([0, 1])

    # -- the real embedding --------------------------------------------------

    def refine_interval(self, width):
        """Shrink the root interval below ``width``; returns (lo, hi)."""
        lo, hi = self._lo, self._hi
        m = self._root_minpoly
        slo = poly_eval(m, lo)
        shi = poly_eval(m, hi)
        assert slo != 0 and shi != 0
        while hi - lo >= width:
            mid = (lo + hi) / 2
            v = poly_eval(m, mid)
            if v == 0:
                eps = (hi - lo) / 4
                lo, hi = mid - eps, mid + eps
                while poly_eval(m, lo) == 0 or poly_eval(m, hi) == 0 or hi - lo >= width:
                    eps = eps / 2
                    lo, hi = mid - eps, mid + eps
                slo = poly_eval(m, lo)
                shi = poly_eval(m, hi)
                break
            if (v > 0) == (slo > 0):
                lo, slo = mid, v
            else:
                hi, shi = mid, v
        self._lo, self._hi = lo, hi
        return lo, hi

    def embed_interval(self, elem, width):
        """Rational bounds of width < ``width`` around the embedded value."""
        p = poly_trim(elem.coeffs)
        if not p:
            return _QZERO, _QZERO
        lo, hi = self._lo, self._hi
        while True:
            vlo, vhi = poly_eval_interval(p, lo, hi)
            if vhi - vlo < width:
                return vlo, vhi
            lo, hi = self.refine_interval((hi - lo) / 4)

    def sign_of(self, elem) -> int:
        """Exact sign of the embedded value: -1, 0, or +1."""
        p = poly_trim(elem.coeffs)
        if not p:
            return 0
        if len(p) >= len(self._root_minpoly) or self.degree == 1:
            if not poly_divmod(p, self._root_minpoly)[1]:
                return 0
        lo, hi = self._lo, self._hi
        while True:
            vlo, vhi = poly_eval_interval(p, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            lo, hi = self.refine_interval((hi - lo) / 4)

    def embed(self, elem, precision=53):
        """Evaluate at the isolated root to ``precision`` bits, as ApproxComplex."""
        if precision < 32:
            raise ScalarError("embedding precision must be at least 32 bits")
        shift = min(precision, 1060)
        width = _Q(1, 2 ** shift)
        vlo, vhi = self.embed_interval(elem, width)
        mid = (vlo + vhi) / 2
        val = float(Fraction(mid.numerator, mid.denominator))
        tol = max(2.0 ** -min(precision, 1020), abs(val) * 2.0 ** -52, 5e-324)
        return ApproxComplex(val, 0.0, tol=tol)

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.minpoly == other.minpoly
                and self._root_minpoly == other._root_minpoly)

    def __hash__(self):
        return hash(tuple(self.minpoly))

    def __repr__(self):
        return "NumberField(%s)" % ([q_str(c) for c in self.minpoly],)

    def to_json(self):
        return {
            "minpoly": [int(c.numerator) for c in self.minpoly],
            "interval": [q_str(self._lo), q_str(self._hi)],
        }


class FieldElement:
    """Residue-class element of a NumberField; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ScalarError("field mismatch")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_QONE):
            return self.field.from_coeffs([other])
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (a[0] * b[0],))
        out = [_QZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        red = self.field._red
        for k in range(2 * d - 2, d - 1, -1):
            top = out[k]
            if top:
                row = red[k - d]
                for i in range(d):
                    out[i] = out[i] + top * row[i]
        return FieldElement(self.field, tuple(out[:d]))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended gcd with the minimal polynomial."""
        p = poly_trim(self.coeffs)
        if not p:
            raise ZeroDivisionError("division by zero in number field")
        m = self.field.minpoly
        # extended Euclid: s*p + t*m = g
        r0, r1 = list(m), list(p)
        s0, s1 = [], [_QONE]
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_add(s0, poly_scale(poly_mul(q, s1), _Q(-1)))
        if len(r0) != 1:
            raise ZeroDivisionError("element is a zero divisor (reducible modulus)")
        inv = poly_scale(s0, _QONE / r0[0])
        return self.field.from_coeffs(inv)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def conj(self):
        # The exact backend supports only real fields; conjugation is trivial.
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sign(self) -> int:
        return self.field.sign_of(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.from_coeffs([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return self.field.embed(self).re

    def __repr__(self):
        if not any(self.coeffs[1:]):
            return q_str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(q_str(c))
            else:
                mono = "x" if i == 1 else "x^%d" % i
                terms.append(mono if c == 1 else "%s*%s" % (q_str(c), mono))
        return " + ".join(terms)

    def to_json(self):
        return [q_str(c) for c in self.coeffs]

    def as_fractions(self):
        return [Fraction(c.numerator, c.denominator) for c in self.coeffs]


def field_make(minpoly, isolating_interval) -> NumberField:
    """Construct a real number field from an integer minimal polynomial
    (constant term first) and a rational interval isolating one real root."""
    return NumberField(minpoly, isolating_interval)


def rationals() -> NumberField:
    """The rational field presented as the degree-1 case Q[x]/(x-1)."""
    return NumberField([-1, 1], (Fraction(1, 2), Fraction(3, 2)))


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Dispatch form of the four field operations (add, sub, mul, div)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def embed(a: FieldElement, precision=53):
    return a.field.embed(a, precision)


def sign_of(a: FieldElement) -> int:
    return a.field.sign_of(a)


# ---------------------------------------------------------------------------
# Approximate complex backend.
# ---------------------------------------------------------------------------

DEFAULT_TOL = 1e-9


class ApproxComplex:
    """Complex double with a comparison tolerance; equality is |delta| <= tol
    componentwise."""

    __slots__ = ("re", "im", "tol")

    def __init__(self, re, im=0.0, tol=DEFAULT_TOL):
        self.re = float(re)
        self.im = float(im)
        self.tol = tol

    def _lift(self, other):
        if isinstance(other, ApproxComplex):
            return other
        if isinstance(other, (int, float, Fraction)):
            return ApproxComplex(float(other), 0.0, self.tol)
        if isinstance(other, complex):
            return ApproxComplex(other.real, other.imag, self.tol)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.re + o.re, self.im + o.im, min(self.tol, o.tol) if isinstance(other, ApproxComplex) else self.tol)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.re - o.re, self.im - o.im, self.tol)

    def __rsub__(self, other):
        o = self._lift(other)
        return o - self

    def __neg__(self):
        return ApproxComplex(-self.re, -self.im, self.tol)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re, self.tol)

    __rmul__ = __mul__

    def inverse(self):
        d = self.re * self.re + self.im * self.im
        if d <= self.tol * self.tol:
            raise ZeroDivisionError("division by (approximate) zero")
        return ApproxComplex(self.re / d, -self.im / d, self.tol)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        return o * self.inverse()

    def __pow__(self, n):
        v = complex(self.re, self.im) ** n
        return ApproxComplex(v.real, v.imag, self.tol)

    def conj(self):
        return ApproxComplex(self.re, -self.im, self.tol)

    def is_zero(self) -> bool:
        return abs(self.re) <= self.tol and abs(self.im) <= self.tol

    def sign(self) -> int:
        if abs(self.im) > self.tol:
            raise ScalarError("sign of a non-real approximate value")
        if self.re > self.tol:
            return 1
        if self.re < -self.tol:
            return -1
        return 0

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        t = max(self.tol, o.tol)
        return abs(self.re - o.re) <= t and abs(self.im - o.im) <= t

    def __hash__(self):  # tolerance-based equality: hash by domain only
        return 0

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(self.re, self.im)

    def __float__(self):
        return self.re

    def __repr__(self):
        if self.im == 0.0:
            return "%.12g" % self.re
        return "(%.12g%+.12gj)" % (self.re, self.im)

    def to_json(self):
        return [self.re, self.im]


class ApproxField:
    """Scalar domain of ApproxComplex values with a shared tolerance."""

    is_exact = False

    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol
        self.zero = ApproxComplex(0.0, 0.0, tol)
        self.one = ApproxComplex(1.0, 0.0, tol)

    def from_int(self, n):
        return ApproxComplex(float(n), 0.0, self.tol)

    def from_fraction(self, fr):
        return ApproxComplex(float(fr), 0.0, self.tol)

    def from_complex(self, v):
        return ApproxComplex(v.real, v.imag, self.tol)

    def sign_of(self, elem) -> int:
        return elem.sign()

    def embed(self, elem, precision=53):
        return elem

    def __eq__(self, other):
        return isinstance(other, ApproxField) and self.tol == other.tol

    def __hash__(self):
        return hash(("approx", self.tol))

    def __repr__(self):
        return "ApproxField(tol=%g)" % self.tol

    def to_json(self):
        return "approx"
