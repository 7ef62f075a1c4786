"""Univariate polynomials over a NumberField: gcd, minimal polynomials,
Trager factorization into irreducibles, in-field roots and square roots.

Polynomials are coefficient lists (constant term first) of FieldElement.
The rational factorization step is delegated to sympy; everything else is
exact arithmetic in the field.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    NumberField, FieldElement, ScalarError, _Q, _QZERO, _QONE,
    poly_trim, poly_gcd, poly_deriv, poly_divmod, poly_eval,
)


# -- F[T] basics ------------------------------------------------------------

def fp_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def fp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return fp_trim(out)


def fp_scale(a, s):
    return fp_trim([x * s for x in a])


def fp_mul(a, b, field):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
    return fp_trim(out)


def fp_divmod(a, b, field):
    a = list(a)
    b = fp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inverse()
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    while len(fp_trim(a)) >= len(b):
        a = fp_trim(a)
        d = len(a) - len(b)
        coef = a[-1] * inv
        q[d] = coef
        for i, y in enumerate(b):
            a[i + d] = a[i + d] - coef * y
    return fp_trim(q), fp_trim(a)


def fp_gcd(a, b, field):
    a, b = fp_trim(a), fp_trim(b)
    while b:
        a, b = b, fp_divmod(a, b, field)[1]
    if a:
        a = fp_scale(a, a[-1].inverse())
    return a


def fp_deriv(a, field):
    return fp_trim([a[i] * field.from_int(i) for i in range(1, len(a))])


def fp_eval(a, x, field):
    acc = field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def fp_monic(a, field):
    a = fp_trim(a)
    if a and a[-1] != field.one:
        a = fp_scale(a, a[-1].inverse())
    return a


def fp_from_rational(coeffs, field):
    return fp_trim([field.from_fraction(Fraction(c.numerator, c.denominator))
                    if not isinstance(c, (int, Fraction)) else field.from_fraction(Fraction(c))
                    for c in coeffs])


def fp_compose_shift(p, shift, field):
    """p(T + shift) for a field element shift, by Horner in (T + shift)."""
    acc = []
    lin = [shift, field.one]
    for c in reversed(p):
        acc = fp_add(fp_mul(acc, lin, field), [c])
    return acc


def fp_is_squarefree(p, field) -> bool:
    return len(fp_gcd(p, fp_deriv(p, field), field)) <= 1


# -- rational interpolation and resultants -----------------------------------

def _det_q(mat):
    """Exact determinant of a square rational matrix (Gaussian elimination)."""
    n = len(mat)
    m = [list(r) for r in mat]
    det = _QONE
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return _QZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = _QONE / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
    return det


def _interpolate_q(points, values):
    """Lagrange interpolation over the rationals; coefficient list output."""
    n = len(points)
    poly = [_QZERO] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        if not yi:
            continue
        num = [_QONE]
        den = _QONE
        for j, xj in enumerate(points):
            if j == i:
                continue
            num = [(_QZERO if k == 0 else num[k - 1]) - xj * (num[k] if k < len(num) else _QZERO)
                   for k in range(len(num) + 1)]
            den = den * (xi - xj)
        f = yi / den
        for k, c in enumerate(num):
            poly[k] = poly[k] + c * f
    return poly_trim(poly)


def _norm_poly(p, field):
    """Norm of p in F[T] down to Q[T]: Res_x(m(x), p~(T, x)).

    Computed by evaluating a fixed-shape Sylvester determinant at rational
    points and interpolating; the shape uses the generic x-degree so that
    evaluation and determinant commute.
    """
    m = field.minpoly
    dm = len(m) - 1
    # reorganize: coeffs_x[j] = rational polynomial in T multiplying x^j
    dx = dm - 1
    coeffs_x = [[_QZERO] * len(p) for _ in range(dx + 1)]
    for k, a in enumerate(p):
        for j, c in enumerate(a.coeffs):
            coeffs_x[j][k] = c
    coeffs_x = [poly_trim(c) or [_QZERO] for c in coeffs_x]
    while len(coeffs_x) > 1 and coeffs_x[-1] == [_QZERO]:
        coeffs_x.pop()
    dx = len(coeffs_x) - 1
    if dx == 0:
        # constant in x: norm = c(T)^dm
        out = [_QONE]
        base = coeffs_x[0]
        for _ in range(dm):
            res = [_QZERO] * (len(out) + len(base) - 1)
            for i, x in enumerate(out):
                for j, y in enumerate(base):
                    res[i + j] = res[i + j] + x * y
            out = res
        return poly_trim(out)
    size = dm + dx
    deg_t = max(len(c) for c in coeffs_x) - 1
    npoints = dm * deg_t + dx + 2
    points = [_Q(k) for k in range(npoints)]
    values = []
    for t in points:
        pvals = [poly_eval(c, t) for c in coeffs_x]
        mat = [[_QZERO] * size for _ in range(size)]
        for r in range(dx):            # rows of m
            for j, c in enumerate(reversed(m)):
                mat[r][r + j] = c
        for r in range(dm):             # rows of p(t, x)
            for j, c in enumerate(reversed(pvals)):
                mat[dx + r][r + j] = c
        values.append(_det_q(mat))
    return _interpolate_q(points, values)


# -- factorization ------------------------------------------------------------

def _factor_rational(qpoly):
    """Irreducible monic factors (with multiplicity) over Q, via sympy."""
    from sympy import Poly, Symbol, factor_list
    x = Symbol("x")
    expr = sum(Fraction(c.numerator, c.denominator) * x ** i for i, c in enumerate(qpoly))
    _, factors = factor_list(Poly(expr, x))
    out = []
    for f, mult in factors:
        coeffs = [_Q(Fraction(c.p, c.q)) for c in reversed(f.all_coeffs())]
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        out.append((coeffs, mult))
    return out


def trager_factor(p, field: NumberField):
    """Monic irreducible factors of a squarefree monic p over the field.

    Requires the field modulus to be irreducible (true for every field this
    package constructs for its own examples); raises ScalarError otherwise.
    """
    p = fp_monic(p, field)
    if len(p) <= 2:
        return [p] if len(p) == 2 else []
    if field.minpoly != field._root_minpoly:
        raise ScalarError("factorization over a reducible modulus is not supported")
    if field.degree == 1:
        qpoly = [c.coeffs[0] for c in p]
        return [fp_from_rational(f, field) for f, _ in _factor_rational(qpoly)]
    if not fp_is_squarefree(p, field):
        raise ValueError("trager_factor expects a squarefree polynomial")
    z = field.gen()
    for s in range(0, 40):
        shift = z * field.from_int(-s)
        ps = fp_compose_shift(p, shift, field)       # p(T - s z)
        norm = _norm_poly(ps, field)
        if len(poly_gcd(norm, poly_deriv(norm))) <= 1:
            break
    else:  # pragma: no cover - squarefree shift always exists
        raise ArithmeticError("no squarefree norm shift found")
    out = []
    back = z * field.from_int(s)
    for g_rat, _mult in _factor_rational(norm):
        g = fp_from_rational(g_rat, field)
        g = fp_compose_shift(g, back, field)          # G(T + s z)
        fac = fp_gcd(p, g, field)
        if len(fac) > 1:
            out.append(fac)
    assert sum(len(f) - 1 for f in out) == len(p) - 1, "factor degrees must add up"
    return out


def roots_in_field(p, field):
    """All roots of p that lie in the field (p need not be squarefree)."""
    p = fp_trim(p)
    if len(p) <= 1:
        return []
    sf = fp_divmod(p, fp_gcd(p, fp_deriv(p, field), field), field)[0]
    roots = []
    for fac in trager_factor(fp_monic(sf, field), field):
        if len(fac) == 2:
            roots.append(-fac[0])
    return roots


def sqrt_in_field(a: FieldElement):
    """Exact square root in the field with nonnegative embedding, or None."""
    field = a.field
    if a.is_zero():
        return field.zero
    if field.sign_of(a) < 0:
        return None
    for r in roots_in_field([-a, field.zero, field.one], field):
        if field.sign_of(r) >= 0:
            assert r * r == a
            return r
    return None


def minpoly_from_powers(vectors, field):
    """Monic minimal polynomial given the dense power vectors 1, t, t^2, ...

    ``vectors`` must contain one more vector than the degree of dependence;
    the caller feeds powers until this function returns non-None.
    """
    from .linalg import solve_dense
    k = len(vectors) - 1
    mat = [[vectors[j][i] for j in range(k)] for i in range(len(vectors[0]))]
    rhs = [vectors[k][i] for i in range(len(vectors[0]))]
    sol = solve_dense(mat, rhs, field)
    if sol is None:
        return None
    return fp_trim([-c for c in sol] + [field.one])
