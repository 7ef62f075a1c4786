"""Exact sparse/dense linear algebra over a scalar domain.

Vectors are dicts {index: scalar}; matrices are lists of row lists.  The same
code runs over NumberField elements (exact) and ApproxComplex (tolerance
pivoting), since both expose arithmetic dunders, ``is_zero`` and ``conj``.
"""

from __future__ import annotations


def vec_add(u, v):
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        if y is None:
            out[k] = x
        else:
            s = y + x
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
    return out


def vec_scale(u, s):
    if s.is_zero():
        return {}
    return {k: x * s for k, x in u.items()}


def vec_axpy(out, s, v):
    """In place: out += s * v, dropping exact zeros."""
    for k, x in v.items():
        y = out.get(k)
        t = x * s if y is None else y + x * s
        if t.is_zero():
            if y is not None:
                del out[k]
        else:
            out[k] = t
    return out


def vec_is_zero(u) -> bool:
    return all(x.is_zero() for x in u.values())


def vec_clean(u):
    return {k: x for k, x in u.items() if not x.is_zero()}


class Echelon:
    """Incremental row echelon form with pivot-normalized sparse rows.

    Rows are kept with their support in [pivot, ncols); reduction processes
    columns in ascending order so fill-in stays to the right of the cursor.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = {}          # pivot column -> row dict (pivot entry == 1)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec):
        """Residual of vec modulo the current row space.

        The residual has no support on pivot columns; it is the canonical
        representative of vec + rowspace w.r.t. the non-pivot coordinates.
        """
        v = vec_clean(dict(vec))
        if not v:
            return {}
        rows = self.rows
        for c in range(min(v), self.ncols):
            x = v.get(c)
            if x is None or x.is_zero():
                v.pop(c, None)
                continue
            row = rows.get(c)
            if row is None:
                continue
            del v[c]
            for cc, rv in row.items():
                if cc == c:
                    continue
                y = v.get(cc)
                t = -(x * rv) if y is None else y - x * rv
                if t.is_zero():
                    v.pop(cc, None)
                else:
                    v[cc] = t
        return v

    def add(self, vec) -> bool:
        """Insert vec; returns True if the rank grew."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = r[c].inverse()
        self.rows[c] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def pivots(self):
        return sorted(self.rows)

    def nonpivots(self):
        piv = self.rows
        return [c for c in range(self.ncols) if c not in piv]

    def basis(self):
        return [self.rows[c] for c in sorted(self.rows)]


def span_echelon(vectors, ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for v in vectors:
        ech.add(v)
    return ech


# ---------------------------------------------------------------------------
# Dense routines (small matrices).
# ---------------------------------------------------------------------------

def _pivot_row(col_vals, exact: bool):
    """Index of the best pivot among (index, value) pairs, or None."""
    best = None
    best_mag = 0.0
    for i, v in col_vals:
        if v.is_zero():
            continue
        if exact:
            return i
        m = abs(v)
        if m > best_mag:
            best, best_mag = i, m
    return best


def rref_dense(mat, domain):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    exact = getattr(domain, "is_exact", True)
    pivots = []
    r = 0
    for c in range(ncols):
        p = _pivot_row(((i, rows[i][c]) for i in range(r, len(rows))), exact)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_dense(mat, domain) -> int:
    return len(rref_dense(mat, domain)[0])


def nullspace_dense(mat, domain):
    """Basis of the right nullspace, as dense vectors."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = rref_dense(mat, domain)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [domain.zero] * ncols
        v[f] = domain.one
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve_dense(mat, rhs, domain):
    """One solution of mat @ x = rhs, or None if inconsistent.

    ``rhs`` may be a vector or a matrix (list of columns as a row-major list
    of right-hand sides is not supported; pass a single vector).
    """
    if not mat:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    rows, pivots = rref_dense(aug, domain)
    x = [domain.zero] * ncols
    for r, p in zip(rows, pivots):
        if p == ncols:
            return None
        x[p] = r[ncols]
    return x


def invert_dense(mat, domain):
    n = len(mat)
    aug = [list(row) + [domain.one if i == j else domain.zero for j in range(n)]
           for i, row in enumerate(mat)]
    rows, pivots = rref_dense(aug, domain)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in rows[:n]]


def mat_mul(a, b, domain):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[domain.zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x.is_zero():
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if not y.is_zero():
                    oi[j] = oi[j] + x * y
    return out


def mat_vec(a, v, domain):
    out = []
    for row in a:
        s = domain.zero
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                s = s + x * y
        out.append(s)
    return out


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_conj_transpose(a):
    return [[x.conj() for x in col] for col in zip(*a)]


def identity_dense(n, domain):
    return [[domain.one if i == j else domain.zero for j in range(n)] for i in range(n)]


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not (x - y).is_zero():
                return False
    return True
