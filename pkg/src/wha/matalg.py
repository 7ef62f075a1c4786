"""Multi-matrix *-algebras ⊕_q M_{n_q}: elements, tensor squares/cubes,
linear maps, abstract structure constants, and Wedderburn decomposition of a
semisimple *-algebra presented by structure constants.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Echelon, vec_axpy, vec_clean, invert_dense
from .polyfactor import (
    fp_monic, fp_mul, fp_divmod, fp_scale, fp_add,
    trager_factor, minpoly_from_powers, sqrt_in_field,
)
from .scalars import ScalarError


class AlgebraError(ValueError):
    pass


def domain_scalar(domain, v):
    if isinstance(v, int):
        return domain.from_int(v)
    if isinstance(v, Fraction):
        return domain.from_fraction(v)
    return v


# ---------------------------------------------------------------------------
# Block algebras and their elements.
# ---------------------------------------------------------------------------

class BlockAlgebra:
    """⊕_q M_{n_q} over a scalar domain, with the matrix-unit basis ordered
    block-major then row-major."""

    def __init__(self, domain, blocks):
        self.domain = domain
        self.blocks = [(str(label), int(n)) for label, n in blocks]
        if any(n < 1 for _, n in self.blocks):
            raise AlgebraError("block sizes must be >= 1")
        self.offsets = []
        off = 0
        for _, n in self.blocks:
            self.offsets.append(off)
            off += n * n
        self.dim = off
        self._triples = []
        for q, (_, n) in enumerate(self.blocks):
            for a in range(n):
                for b in range(n):
                    self._triples.append((q, a, b))

    def index_of(self, q, a, b) -> int:
        n = self.blocks[q][1]
        return self.offsets[q] + a * n + b

    def triple_of(self, i):
        return self._triples[i]

    def block_sizes(self):
        return [n for _, n in self.blocks]

    def mul_indices(self, i, j):
        """Index of the matrix-unit product b_i b_j, or None if zero."""
        q, a, b = self._triples[i]
        q2, c, d = self._triples[j]
        if q != q2 or b != c:
            return None
        n = self.blocks[q][1]
        return self.offsets[q] + a * n + d

    def star_index(self, i) -> int:
        q, a, b = self._triples[i]
        n = self.blocks[q][1]
        return self.offsets[q] + b * n + a

    def element(self, entries=None) -> "AlgElement":
        return AlgElement(self, vec_clean(entries or {}))

    def matrix_unit(self, q, a, b) -> "AlgElement":
        return AlgElement(self, {self.index_of(q, a, b): self.domain.one})

    def unit(self) -> "AlgElement":
        one = self.domain.one
        ent = {}
        for q, (_, n) in enumerate(self.blocks):
            for a in range(n):
                ent[self.index_of(q, a, a)] = one
        return AlgElement(self, ent)

    def central_idempotent(self, q) -> "AlgElement":
        one = self.domain.one
        n = self.blocks[q][1]
        return AlgElement(self, {self.index_of(q, a, a): one for a in range(n)})

    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def basis(self):
        return [AlgElement(self, {i: self.domain.one}) for i in range(self.dim)]

    def structure_constants(self) -> "StructureConstants":
        product = {}
        for i in range(self.dim):
            for j in range(self.dim):
                k = self.mul_indices(i, j)
                if k is not None:
                    product[(i, j)] = {k: self.domain.one}
        star = [{self.star_index(i): self.domain.one} for i in range(self.dim)]
        return StructureConstants(self.domain, self.dim, product, star,
                                  dict(self.unit().entries))

    def __eq__(self, other):
        return (isinstance(other, BlockAlgebra) and self.domain == other.domain
                and self.blocks == other.blocks)

    def __hash__(self):
        return hash(tuple(self.blocks))

    def __repr__(self):
        return "BlockAlgebra(%s)" % (self.blocks,)


class AlgElement:
    """Sparse element of a BlockAlgebra."""

    __slots__ = ("owner", "entries")

    def __init__(self, owner, entries):
        self.owner = owner
        self.entries = entries

    def _same(self, other):
        if not isinstance(other, AlgElement) or other.owner != self.owner:
            raise AlgebraError("owner mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.entries)
        one = None
        for k, v in other.entries.items():
            y = out.get(k)
            t = v if y is None else y + v
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        return AlgElement(self.owner, out)

    def __sub__(self, other):
        other = self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            y = out.get(k)
            t = -v if y is None else y - v
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        return AlgElement(self.owner, out)

    def __neg__(self):
        return AlgElement(self.owner, {k: -v for k, v in self.entries.items()})

    def scale(self, s) -> "AlgElement":
        s = domain_scalar(self.owner.domain, s)
        if s.is_zero():
            return AlgElement(self.owner, {})
        return AlgElement(self.owner, {k: v * s for k, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._same(other)
            owner = self.owner
            mul_idx = owner.mul_indices
            out = {}
            for i, x in self.entries.items():
                for j, y in other.entries.items():
                    k = mul_idx(i, j)
                    if k is None:
                        continue
                    p = x * y
                    z = out.get(k)
                    t = p if z is None else z + p
                    if t.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = t
            return AlgElement(owner, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def star(self) -> "AlgElement":
        owner = self.owner
        return AlgElement(owner, {owner.star_index(i): v.conj()
                                  for i, v in self.entries.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.owner == other.owner and (self - other).is_zero()

    def __hash__(self):
        return hash(self.owner)

    def trace(self):
        """Unnormalized trace summed over all blocks."""
        owner = self.owner
        tot = owner.domain.zero
        for i, v in self.entries.items():
            q, a, b = owner.triple_of(i)
            if a == b:
                tot = tot + v
        return tot

    def block_trace(self, q):
        owner = self.owner
        tot = owner.domain.zero
        n = owner.blocks[q][1]
        for a in range(n):
            v = self.entries.get(owner.index_of(q, a, a))
            if v is not None:
                tot = tot + v
        return tot

    def block_matrix(self, q):
        owner = self.owner
        n = owner.blocks[q][1]
        zero = owner.domain.zero
        return [[self.entries.get(owner.index_of(q, a, b), zero) for b in range(n)]
                for a in range(n)]

    def tensor(self, other) -> "TensorElement":
        other = self._same(other)
        out = {}
        for i, x in self.entries.items():
            for j, y in other.entries.items():
                out[(i, j)] = x * y
        return TensorElement(self.owner, 2, out)

    def __repr__(self):
        if not self.entries:
            return "0"
        parts = []
        for i in sorted(self.entries):
            q, a, b = self.owner.triple_of(i)
            c = self.entries[i]
            parts.append("(%r)*e%s[%d,%d]" % (c, self.owner.blocks[q][0], a + 1, b + 1))
        return " + ".join(parts)


class TensorElement:
    """Sparse element of A⊗A or A⊗A⊗A over a BlockAlgebra A."""

    __slots__ = ("owner", "arity", "entries")

    def __init__(self, owner, arity, entries):
        self.owner = owner
        self.arity = arity
        self.entries = entries

    @classmethod
    def zero(cls, owner, arity):
        return cls(owner, arity, {})

    def _same(self, other):
        if (not isinstance(other, TensorElement) or other.owner != self.owner
                or other.arity != self.arity):
            raise AlgebraError("arity or owner mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            y = out.get(k)
            t = v if y is None else y + v
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        return TensorElement(self.owner, self.arity, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.owner, self.arity,
                             {k: -v for k, v in self.entries.items()})

    def scale(self, s):
        s = domain_scalar(self.owner.domain, s)
        if s.is_zero():
            return TensorElement(self.owner, self.arity, {})
        return TensorElement(self.owner, self.arity,
                             {k: v * s for k, v in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        other = self._same(other)
        mul_idx = self.owner.mul_indices
        out = {}
        for ka, x in self.entries.items():
            for kb, y in other.entries.items():
                kk = []
                dead = False
                for ia, ib in zip(ka, kb):
                    k = mul_idx(ia, ib)
                    if k is None:
                        dead = True
                        break
                    kk.append(k)
                if dead:
                    continue
                kk = tuple(kk)
                p = x * y
                z = out.get(kk)
                t = p if z is None else z + p
                if t.is_zero():
                    out.pop(kk, None)
                else:
                    out[kk] = t
        return TensorElement(self.owner, self.arity, out)

    __rmul__ = scale

    def star(self) -> "TensorElement":
        st = self.owner.star_index
        return TensorElement(self.owner, self.arity,
                             {tuple(st(i) for i in k): v.conj()
                              for k, v in self.entries.items()})

    def leg_apply(self, linmap: "LinearMap", leg: int) -> "TensorElement":
        """Apply a linear map to one tensor factor (legs are 1-based);
        maps with out_arity 2 expand the tensor by one leg."""
        if not 1 <= leg <= self.arity:
            raise AlgebraError("leg out of range")
        out = {}
        pos = leg - 1
        for k, v in self.entries.items():
            col = linmap.cols.get(k[pos])
            if not col:
                continue
            vv = v.conj() if linmap.antilinear else v
            for img, c in col.items():
                if linmap.out_arity == 1:
                    kk = k[:pos] + (img,) + k[pos + 1:]
                else:
                    kk = k[:pos] + tuple(img) + k[pos + 1:]
                p = vv * c
                z = out.get(kk)
                t = p if z is None else z + p
                if t.is_zero():
                    out.pop(kk, None)
                else:
                    out[kk] = t
        return TensorElement(self.owner, self.arity + linmap.out_arity - 1, out)

    def swap_legs(self, perm) -> "TensorElement":
        return TensorElement(self.owner, self.arity,
                             {tuple(k[p] for p in perm): v
                              for k, v in self.entries.items()})

    def act_left(self, x: AlgElement, leg: int) -> "TensorElement":
        """Multiply one leg from the left by an algebra element."""
        mul_idx = self.owner.mul_indices
        pos = leg - 1
        out = {}
        for k, v in self.entries.items():
            for i, c in x.entries.items():
                t = mul_idx(i, k[pos])
                if t is None:
                    continue
                kk = k[:pos] + (t,) + k[pos + 1:]
                p = c * v
                z = out.get(kk)
                s = p if z is None else z + p
                if s.is_zero():
                    out.pop(kk, None)
                else:
                    out[kk] = s
        return TensorElement(self.owner, self.arity, out)

    def act_right(self, x: AlgElement, leg: int) -> "TensorElement":
        mul_idx = self.owner.mul_indices
        pos = leg - 1
        out = {}
        for k, v in self.entries.items():
            for i, c in x.entries.items():
                t = mul_idx(k[pos], i)
                if t is None:
                    continue
                kk = k[:pos] + (t,) + k[pos + 1:]
                p = v * c
                z = out.get(kk)
                s = p if z is None else z + p
                if s.is_zero():
                    out.pop(kk, None)
                else:
                    out[kk] = s
        return TensorElement(self.owner, self.arity, out)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.owner == other.owner and self.arity == other.arity
                and (self - other).is_zero())

    def __hash__(self):
        return hash((self.owner, self.arity))

    def __repr__(self):
        n = sum(1 for v in self.entries.values() if not v.is_zero())
        return "TensorElement(arity=%d, %d terms)" % (self.arity, n)


def tensor_ops(s: TensorElement, t, op: str, linmap=None, leg=None):
    """Dispatch form of the tensor operations: mul, star, leg_apply."""
    if op == "mul":
        return s * t
    if op == "star":
        return s.star()
    if op == "leg_apply":
        return s.leg_apply(linmap, leg)
    raise ValueError("unknown tensor op %r" % op)


class LinearMap:
    """Linear (or antilinear) map given by sparse columns over basis indices.

    ``cols[i]`` is the image of basis vector i: a dict over ints when
    ``out_arity`` is 1, over index pairs when 2 (a map into A⊗A).
    ``to_scalar`` marks functionals (codomain the base field).
    """

    __slots__ = ("dim_in", "dim_out", "cols", "out_arity", "antilinear")

    def __init__(self, dim_in, dim_out, cols, out_arity=1, antilinear=False):
        self.dim_in = dim_in
        self.dim_out = dim_out
        self.cols = {i: vec_clean(c) for i, c in cols.items() if c}
        self.out_arity = out_arity
        self.antilinear = antilinear

    def apply_vec(self, vec):
        out = {}
        for i, v in vec.items():
            col = self.cols.get(i)
            if not col:
                continue
            vv = v.conj() if self.antilinear else v
            vec_axpy(out, vv, col)
        return out

    def __call__(self, x):
        if isinstance(x, AlgElement):
            if self.out_arity == 1:
                return AlgElement(x.owner, self.apply_vec(x.entries))
            return TensorElement(x.owner, 2, self.apply_vec(x.entries))
        return self.apply_vec(x)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other (both with out_arity 1)."""
        assert other.out_arity == 1
        cols = {}
        for i, col in other.cols.items():
            img = {}
            for j, v in col.items():
                c2 = self.cols.get(j)
                if not c2:
                    continue
                vv = v.conj() if self.antilinear else v
                vec_axpy(img, vv, c2)
            cols[i] = img
        return LinearMap(other.dim_in, self.dim_out, cols, self.out_arity,
                         self.antilinear != other.antilinear)

    def to_dense(self, domain):
        zero = domain.zero
        mat = [[zero] * self.dim_in for _ in range(self.dim_out)]
        for i, col in self.cols.items():
            for j, v in col.items():
                mat[j][i] = v
        return mat

    @classmethod
    def identity(cls, dim, domain):
        return cls(dim, dim, {i: {i: domain.one} for i in range(dim)})

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.dim_in, self.dim_out, self.out_arity, self.antilinear) != \
           (other.dim_in, other.dim_out, other.out_arity, other.antilinear):
            return False
        keys = set(self.cols) | set(other.cols)
        for k in keys:
            a = self.cols.get(k, {})
            b = other.cols.get(k, {})
            for kk in set(a) | set(b):
                x = a.get(kk)
                y = b.get(kk)
                if x is None:
                    if not y.is_zero():
                        return False
                elif y is None:
                    if not x.is_zero():
                        return False
                elif not (x - y).is_zero():
                    return False
        return True

    def __hash__(self):
        return hash((self.dim_in, self.dim_out, self.out_arity))


def mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


def star(a: AlgElement) -> AlgElement:
    return a.star()


# ---------------------------------------------------------------------------
# Exact positivity.
# ---------------------------------------------------------------------------

def positivity_check(gram, domain) -> bool:
    """Exact positive-semidefiniteness of a Hermitian matrix.

    Exact backend: diagonal (Schur-complement) pivoting that skips zero
    rows, deciding by signs only.  Approximate backend: eigenvalue bound.
    """
    n = len(gram)
    for i in range(n):
        for j in range(n):
            if not (gram[i][j].conj() - gram[j][i]).is_zero():
                raise AlgebraError("gram matrix is not Hermitian")
    if not getattr(domain, "is_exact", True):
        import numpy as np
        m = np.array([[complex(v.re, v.im) for v in row] for row in gram])
        return bool(np.linalg.eigvalsh(m).min() >= -domain.tol)
    g = {(i, j): gram[i][j] for i in range(n) for j in range(n)
         if not gram[i][j].is_zero()}
    live = set(range(n))
    while live:
        piv = None
        for k in live:
            d = g.get((k, k))
            if d is not None and not d.is_zero():
                piv = k
                break
        if piv is None:
            return all(g.get((i, j)) is None or g[(i, j)].is_zero()
                       for i in live for j in live)
        d = g[(piv, piv)]
        if d.sign() < 0:
            return False
        live.discard(piv)
        inv = d.inverse()
        col = {i: g[(i, piv)] for i in live if (i, piv) in g}
        row = {j: g[(piv, j)] for j in live if (piv, j) in g}
        for i, ci in col.items():
            f = ci * inv
            for j, rj in row.items():
                key = (i, j)
                old = g.get(key)
                t = -(f * rj) if old is None else old - f * rj
                if t.is_zero():
                    g.pop(key, None)
                else:
                    g[key] = t
    return True


# ---------------------------------------------------------------------------
# Abstract structure constants and Wedderburn decomposition.
# ---------------------------------------------------------------------------

class StructureConstants:
    """Associative *-algebra presented by b_i b_j = Σ_k c[i][j][k] b_k,
    an antilinear star, and a unit vector."""

    def __init__(self, domain, dim, product, star, unit):
        self.domain = domain
        self.dim = dim
        self.product = product      # (i, j) -> sparse vector
        self.star = star            # list: i -> sparse vector (images of basis)
        self.unit = vec_clean(unit)

    def mul_vec(self, u, v):
        out = {}
        product = self.product
        for i, x in u.items():
            if x.is_zero():
                continue
            for j, y in v.items():
                if y.is_zero():
                    continue
                row = product.get((i, j))
                if row:
                    vec_axpy(out, x * y, row)
        return out

    def star_vec(self, u):
        out = {}
        for i, x in u.items():
            vec_axpy(out, x.conj(), self.star[i])
        return out

    def mul_basis(self, i, j):
        return self.product.get((i, j), {})

    def check_unit(self):
        for i in range(self.dim):
            e = {i: self.domain.one}
            if vec_clean(self.mul_vec(self.unit, e)) != vec_clean(e) or \
               vec_clean(self.mul_vec(e, self.unit)) != vec_clean(e):
                return i
        return None

    def check_associative(self):
        """Returns a witness triple (i, j, k) or None; checked exhaustively."""
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.product.get((i, j))
                for k in range(self.dim):
                    left = self.mul_vec(ij, {k: self.domain.one}) if ij else {}
                    jk = self.product.get((j, k))
                    right = self.mul_vec({i: self.domain.one}, jk) if jk else {}
                    diff = dict(left)
                    vec_axpy(diff, -self.domain.one, right)
                    if not all(v.is_zero() for v in diff.values()):
                        return (i, j, k)
        return None

    def regular_trace(self):
        """Vector of traces of the left regular representation."""
        tr = [self.domain.zero] * self.dim
        for (i, k), row in self.product.items():
            v = row.get(k)
            if v is not None:
                tr[i] = tr[i] + v
        return tr

    def trace_form(self):
        """H[i][j] = Tr L_{b_i* b_j}, the canonical Hermitian form."""
        tr = self.regular_trace()
        h = [[self.domain.zero] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            si = self.star[i]
            for j in range(self.dim):
                acc = self.domain.zero
                for a, x in si.items():
                    for b, y in self.product.get((a, j), {}).items():
                        t = tr[b]
                        if not t.is_zero():
                            acc = acc + x.conj() * y * t
                h[i][j] = acc
        return h


class WedderburnResult:
    def __init__(self, algebra, to_block, from_block):
        self.algebra = algebra      # BlockAlgebra with ascending block sizes
        self.to_block = to_block    # LinearMap: presentation coords -> block coords
        self.from_block = from_block

    @property
    def blocks(self):
        return self.algebra.block_sizes()


def _central_split(sc, center_basis, parts, t_vec):
    """Refine a list of orthogonal idempotents by CRT on one central element."""
    domain = sc.domain
    new_parts = []
    for e in parts:
        te = sc.mul_vec(e, t_vec)
        # minimal polynomial of te in the corner algebra e A e (unit e)
        powers = [dict(e)]
        cur = dict(e)
        mp = None
        for _ in range(len(center_basis) + 1):
            cur = sc.mul_vec(cur, te)
            powers.append(cur)
            mp = minpoly_from_powers([[p.get(i, domain.zero) for i in range(sc.dim)]
                                      for p in powers], domain)
            if mp is not None:
                break
        assert mp is not None
        if len(mp) <= 2:
            new_parts.append(e)
            continue
        factors = trager_factor(fp_monic(mp, domain), domain)
        # collect primary factors g^m so that their product is mp
        primaries = []
        rem = mp
        for g in factors:
            m = 0
            while True:
                q, r = fp_divmod(rem, g, domain)
                if r:
                    break
                rem, m = q, m + 1
            primaries.append((g, m))
        if len(primaries) == 1:
            new_parts.append(e)
            continue
        full = [domain.one]
        pows = []
        for g, m in primaries:
            gm = [domain.one]
            for _ in range(m):
                gm = fp_mul(gm, g, domain)
            pows.append(gm)
            full = fp_mul(full, gm, domain)
        for gm in pows:
            cof = fp_divmod(full, gm, domain)[0]
            # invert cof modulo gm via extended Euclid
            r0, r1 = gm, fp_divmod(cof, gm, domain)[1]
            s0, s1 = [], [domain.one]
            while r1:
                q, r = fp_divmod(r0, r1, domain)
                r0, r1 = r1, r
                s0, s1 = s1, fp_add(s0, fp_scale(fp_mul(q, s1, domain), -domain.one))
            assert len(r0) == 1
            inv = fp_scale(s0, r0[0].inverse())
            idem_poly = fp_divmod(fp_mul(cof, inv, domain), full, domain)[1]
            # evaluate at te inside the corner (constant term acts as e)
            val = {}
            if idem_poly:
                vec_axpy(val, idem_poly[0], e)
                cur = dict(e)
                for c in idem_poly[1:]:
                    cur = sc.mul_vec(cur, te)
                    vec_axpy(val, c, cur)
            val = vec_clean(val)
            if val:
                new_parts.append(val)
    return new_parts


def _corner_dim(sc, f):
    """dim of f A f as a subspace."""
    ech = Echelon(sc.dim)
    for i in range(sc.dim):
        v = sc.mul_vec(sc.mul_vec(f, {i: sc.domain.one}), f)
        ech.add(v)
    return ech.rank, ech


def _minpoly_of(sc, t, unit_vec, maxdeg):
    domain = sc.domain
    powers = [dict(unit_vec)]
    cur = dict(unit_vec)
    for _ in range(maxdeg + 1):
        cur = sc.mul_vec(cur, t)
        powers.append(cur)
        mp = minpoly_from_powers([[p.get(i, domain.zero) for i in range(sc.dim)]
                                  for p in powers], domain)
        if mp is not None:
            return mp
    raise AlgebraError("minimal polynomial not found")


def _split_idempotent(sc, f, corner_ech, rng):
    """Split a non-primitive self-adjoint idempotent f; returns (f1, f2) or
    None if no candidate separated (caller reports field extension)."""
    domain = sc.domain
    basis = corner_ech.basis()
    corner_dim = len(basis)

    def candidates():
        for v in basis:
            sv = sc.star_vec(v)
            herm = dict(v)
            vec_axpy(herm, domain.one, sv)
            yield vec_clean(herm)
            yield vec_clean(sc.mul_vec(sv, v))
        for _ in range(24):
            mix = {}
            for v in basis:
                c = rng.randrange(-3, 4)
                if c:
                    vec_axpy(mix, domain.from_int(c), v)
            herm = dict(mix)
            vec_axpy(herm, domain.one, sc.star_vec(mix))
            yield vec_clean(herm)

    for t in candidates():
        if not t:
            continue
        mp = _minpoly_of(sc, t, f, corner_dim)
        if len(mp) <= 2:
            continue
        factors = trager_factor(fp_monic(mp, domain), domain)
        if len(factors) < 2 and (len(factors) != 1 or len(factors[0]) == len(mp)):
            continue
        # primary decomposition as in the central split
        primaries = []
        rem = mp
        for g in factors:
            m = 0
            while True:
                q, r = fp_divmod(rem, g, domain)
                if r:
                    break
                rem, m = q, m + 1
            primaries.append((g, m))
        if len(primaries) < 2:
            continue
        g1, m1 = primaries[0]
        gm1 = [domain.one]
        for _ in range(m1):
            gm1 = fp_mul(gm1, g1, domain)
        cof = [domain.one]
        for g, m in primaries[1:]:
            for _ in range(m):
                cof = fp_mul(cof, g, domain)
        # Bezout: a*gm1 + b*cof = 1; idempotent = (b*cof)(t)
        r0, r1 = gm1, fp_divmod(cof, gm1, domain)[1]
        s0, s1 = [], [domain.one]
        while r1:
            q, r = fp_divmod(r0, r1, domain)
            r0, r1 = r1, r
            s0, s1 = s1, fp_add(s0, fp_scale(fp_mul(q, s1, domain), -domain.one))
        assert len(r0) == 1
        inv = fp_scale(s0, r0[0].inverse())
        idem_poly = fp_divmod(fp_mul(cof, inv, domain),
                              fp_mul(gm1, cof, domain), domain)[1]
        val = {}
        if idem_poly:
            vec_axpy(val, idem_poly[0], f)
            cur = dict(f)
            for c in idem_poly[1:]:
                cur = sc.mul_vec(cur, t)
                vec_axpy(val, c, cur)
        p1 = vec_clean(val)
        if not p1:
            continue
        p2 = dict(f)
        vec_axpy(p2, -domain.one, p1)
        p2 = vec_clean(p2)
        if not p2:
            continue
        return p1, p2
    return None


def wedderburn(sc: StructureConstants, assume_associative=False) -> WedderburnResult:
    """Decompose a semisimple *-algebra into ⊕_q M_{n_q} with an explicit
    *-isomorphism onto matrix units.

    The center is split by factoring minimal polynomials over the base
    field; blocks whose splitting would require a field extension are
    reported via ScalarError.  ``assume_associative`` skips the exhaustive
    associativity/unit scan for callers that established it structurally
    (quotients of verified products, transposes of coassociative coproducts).
    """
    import random
    domain = sc.domain
    if not getattr(domain, "is_exact", True):
        return _wedderburn_numeric(sc)
    if not assume_associative:
        witness = sc.check_unit()
        if witness is not None:
            raise AlgebraError("unit law fails on basis element %d" % witness)
        witness = sc.check_associative()
        if witness is not None:
            raise AlgebraError("non-associative input, witness triple %s" % (witness,))
    h = sc.trace_form()
    if not positivity_check(h, domain):
        raise AlgebraError("canonical trace form is not positive semidefinite")
    hrank = _dense_rank(h, domain)
    if hrank != sc.dim:
        raise AlgebraError("non-semisimple input: trace form has rank %d < %d"
                           % (hrank, sc.dim))

    # center: x b_i = b_i x for all i
    rows = []
    for i in range(sc.dim):
        for coord in range(sc.dim):
            row = {}
            for j in range(sc.dim):
                left = sc.product.get((j, i), {}).get(coord)
                right = sc.product.get((i, j), {}).get(coord)
                if left is None:
                    if right is not None:
                        row[j] = -right
                elif right is None:
                    row[j] = left
                else:
                    d = left - right
                    if not d.is_zero():
                        row[j] = d
            if row:
                rows.append(row)
    center = _nullspace_sparse(rows, sc.dim, domain)

    parts = [dict(sc.unit)]
    for z in center:
        parts = _central_split(sc, center, parts, z)
    # verify primitivity of the central idempotents
    cech = Echelon(sc.dim)
    for z in center:
        cech.add(z)
    for e in parts:
        sub = Echelon(sc.dim)
        for z in center:
            sub.add(sc.mul_vec(e, z))
        if sub.rank != 1:
            raise ScalarError("central split requires a field extension")

    rng = random.Random(20240915)
    units = []    # per block: list of lists: E[j][k] vectors
    for e in parts:
        f = dict(e)
        while True:
            cdim, cech = _corner_dim(sc, f)
            if cdim == 1:
                break
            split = _split_idempotent(sc, f, cech, rng)
            if split is None:
                raise ScalarError("matrix-unit split requires a field extension")
            f = split[0]
        # minimal left ideal L = (e A) f
        lech = Echelon(sc.dim)
        lbasis = []
        diff = dict(f)
        vec_axpy(diff, -domain.one, sc.star_vec(f))
        if any(not v.is_zero() for v in diff.values()):
            raise AlgebraError("primitive idempotent is not self-adjoint")
        for i in range(sc.dim):
            v = sc.mul_vec({i: domain.one}, f)
            if lech.add(v):
                lbasis.append(v)
        # orthogonalize under <a,b> f = a* b, preferring square norms
        def pairing(a, b):
            prod = sc.mul_vec(sc.star_vec(a), b)
            lam = None
            for k, fv in f.items():
                pv = prod.get(k, domain.zero)
                cand = pv * fv.inverse()
                if lam is None:
                    lam = cand
            check = dict(prod)
            vec_axpy(check, -lam, f)
            if any(not v.is_zero() for v in check.values()):
                raise AlgebraError("corner pairing did not collapse to the unit")
            return lam

        def gram_schmidt(order):
            ortho = [dict(f)]
            norms = [pairing(f, f)]
            for cand in order:
                w = dict(cand)
                for u, nu in zip(ortho, norms):
                    c = pairing(u, w)
                    if not c.is_zero():
                        vec_axpy(w, -(c * nu.inverse()), u)
                w = vec_clean(w)
                if not w:
                    continue
                lam = pairing(w, w)
                if lam.sign() <= 0:
                    raise AlgebraError("corner form is not positive definite")
                ortho.append(w)
                norms.append(lam)
            return ortho, norms

        # Equalize all norms within one square class; the matrix units
        # E_jk = w_j lam^-1 w_k* then need no square roots at all.
        attempt = None
        orders = [lbasis] + [list(reversed(lbasis))] + \
                 [rng.sample(lbasis, len(lbasis)) for _ in range(6)]
        for order in orders:
            ortho, norms = gram_schmidt(order)
            roots = [sqrt_in_field(lam * norms[0].inverse()) for lam in norms]
            if all(r is not None for r in roots):
                attempt = (ortho, norms, roots)
                break
        if attempt is None:
            raise ScalarError("matrix-unit normalization requires a field "
                              "extension (norms in distinct square classes)")
        ortho, norms, roots = attempt
        assert len(ortho) == len(lbasis), "orthogonal basis must span the left ideal"
        ortho = [w if r == domain.one else
                 {k: v * r.inverse() for k, v in w.items()}
                 for w, r in zip(ortho, roots)]
        lam0inv = norms[0].inverse()
        n = len(ortho)
        eunits = [[None] * n for _ in range(n)]
        for j in range(n):
            for k in range(n):
                prod = sc.mul_vec(ortho[j], sc.star_vec(ortho[k]))
                eunits[j][k] = vec_clean({kk: v * lam0inv for kk, v in prod.items()})
        # sanity: sum of diagonal units is the central idempotent
        tot = {}
        for j in range(n):
            vec_axpy(tot, domain.one, eunits[j][j])
        diff = dict(tot)
        vec_axpy(diff, -domain.one, e)
        if any(not v.is_zero() for v in diff.values()):
            raise AlgebraError("matrix units do not sum to the block unit")
        units.append(eunits)

    # deterministic order: ascending size, then ascending regular trace of unit
    tr = sc.regular_trace()

    def unit_trace(eunits):
        tot = domain.zero
        for j in range(len(eunits)):
            for i, v in eunits[j][j].items():
                t = tr[i]
                if not t.is_zero():
                    tot = tot + v * t
        return tot

    order = sorted(range(len(units)),
                   key=lambda q: (len(units[q]), _embed_key(unit_trace(units[q]), domain)))
    units = [units[q] for q in order]
    algebra = BlockAlgebra(domain, [(str(q), len(units[q])) for q in range(len(units))])

    # from_block: block matrix units -> presentation coordinates
    cols = {}
    for q, eunits in enumerate(units):
        n = len(eunits)
        for a in range(n):
            for b in range(n):
                cols[algebra.index_of(q, a, b)] = eunits[a][b]
    from_block = LinearMap(algebra.dim, sc.dim, cols)
    dense = [[domain.zero] * algebra.dim for _ in range(sc.dim)]
    for i, col in from_block.cols.items():
        for j, v in col.items():
            dense[j][i] = v
    inv = invert_dense(dense, domain)
    to_cols = {i: {j: inv[j][i] for j in range(algebra.dim)
                   if not inv[j][i].is_zero()} for i in range(sc.dim)}
    to_block = LinearMap(sc.dim, algebra.dim, to_cols)
    result = WedderburnResult(algebra, to_block, from_block)
    _verify_wedderburn(sc, result)
    return result


def _embed_key(x, domain):
    if getattr(domain, "is_exact", True):
        lo, hi = domain.embed_interval(x, Fraction(1, 10 ** 12))
        return Fraction(lo.numerator, lo.denominator)
    return x.re


def _dense_rank(mat, domain):
    from .linalg import rank_dense
    return rank_dense(mat, domain)


def _nullspace_sparse(rows, ncols, domain):
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    # back-substitution per free column
    piv = ech.rows
    out = []
    for free in range(ncols):
        if free in piv:
            continue
        sol = {free: domain.one}
        for c in sorted(piv, reverse=True):
            if c >= free:
                continue
            row = piv[c]
            acc = domain.zero
            for k, v in row.items():
                if k == c:
                    continue
                s = sol.get(k)
                if s is not None:
                    acc = acc + v * s
            if not acc.is_zero():
                sol[c] = -acc
        out.append(sol)
    return out


def _verify_wedderburn(sc, result):
    """Transport the presented product/star through the isomorphism and
    compare with matrix-unit calculus, on all basis pairs."""
    algebra = result.algebra
    domain = sc.domain
    fb = result.from_block
    tb = result.to_block
    for i in range(algebra.dim):
        col = tb.apply_vec(fb.cols.get(i, {}))
        if vec_clean(col) != {i: domain.one}:
            raise AlgebraError("isomorphism round-trip failed")
    for i in range(algebra.dim):
        vi = fb.cols.get(i, {})
        for j in range(algebra.dim):
            vj = fb.cols.get(j, {})
            prod = tb.apply_vec(sc.mul_vec(vi, vj))
            k = algebra.mul_indices(i, j)
            expect = {} if k is None else {k: domain.one}
            diff = dict(prod)
            vec_axpy(diff, -domain.one, expect)
            if any(not v.is_zero() for v in diff.values()):
                raise AlgebraError("transported product disagrees with matrix units")
        st = tb.apply_vec(sc.star_vec(vi))
        if vec_clean(st) != {algebra.star_index(i): domain.one}:
            raise AlgebraError("transported star disagrees with conjugate transpose")


def _wedderburn_numeric(sc: StructureConstants) -> WedderburnResult:
    """Numeric Wedderburn for the approximate backend (C*-presentations)."""
    import numpy as np
    domain = sc.domain
    n = sc.dim
    tol = domain.tol
    prod = np.zeros((n, n, n), dtype=complex)
    for (i, j), row in sc.product.items():
        for k, v in row.items():
            prod[i, j, k] = complex(v.re, v.im)
    starm = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(sc.star):
        for k, v in row.items():
            starm[i, k] = complex(v.re, v.im)
    unit = np.zeros(n, dtype=complex)
    for k, v in sc.unit.items():
        unit[k] = complex(v.re, v.im)

    def vmul(u, v):
        return np.einsum("i,j,ijk->k", u, v, prod)

    def vstar(u):
        return np.conj(u) @ starm

    def eig_idempotents(t, support):
        """Spectral idempotents of left multiplication by t inside the corner
        with unit ``support``; returns the nonzero Lagrange projections."""
        lt = np.array([vmul(t, np.eye(n)[i]) for i in range(n)]).T
        w = np.linalg.eigvals(lt)
        vals = []
        for x in w:
            if not any(abs(x - y) < 1e-6 for y in vals):
                vals.append(x)
        out = []
        for lam in vals:
            e = support.copy()
            for mu in vals:
                if abs(mu - lam) < 1e-6:
                    continue
                e = (vmul(t, e) - mu * e) / (lam - mu)
            if np.linalg.norm(e) > 1e-7:
                out.append(e)
        return out

    def corner_rank(f):
        vecs = np.array([vmul(vmul(f, np.eye(n)[i]), f) for i in range(n)])
        return np.linalg.matrix_rank(vecs, tol=1e-8)

    rng = np.random.default_rng(7)
    # center = nullspace of x -> [x, b_i] over all i
    m = np.concatenate([(prod[:, i, :] - prod[i, :, :]).transpose(1, 0)
                        for i in range(n)], axis=0)
    _, s, vh = np.linalg.svd(m)
    center = [vh[i] for i in range(vh.shape[0])
              if i >= len(s) or s[i] < 1e-9]

    t = sum(rng.normal() * c for c in center) if center else unit.copy()
    t = t + vstar(t)
    parts = eig_idempotents(t, unit)

    units = []
    for e in parts:
        f = e
        while corner_rank(f) > 1:
            tt = sum(rng.normal() * vmul(vmul(f, np.eye(n)[i]), f) for i in range(n))
            tt = tt + vstar(tt)
            cands = [p for p in eig_idempotents(tt, f)
                     if 1e-7 < np.linalg.norm(p) < np.linalg.norm(f) + 1e-7
                     and np.linalg.norm(p - f) > 1e-7]
            if not cands:
                raise AlgebraError("numeric idempotent split failed")
            f = cands[0]
        fi = int(np.argmax(abs(f)))

        def lam(a, b, fi=fi, f=f):
            return vmul(vstar(a), b)[fi] / f[fi]

        ortho = [f]
        for i in range(n):
            v = vmul(np.eye(n)[i], f)
            if np.linalg.norm(v) < 1e-10:
                continue
            w = v.copy()
            for u in ortho:
                w = w - (lam(u, w) / lam(u, u)) * u
            if abs(lam(w, w)) > 1e-10:
                ortho.append(w)
        ortho = [u / np.sqrt(abs(lam(u, u))) for u in ortho]
        nn = len(ortho)
        eunits = [[vmul(ortho[j], vstar(ortho[k])) for k in range(nn)]
                  for j in range(nn)]
        units.append(eunits)

    units.sort(key=len)
    algebra = BlockAlgebra(domain, [(str(q), len(u)) for q, u in enumerate(units)])
    cols = {}
    for q, eunits in enumerate(units):
        for a in range(len(eunits)):
            for b in range(len(eunits)):
                vecc = eunits[a][b]
                cols[algebra.index_of(q, a, b)] = {
                    i: domain.from_complex(vecc[i]) for i in range(n)
                    if abs(vecc[i]) > tol * 0.01}
    from_block = LinearMap(algebra.dim, n, cols)
    dense = np.zeros((n, algebra.dim), dtype=complex)
    for i, col in from_block.cols.items():
        for j, v in col.items():
            dense[j, i] = complex(v.re, v.im)
    inv = np.linalg.pinv(dense)
    to_cols = {i: {j: domain.from_complex(inv[j, i]) for j in range(algebra.dim)
                   if abs(inv[j, i]) > tol * 0.01} for i in range(n)}
    to_block = LinearMap(n, algebra.dim, to_cols)
    return WedderburnResult(algebra, to_block, from_block)
