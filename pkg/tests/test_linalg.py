import random
from fractions import Fraction

from wha.linalg import (
    Echelon, span_echelon, rref_dense, rank_dense, nullspace_dense,
    solve_dense, invert_dense, mat_mul, mat_vec, identity_dense, mat_eq,
)
from wha.scalars import rationals, field_make


def _lyfield():
    return field_make([-1, 0, 1, 0, 1], (Fraction(7, 10), Fraction(4, 5)))


def _rand_mat(F, rng, n, m):
    return [[F.from_int(rng.randrange(-4, 5)) for _ in range(m)] for _ in range(n)]


def test_echelon_rank_matches_dense():
    Q = rationals()
    rng = random.Random(11)
    for _ in range(20):
        n, m = rng.randrange(1, 6), rng.randrange(1, 7)
        mat = _rand_mat(Q, rng, n, m)
        ech = Echelon(m)
        for row in mat:
            ech.add({j: v for j, v in enumerate(row) if not v.is_zero()})
        assert ech.rank == rank_dense(mat, Q)


def test_echelon_membership():
    Q = rationals()
    rng = random.Random(12)
    rows = [{0: Q.from_int(1), 2: Q.from_int(2)}, {1: Q.from_int(1), 2: Q.from_int(-1)}]
    ech = span_echelon(rows, 3)
    # combination 3*row0 - 2*row1 is in the span
    comb = {0: Q.from_int(3), 1: Q.from_int(-2), 2: Q.from_int(8)}
    assert ech.contains(comb)
    assert not ech.contains({0: Q.from_int(1)})


def test_echelon_reduce_is_canonical_projection():
    Q = rationals()
    ech = span_echelon([{0: Q.one, 1: Q.one}], 3)
    r1 = ech.reduce({0: Q.from_int(2), 1: Q.from_int(5), 2: Q.one})
    r2 = ech.reduce({1: Q.from_int(3), 2: Q.one})
    # both differ from the inputs by span elements and have no support on pivot 0
    assert 0 not in r1 and 0 not in r2
    assert r1 == {1: Q.from_int(3), 2: Q.one}


def test_solve_and_invert_over_number_field():
    F = _lyfield()
    rng = random.Random(13)
    z = F.gen()
    for _ in range(10):
        n = rng.randrange(1, 5)
        mat = [[F.from_int(rng.randrange(-3, 4)) + z * F.from_int(rng.randrange(-2, 3))
                for _ in range(n)] for _ in range(n)]
        if rank_dense(mat, F) < n:
            continue
        x = [F.from_int(rng.randrange(-3, 4)) for _ in range(n)]
        b = mat_vec(mat, x, F)
        sol = solve_dense(mat, b, F)
        assert sol == x
        inv = invert_dense(mat, F)
        assert mat_eq(mat_mul(mat, inv, F), identity_dense(n, F))


def test_nullspace():
    Q = rationals()
    mat = [[Q.from_int(1), Q.from_int(2), Q.from_int(3)],
           [Q.from_int(2), Q.from_int(4), Q.from_int(6)]]
    ns = nullspace_dense(mat, Q)
    assert len(ns) == 2
    for v in ns:
        assert all(s.is_zero() for s in mat_vec(mat, v, Q))


def test_rref_pivots():
    Q = rationals()
    mat = [[Q.zero, Q.one], [Q.one, Q.zero]]
    rows, pivots = rref_dense(mat, Q)
    assert pivots == [0, 1]
    assert mat_eq(rows, identity_dense(2, Q))


def test_solve_inconsistent_returns_none():
    Q = rationals()
    mat = [[Q.one, Q.one], [Q.one, Q.one]]
    assert solve_dense(mat, [Q.one, Q.zero], Q) is None
