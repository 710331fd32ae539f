import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oigraph.gf import GF
from oigraph.geometry import (
    EdgeTypeTriple,
    OSpace,
    SubspaceType,
    classify_type,
    count_by_type,
    disc_square_class,
    dual,
    enumerate_rref,
    enumerate_subspaces,
    gauss_binomial,
    gram,
    space_make,
    subspace_make,
    subspace_sum,
    witt_bruteforce_oracle,
    witt_decompose,
)
from oigraph.linalg import Mat

F3 = GF(3)
F5 = GF(5)


def oi43():
    return space_make(2, 0, F3)


def oi33(disc="one"):
    return space_make(1, 1, F3, disc)


def test_space_forms():
    s = space_make(1, 0, F3)
    assert s.form == Mat(F3, [[0, 1], [1, 0]])
    s = oi33()
    assert s.form == Mat(F3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    s = space_make(1, 1, F3, "z")
    assert s.form == Mat(F3, [[0, 1, 0], [1, 0, 0], [0, 0, 2]])
    s = space_make(1, 2, F5)
    # z = 2 in F_5, so the definite tail is diag(1, -2) = diag(1, 3)
    assert s.form == Mat(F5, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]])
    s = space_make(0, 2, F3)
    assert s.form == Mat(F3, [[1, 0], [0, 1]])  # -z = -2 = 1


def test_space_validation():
    with pytest.raises(ValueError):
        space_make(0, 1, F3)  # n = 1
    with pytest.raises(ValueError):
        space_make(1, 3, F3)
    with pytest.raises(ValueError):
        space_make(1, 0, F3, "z")  # disc without delta = 1
    with pytest.raises(ValueError):
        OSpace(1, 1, F3, "weird")


def test_named_basis_vectors():
    s = space_make(2, 1, F3)
    assert s.e(1) == (1, 0, 0, 0, 0)
    assert s.f(2) == (0, 0, 0, 1, 0)
    assert s.eps() == (0, 0, 0, 0, 1)
    assert s.pair(s.e(1), s.f(1)) == 1
    assert s.pair(s.e(1), s.f(2)) == 0
    with pytest.raises(ValueError):
        s.kappa()


def test_subspace_make():
    s = oi43()
    P = subspace_make(s, [s.e(1)])
    assert P.rows == ((1, 0, 0, 0),)
    P = subspace_make(s, [(1, 1, 0, 0), (2, 2, 0, 0)])
    assert P.rows == ((1, 1, 0, 0),) and P.m == 1
    with pytest.raises(ValueError):
        subspace_make(s, [(0, 0, 0, 0)])
    with pytest.raises(ValueError):
        subspace_make(s, [s.e(1), s.e(2), s.f(1), s.f(2)])


def test_dual_examples():
    s = oi43()
    P = subspace_make(s, [s.e(1)])
    assert dual(P) == subspace_make(s, [s.e(1), s.e(2), s.f(2)])
    t = oi33()
    E = subspace_make(t, [t.eps()])
    assert dual(E) == subspace_make(t, [t.e(1), t.f(1)])


def test_dual_involution_and_reversal():
    s = oi43()
    subs = [P for m in (1, 2) for P in enumerate_subspaces(s, m)]
    for P in subs:
        D = dual(P)
        assert D.m == s.n - P.m
        assert dual(D) == P
    # inclusion reversal on a few nested pairs
    rng = random.Random(3)
    planes = list(enumerate_subspaces(s, 2))
    for P in rng.sample(planes, 20):
        for L in enumerate_subspaces(s, 1):
            if P.contains(L):
                assert dual(L).contains(dual(P))


def test_gram_examples():
    s = oi43()
    assert gram(subspace_make(s, [s.e(1)])) == Mat(F3, [[0]])
    v = tuple(F3.add(a, b) for a, b in zip(s.e(1), s.f(1)))
    assert gram(subspace_make(s, [v])) == Mat(F3, [[2]])
    assert gram(subspace_make(s, [s.e(1), s.f(1)])) == Mat(F3, [[0, 1], [1, 0]])


def test_witt_examples():
    assert witt_decompose(Mat(F3, [[0, 1], [1, 0]])) == (1, 0, None)
    assert witt_decompose(Mat(F3, [[1, 0], [0, 1]])) == (0, 2, None)
    assert witt_decompose(Mat(F3, [[1, 0], [0, 2]])) == (1, 0, None)
    assert witt_decompose(Mat(F3, [[0]])) == (0, 0, None)
    assert witt_decompose(Mat(F3, [[1]])) == (0, 1, "one")
    assert witt_decompose(Mat(F3, [[2]])) == (0, 1, "z")


def test_witt_oracle_examples():
    assert witt_bruteforce_oracle(Mat(F3, [[1, 0], [0, 1]])) == 0
    assert witt_bruteforce_oracle(Mat.diagonal(F3, (1, 2, 0))) == 1
    assert witt_bruteforce_oracle(Mat(F3, [[0, 1], [1, 0]])) == 1


def all_symmetric(field, n):
    idx = [(i, j) for i in range(n) for j in range(i, n)]

    def fill(vals):
        G = [[0] * n for _ in range(n)]
        for (i, j), v in zip(idx, vals):
            G[i][j] = G[j][i] = v
        return Mat(field, G)

    import itertools

    for vals in itertools.product(range(field.q), repeat=len(idx)):
        yield fill(vals)


def test_witt_matches_oracle_2x2_f3_exhaustive():
    for G in all_symmetric(F3, 2):
        s, gamma, _ = witt_decompose(G)
        assert 2 * s + gamma == G.rank()
        assert s == witt_bruteforce_oracle(G)


def test_witt_closed_form_crosscheck():
    # the discriminant determines gamma for nondegenerate forms:
    # r even: gamma = 0 iff disc * (-1)^(r/2) is a square, else 2;
    # r odd: gamma = 1 and the residual class is disc * (-1)^((r-1)/2).
    rng = random.Random(23)
    for field in [F3, F5, GF(3, 2)]:
        for _ in range(120):
            n = rng.randrange(1, 5)
            G = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    G[i][j] = G[j][i] = rng.randrange(field.q)
            G = Mat(field, G)
            r = G.rank()
            s, gamma, tag = witt_decompose(G)
            assert 2 * s + gamma == r
            if r == 0:
                continue
            d = [e for e in (G.congruence_diagonalize()[0][i, i] for i in range(n)) if e != 0]
            disc = 1
            for e in d:
                disc = field.mul(disc, e)
            if r % 2 == 0:
                sign = field.pow(field.neg(1), r // 2)
                assert (gamma == 0) == field.is_square(field.mul(disc, sign))
            else:
                sign = field.pow(field.neg(1), (r - 1) // 2)
                cls = "one" if field.is_square(field.mul(disc, sign)) else "z"
                assert gamma == 1 and tag == cls


def test_classify_examples():
    s = oi43()
    assert classify_type(subspace_make(s, [s.e(1)])) == SubspaceType(1, 0, 0)
    t = oi33()
    assert classify_type(subspace_make(t, [t.eps()])) == SubspaceType(1, 1, 0, "one")
    v = tuple(F3.add(a, b) for a, b in zip(s.e(1), s.f(1)))
    assert classify_type(subspace_make(s, [v])) == SubspaceType(1, 1, 0, "z")
    assert classify_type(subspace_make(s, [s.e(1), s.e(2)])) == SubspaceType(2, 0, 0)
    assert classify_type(subspace_make(s, [s.e(1), s.f(1)])) == SubspaceType(2, 2, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_classify_basis_invariant(seed):
    rng = random.Random(seed)
    s = oi43()
    m = rng.randrange(1, 4)
    rows = [[rng.randrange(3) for _ in range(4)] for _ in range(m)]
    while not any(any(r) for r in rows):
        rows = [[rng.randrange(3) for _ in range(4)] for _ in range(m)]
    P = subspace_make(s, rows)
    U = None
    while U is None or U.rank() < P.m:
        U = Mat(F3, [[rng.randrange(3) for _ in range(P.m)] for _ in range(P.m)])
    Q = subspace_make(s, U.mul(P.basis_matrix()).rows)
    assert Q == P  # same row space, same canonical form
    assert classify_type(Q) == classify_type(P)


def test_disc_square_class():
    s = oi43()
    assert disc_square_class(subspace_make(s, [s.e(1), s.f(1)])) == 0  # det = -1 = 2
    t = oi33()
    assert disc_square_class(subspace_make(t, [t.eps()])) == 1
    s5 = space_make(2, 0, F5)
    assert disc_square_class(subspace_make(s5, [s5.e(1), s5.f(1)])) == 1  # -1 = 4 square
    with pytest.raises(ValueError):
        disc_square_class(subspace_make(s, [s.e(1)]))


def test_enumerate_counts_and_uniqueness():
    s = oi43()
    for m in (1, 2, 3):
        subs = list(enumerate_subspaces(s, m))
        assert len(subs) == gauss_binomial(4, m, 3)
        assert len({P.rows for P in subs}) == len(subs)
    assert gauss_binomial(4, 2, 3) == 130
    assert len(list(enumerate_subspaces(space_make(1, 0, F3), 1))) == 4
    with pytest.raises(ValueError):
        list(enumerate_subspaces(s, 4))


def test_enumerate_rref_forms_are_canonical():
    for rows in enumerate_rref(F3, 3, 2):
        M = Mat(F3, rows)
        R, rank, _ = M.rref()
        assert R == M and rank == 2


def test_count_by_type_oi43_dim1():
    counts = count_by_type(oi43(), 1)
    # hyperbolic 4-space over F_3: (q+1)(q^2-1)/(q-1) = 16 isotropic points,
    # and the 24 anisotropic points split evenly between the square classes
    assert counts[SubspaceType(1, 0, 0)] == 16
    assert counts[SubspaceType(1, 1, 0, "one")] == 12
    assert counts[SubspaceType(1, 1, 0, "z")] == 12
    assert sum(counts.values()) == 40


def test_count_by_type_small_spaces():
    c = count_by_type(space_make(1, 0, F3), 1)
    assert c[SubspaceType(1, 0, 0)] == 2
    assert sum(c.values()) == 4
    c = count_by_type(oi33(), 1)
    assert sum(c.values()) == 13
    c = count_by_type(oi33("z"), 1)
    assert sum(c.values()) == 13
    # parabolic 3-space has (q^2-1)/(q-1)... isotropic count q+1 = 4
    assert c[SubspaceType(1, 0, 0)] == 4


def test_subspace_sum():
    s = oi43()
    A = subspace_make(s, [s.e(1)])
    B = subspace_make(s, [s.e(2)])
    assert subspace_sum(A, B) == subspace_make(s, [s.e(1), s.e(2)])
    C = subspace_make(s, [tuple(F3.add(a, b) for a, b in zip(s.e(1), s.e(2)))])
    assert subspace_sum(A, C) == subspace_make(s, [s.e(1), s.e(2)])
    assert subspace_sum(A, A) == A
    full = subspace_sum(
        subspace_make(s, [s.e(1), s.e(2)]), subspace_make(s, [s.f(1), s.f(2)])
    )
    assert full.m == 4 and not full.is_vertex
    assert classify_type(full) == SubspaceType(4, 4, 2)


def test_edge_type_triple_symmetry():
    s = oi43()
    A = subspace_make(s, [s.e(1)])
    B = subspace_make(s, [s.e(2)])
    assert EdgeTypeTriple.of(A, B) == EdgeTypeTriple.of(B, A)
    tr = EdgeTypeTriple.of(A, B)
    assert tr.total == SubspaceType(2, 0, 0)
