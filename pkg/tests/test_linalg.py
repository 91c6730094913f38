import itertools
import random

import pytest
from hypothesis import given, strategies as st

from lglab.linalg import (Matrix, PrimeField, Subspace, check_prime, enumerate_between, enumerate_subspaces,
                          gaussian_binomial, image, intersect, kernel, preimage, push, quotient_by, rref,
                          subspace_sum)


def det(rows, p):
    # cofactor expansion: independent of elimination
    n = len(rows)
    if n == 1:
        return rows[0][0] % p
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det(minor, p)
    return total % p


def rank_by_minors(rows, p):
    n, m = len(rows), len(rows[0])
    for k in range(min(n, m), 0, -1):
        for ri in itertools.combinations(range(n), k):
            for ci in itertools.combinations(range(m), k):
                if det([[rows[i][j] for j in ci] for i in ri], p):
                    return k
    return 0


matrices = st.integers(0, 2 ** 16).map(
    lambda s: [[random.Random(s).randrange(3) for _ in range(4)] for _ in range(4)])


def rand_matrix(rng, p, n, m):
    return Matrix.from_rows(p, [[rng.randrange(p) for _ in range(m)] for _ in range(n)])


def test_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        check_prime(65537)
    assert PrimeField(7).inv(3) == 5


def test_rref_identity_fixed():
    eye = Matrix.identity(2, 2)
    assert rref(eye) == eye


def test_rref_duplicate_rows():
    m = Matrix.from_rows(2, [[1, 1], [1, 1]])
    assert rref(m).rows == ((1, 1),)
    assert m.rank() == 1


@given(st.integers(0, 10 ** 6))
def test_rank_matches_minor_expansion(seed):
    rng = random.Random(seed)
    m = rand_matrix(rng, 3, 4, 4)
    assert rref(m).nrows == m.rank() == rank_by_minors([list(r) for r in m.rows], 3)


def test_image_kernel_preimage_examples():
    m = Matrix.diagonal(2, [1, 0])
    assert image(m, Subspace.span(2, 2, [[1, 1]])) == Subspace.coordinate(2, 2, [0])
    assert kernel(Matrix.zeros(2, 2, 2)) == Subspace.full(2, 2)
    assert preimage(m, Subspace.coordinate(2, 2, [0])) == Subspace.full(2, 2)


def test_sum_and_intersection_examples():
    a, b = Subspace.span(2, 2, [[1, 0]]), Subspace.span(2, 2, [[1, 1]])
    assert (a & b).dim == 0
    assert a + b == Subspace.full(2, 2)
    assert a & a == a + a == a


@given(st.integers(0, 10 ** 6))
def test_modular_law_random_f3(seed):
    rng = random.Random(seed)
    a = Subspace.span(3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(rng.randint(0, 4))])
    b = Subspace.span(3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(rng.randint(0, 4))])
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b) <= a and (a & b) <= b and a <= (a + b)


def test_modular_law_exhaustive_f2_4():
    spaces = [s for r in range(5) for s in enumerate_subspaces(4, r, 2)]
    assert len(spaces) == 1 + 15 + 35 + 15 + 1
    for a in spaces:
        for b in spaces:
            assert subspace_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim


@given(st.integers(0, 10 ** 6))
def test_canonical_form(seed):
    rng = random.Random(seed)
    vecs = [[rng.randrange(5) for _ in range(4)] for _ in range(3)]
    s = Subspace.span(5, 4, vecs)
    # any invertible recombination of the basis gives the same value
    mix = rand_matrix(rng, 5, 3, 3)
    while mix.rank() < 3:
        mix = rand_matrix(rng, 5, 3, 3)
    mixed = (mix @ Matrix.from_rows(5, vecs)).rows
    assert Subspace.span(5, 4, mixed) == s
    assert hash(Subspace.span(5, 4, mixed)) == hash(s)


def test_adjunction_exhaustive_f2_3():
    rng = random.Random(11)
    spaces = [s for r in range(4) for s in enumerate_subspaces(3, r, 2)]
    for _ in range(12):
        m = rand_matrix(rng, 2, 3, 3)
        for s in spaces:
            assert s <= preimage(m, image(m, s))
            assert image(m, preimage(m, s)) <= s


def test_quotient_examples():
    full = Subspace.full(2, 2)
    q = quotient_by(2, full)
    assert q.target_dim == 0
    assert push(q, Subspace.span(2, 2, [[1, 1]])).dim == 0
    q0 = quotient_by(2, Subspace.zero(2, 2))
    for s in enumerate_subspaces(2, 1, 2):
        assert push(q0, s).dim == 1
    q1 = quotient_by(2, Subspace.coordinate(2, 2, [0]))
    assert push(q1, Subspace.span(2, 2, [[1, 1]])).dim == 1


@given(st.integers(0, 10 ** 6))
def test_push_dimension_formula(seed):
    rng = random.Random(seed)
    ker = Subspace.span(3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(rng.randint(0, 3))])
    s = Subspace.span(3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(rng.randint(0, 4))])
    q = quotient_by(4, ker)
    assert q.target_dim == 4 - ker.dim
    assert push(q, s).dim == s.dim - (s & ker).dim


def test_enumeration_small_cases():
    lines = list(enumerate_subspaces(2, 1, 2))
    assert set(lines) == {Subspace.span(2, 2, [v]) for v in ([1, 0], [0, 1], [1, 1])}
    assert len(list(enumerate_subspaces(4, 2, 2))) == gaussian_binomial(4, 2, 2) == 35
    assert list(enumerate_subspaces(3, 0, 2)) == [Subspace.zero(2, 3)]


@pytest.mark.parametrize("p", [2, 3])
def test_enumeration_matches_gaussian_binomial(p):
    for d in range(6):
        for r in range(d + 1):
            got = list(enumerate_subspaces(d, r, p))
            assert len(got) == len(set(got)) == gaussian_binomial(d, r, p)


def test_gaussian_binomial_product_formula():
    def product(d, r, q):
        num = den = 1
        for i in range(r):
            num *= q ** (d - i) - 1
            den *= q ** (i + 1) - 1
        return num // den
    for q in (2, 3, 5):
        for d in range(7):
            for r in range(d + 1):
                assert gaussian_binomial(d, r, q) == product(d, r, q)


def test_enumerate_between_brute_force():
    low = Subspace.span(3, 4, [[1, 0, 0, 0]])
    up = Subspace.span(3, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    got = set(enumerate_between(low, up, 2))
    want = {s for s in enumerate_subspaces(4, 2, 3) if low <= s <= up}
    assert got == want and len(got) == gaussian_binomial(2, 1, 3)


def test_json_round_trip():
    s = Subspace.span(5, 3, [[1, 2, 3], [0, 1, 4]])
    assert Subspace.from_json(s.to_json()) == s
    m = Matrix.from_rows(5, [[1, 2], [3, 4]])
    assert Matrix.from_json(m.to_json()) == m
    assert m @ m.inverse() == Matrix.identity(5, 2)
