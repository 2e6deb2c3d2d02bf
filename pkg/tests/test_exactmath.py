import random
from fractions import Fraction
from itertools import combinations, product
from math import gcd

import pytest

from coxcheck import exactmath as xm
from coxcheck.errors import DomainError


def minors_gcd(rows):
    """gcd of all maximal minors; 1 iff the row lattice is saturated."""
    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        sub = tuple(tuple(row[c] for c in cols) for row in rows)
        g = gcd(g, abs(int(xm.det(sub))))
    return g


def test_hnf_identity():
    H, U = xm.hermite_normal_form(xm.identity_matrix(3))
    assert H == xm.identity_matrix(3)
    assert U == xm.identity_matrix(3)


def test_hnf_det_unimodular():
    A = ((2, 4), (1, 3))
    H, U = xm.hermite_normal_form(A)
    assert abs(xm.det(U)) == 1
    assert xm.mat_mul(U, A) == H


def test_hnf_rank_one_row_lattice():
    A = ((6, 10), (15, 25))
    H, U = xm.hermite_normal_form(A)
    assert H == ((3, 5), (0, 0))
    # Row lattice equality by mutual membership: every row of A is an integer
    # combination of H's rows and conversely (H = U A with U unimodular).
    LA = xm.LatticeBasis.from_generators(2, A)
    LH = xm.LatticeBasis.from_generators(2, [H[0]])
    assert xm.lattices_equal(LA, LH)


def test_hnf_random_row_lattice_preserved(rng):
    for _ in range(50):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 5)
        A = tuple(tuple(rng.randrange(-6, 7) for _ in range(cols))
                  for _ in range(rows))
        H, U = xm.hermite_normal_form(A)
        assert xm.mat_mul(U, A) == H
        assert abs(xm.det(U)) == 1
        # Deterministic: a second run gives the identical output.
        assert xm.hermite_normal_form(A) == (H, U)


def test_integer_kernel_symmetry():
    K = xm.integer_kernel(((1, 1),))
    assert K.vectors == ((1, -1),)


def test_integer_kernel_p1():
    # Rays 1 and -1 of the projective line: the unique relation is (1, 1).
    K = xm.integer_kernel(((1, -1),))
    assert K.vectors == ((1, 1),)


def test_integer_kernel_trivial():
    K = xm.integer_kernel(((1, 0), (0, 1)))
    assert K.vectors == ()


def test_integer_kernel_saturated(rng):
    for _ in range(120):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 6)
        A = tuple(tuple(rng.randrange(-5, 6) for _ in range(cols))
                  for _ in range(rows))
        K = xm.integer_kernel(A)
        for v in K.vectors:
            assert all(xm.dot(row, v) == 0 for row in A)
        if K.vectors:
            assert minors_gcd(K.vectors) == 1
        # Rank equality with the rational kernel.
        assert len(K.vectors) == cols - xm.rank(A)


def test_lattice_intersection_box_oracle():
    B1 = xm.LatticeBasis(2, ((2, 0), (0, 1)))
    B2 = xm.LatticeBasis(2, ((1, 0), (0, 2)))
    inter = xm.lattice_intersection(B1, B2)
    expected = xm.LatticeBasis(2, ((2, 0), (0, 2)))
    assert xm.lattices_equal(inter, expected)
    for x, y in product(range(-4, 5), repeat=2):
        v = (x, y)
        both = xm.lattice_contains(B1, v) and xm.lattice_contains(B2, v)
        assert both == xm.lattice_contains(inter, v)


def test_lattice_intersection_idempotent():
    B = xm.LatticeBasis(3, ((1, 2, 0), (0, 3, 1)))
    assert xm.lattices_equal(xm.lattice_intersection(B, B), B)


def test_lattice_intersection_with_full():
    B = xm.LatticeBasis(2, ((3, 1), (1, 1)))
    full = xm.LatticeBasis.full(2)
    assert xm.lattices_equal(xm.lattice_intersection(full, B), B)


def test_lattice_intersection_commutative_associative(rng):
    for _ in range(30):
        n = rng.randrange(1, 4)

        def rand_lattice():
            k = rng.randrange(1, n + 1)
            while True:
                vecs = tuple(tuple(rng.randrange(-4, 5) for _ in range(n))
                             for _ in range(k))
                if xm.rank(vecs) == k:
                    return xm.LatticeBasis(n, vecs)

        A, B, C = rand_lattice(), rand_lattice(), rand_lattice()
        assert xm.lattices_equal(xm.lattice_intersection(A, B),
                                 xm.lattice_intersection(B, A))
        left = xm.lattice_intersection(xm.lattice_intersection(A, B), C)
        right = xm.lattice_intersection(A, xm.lattice_intersection(B, C))
        assert xm.lattices_equal(left, right)


def test_lattice_index_cases():
    assert xm.lattice_index(xm.LatticeBasis(2, ((1, 0), (0, 1)))) == 1
    assert xm.lattice_index(xm.LatticeBasis(2, ((2, 0), (0, 1)))) == 2
    assert xm.lattice_index(xm.LatticeBasis(2, ((1, 0),))) is None


def test_divisibility_index_examples():
    full = xm.LatticeBasis.full(2)
    assert xm.divisibility_index(full, (3, 3)) == 3
    assert xm.divisibility_index(full, (2, 3)) == 1
    even = xm.LatticeBasis(2, ((2, 0), (0, 2)))
    assert xm.divisibility_index(even, (4, 0)) == 2


def test_divisibility_index_brute_force_oracle():
    even = xm.LatticeBasis(2, ((2, 0), (0, 2)))
    for v in [(4, 0), (2, 2), (6, 4), (8, 8)]:
        best = 0
        for k in range(1, 9):
            if all(x % k == 0 for x in v) and xm.lattice_contains(
                    even, tuple(x // k for x in v)):
                best = k
        assert xm.divisibility_index(even, v) == best


def test_divisibility_index_scaling(rng):
    for _ in range(40):
        n = rng.randrange(1, 4)
        while True:
            k = rng.randrange(1, n + 1)
            vecs = tuple(tuple(rng.randrange(-4, 5) for _ in range(n))
                         for _ in range(k))
            if xm.rank(vecs) == k:
                break
        B = xm.LatticeBasis(n, vecs)
        coeffs = [rng.randrange(-3, 4) for _ in range(k)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = 1
        g = 0
        for c in coeffs:
            g = gcd(g, abs(c))
        w = tuple(sum(coeffs[j] * vecs[j][i] for j in range(k)) for i in range(n))
        base = xm.divisibility_index(B, w)
        assert base == g
        scale = rng.randrange(2, 5)
        scaled = tuple(scale * x for x in w)
        assert xm.divisibility_index(B, scaled) == scale * base


def test_divisibility_index_domain_errors():
    full = xm.LatticeBasis.full(2)
    with pytest.raises(DomainError):
        xm.divisibility_index(full, (0, 0))
    even = xm.LatticeBasis(2, ((2, 0), (0, 2)))
    with pytest.raises(DomainError):
        xm.divisibility_index(even, (1, 0))
    line = xm.LatticeBasis(2, ((1, 0),))
    with pytest.raises(DomainError):
        xm.divisibility_index(line, (0, 1))


def test_floats_rejected_everywhere():
    with pytest.raises(TypeError):
        xm.as_matrix(((1.0, 2),))
    with pytest.raises(TypeError):
        xm.check_entry(0.5)


def test_basis_validation():
    with pytest.raises(DomainError):
        xm.LatticeBasis(2, ((1, 0), (2, 0)))
    with pytest.raises(DomainError):
        xm.LatticeBasis(2, ((1, 0, 0),))
