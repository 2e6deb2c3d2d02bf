"""Exact integer and rational linear algebra.

Vectors are tuples, matrices are tuples of row tuples.  Entries are Python
ints or ``fractions.Fraction``; floating point is rejected everywhere, since
every downstream result is an exact identity or a divisibility statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import DomainError


def check_entry(x):
    """Accept ints and Fractions only; floats are banned repo-wide."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("matrix entries must be int or Fraction, got %r" % (x,))
    if not isinstance(x, (int, Fraction)):
        raise TypeError("matrix entries must be int or Fraction, got %r" % (x,))
    return x


def as_matrix(rows):
    """Validate a rectangular matrix and return it as a tuple of row tuples."""
    out = tuple(tuple(check_entry(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise DomainError("matrix rows have unequal lengths")
    return out


def as_int_matrix(rows):
    out = as_matrix(rows)
    for row in out:
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise DomainError("expected integer entries, got %s" % (x,))
    return tuple(tuple(int(x) for x in row) for row in out)


def as_int_vector(v):
    v = tuple(check_entry(x) for x in v)
    for x in v:
        if isinstance(x, Fraction) and x.denominator != 1:
            raise DomainError("expected integer entries, got %s" % (x,))
    return tuple(int(x) for x in v)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(A, v):
    return tuple(dot(row, v) for row in A)


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * x for x in v)


def vec_gcd(v):
    return reduce(gcd, (abs(x) for x in v), 0)


def is_primitive(v):
    """True when the integer vector is nonzero with coprime entries."""
    return vec_gcd(as_int_vector(v)) == 1


def primitive_part(v):
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    v = as_int_vector(v)
    g = vec_gcd(v)
    if g == 0:
        raise DomainError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def rank(A):
    """Rank over the rationals."""
    A = as_matrix(A)
    M = [[Fraction(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if M else 0
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == m:
            break
    return r


def solve_linear(A, b):
    """One exact rational solution of A x = b, or None if inconsistent.

    Free variables are set to zero; pivoting is left-to-right, so the result
    is deterministic.
    """
    A = as_matrix(A)
    m = len(A)
    n = len(A[0]) if A else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(check_entry(b[i]))] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b_ for a, b_ in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for k, c in enumerate(piv_cols):
        x[c] = M[k][n]
    return tuple(x)


def det(A):
    """Exact determinant of a square matrix."""
    A = as_matrix(A)
    n = len(A)
    if any(len(row) != n for row in A):
        raise DomainError("determinant requires a square matrix")
    M = [[Fraction(x) for x in row] for row in A]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        result *= M[c][c]
        inv = Fraction(1) / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def inverse(A):
    """Exact inverse of a square rational matrix."""
    A = as_matrix(A)
    n = len(A)
    M = [[Fraction(x) for x in A[i]] + [Fraction(1 if j == i else 0) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise DomainError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = Fraction(1) / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def hermite_normal_form(A):
    """Row-style Hermite normal form.

    Returns (H, U) with H = U @ A and U unimodular.  Columns are processed
    left to right; within a column the pivot is driven to the smallest
    magnitude by Euclidean row combinations, so the output is deterministic.
    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows sink to the bottom.
    """
    A = as_int_matrix(A)
    nr = len(A)
    nc = len(A[0]) if A else 0
    H = [list(row) for row in A]
    U = [list(row) for row in identity_matrix(nr)]
    row = 0
    for col in range(nc):
        if row == nr:
            break
        while True:
            nz = [i for i in range(row, nr) if H[i][col] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][col]), i))
            for i in nz:
                if i == i0:
                    continue
                q = H[i][col] // H[i0][col]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[i0])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[i0])]
        nz = [i for i in range(row, nr) if H[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != row:
            H[row], H[i0] = H[i0], H[row]
            U[row], U[i0] = U[i0], U[row]
        if H[row][col] < 0:
            H[row] = [-x for x in H[row]]
            U[row] = [-x for x in U[row]]
        for i in range(row):
            q = H[i][col] // H[row][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[row])]
        row += 1
    return tuple(tuple(r) for r in H), tuple(tuple(r) for r in U)


@dataclass(frozen=True)
class LatticeBasis:
    """A basis of a sublattice of Z^ambient_rank.

    The vectors must be linearly independent over Q.  Lattice equality is
    mutual membership of bases, never identity of the stored tuples.
    """

    ambient_rank: int
    vectors: tuple

    def __post_init__(self):
        vecs = tuple(as_int_vector(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        for v in vecs:
            if len(v) != self.ambient_rank:
                raise DomainError("basis vector length differs from ambient rank")
        if vecs and rank(vecs) != len(vecs):
            raise DomainError("basis vectors are linearly dependent")

    @classmethod
    def full(cls, n):
        return cls(n, identity_matrix(n))

    @classmethod
    def from_generators(cls, ambient_rank, generators):
        """Canonical basis (HNF rows) of the lattice the generators span."""
        gens = tuple(as_int_vector(v) for v in generators)
        for v in gens:
            if len(v) != ambient_rank:
                raise DomainError("generator length differs from ambient rank")
        if not gens:
            return cls(ambient_rank, ())
        H, _ = hermite_normal_form(gens)
        rows = tuple(r for r in H if any(x != 0 for x in r))
        return cls(ambient_rank, rows)

    @property
    def rank(self):
        return len(self.vectors)


def integer_kernel(A):
    """Basis of {x in Z^cols : A x = 0}.

    The kernel of an integer-linear map is automatically saturated: it is
    not a finite-index sublattice of any larger kernel.
    """
    A = as_int_matrix(A)
    if not A:
        raise DomainError("kernel of an empty matrix is ambiguous")
    ncols = len(A[0])
    H, U = hermite_normal_form(transpose(A))
    ker_rows = [U[i] for i in range(ncols) if all(x == 0 for x in H[i])]
    return LatticeBasis.from_generators(ncols, ker_rows)


def lattice_contains(B, v):
    """Exact membership of an integer vector in the lattice spanned by B."""
    v = as_int_vector(v)
    if len(v) != B.ambient_rank:
        raise DomainError("vector length differs from ambient rank")
    if all(x == 0 for x in v):
        return True
    if not B.vectors:
        return False
    cols = transpose(B.vectors)
    x = solve_linear(cols, v)
    if x is None:
        return False
    return all(c.denominator == 1 for c in x)


def lattices_equal(B1, B2):
    return (B1.ambient_rank == B2.ambient_rank
            and all(lattice_contains(B2, v) for v in B1.vectors)
            and all(lattice_contains(B1, v) for v in B2.vectors))


def lattice_intersection(B1, B2):
    """Basis of the intersection of two sublattices of the same Z^n."""
    if B1.ambient_rank != B2.ambient_rank:
        raise DomainError("lattices live in different ambient ranks")
    n = B1.ambient_rank
    if not B1.vectors or not B2.vectors:
        return LatticeBasis(n, ())
    # x in L1 cap L2  iff  x = sum u_i b1_i = sum w_j b2_j for integers u, w.
    stacked = tuple(
        tuple(B1.vectors[j][i] for j in range(len(B1.vectors)))
        + tuple(-B2.vectors[j][i] for j in range(len(B2.vectors)))
        for i in range(n)
    )
    K = integer_kernel(stacked)
    k1 = len(B1.vectors)
    gens = []
    for uv in K.vectors:
        x = [0] * n
        for j in range(k1):
            for i in range(n):
                x[i] += uv[j] * B1.vectors[j][i]
        gens.append(tuple(x))
    return LatticeBasis.from_generators(n, gens)


def lattice_index(B):
    """Index of span_Z(B) in Z^ambient_rank, or None when infinite."""
    if B.rank < B.ambient_rank:
        return None
    d = det(B.vectors)
    return int(abs(d))


def divisibility_index(B, v):
    """Largest k > 0 with v/k still inside span_Z(B).

    Equals the gcd of the coordinates of v in any basis of the lattice.
    Requires v nonzero and v in span_Z(B).
    """
    v = as_int_vector(v)
    if len(v) != B.ambient_rank:
        raise DomainError("vector length differs from ambient rank")
    if all(x == 0 for x in v):
        raise DomainError("divisibility index of the zero vector is undefined")
    if not B.vectors:
        raise DomainError("vector lies outside the span of the (empty) basis")
    cols = transpose(B.vectors)
    x = solve_linear(cols, v)
    if x is None:
        raise DomainError("vector lies outside the rational span of the basis")
    if any(c.denominator != 1 for c in x):
        raise DomainError("vector lies outside the integer span of the basis")
    return reduce(gcd, (abs(int(c)) for c in x), 0)
