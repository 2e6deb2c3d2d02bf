"""Shared helpers: random smooth complete fans with ample weights, product
fans, and instance builders used across the suite."""

import random
from fractions import Fraction

import pytest

from coxcheck import bunchedring as br
from coxcheck import exactmath as xm
from coxcheck import fans
from coxcheck import groebner as gb
from coxcheck import mukai


def projective_space_fan(n):
    rays = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = []
    for skip in range(n + 1):
        cones.append(tuple(i for i in range(n + 1) if i != skip))
    return fans.Fan(n, tuple(rays), tuple(cones))


def product_fan(f1, f2):
    d = f1.dim + f2.dim
    rays = [tuple(r) + (0,) * f2.dim for r in f1.rays]
    rays += [(0,) * f1.dim + tuple(r) for r in f2.rays]
    off = f1.n_rays
    cones = []
    for c1 in f1.max_cones:
        for c2 in f2.max_cones:
            cones.append(tuple(c1) + tuple(off + i for i in c2))
    return fans.Fan(d, tuple(rays), tuple(cones))


def product_of_projective_spaces(dims):
    fan = projective_space_fan(dims[0])
    for k in dims[1:]:
        fan = product_fan(fan, projective_space_fan(k))
    return fan


def stellar_subdivide(fan, face, weights):
    """Blow up along a face (tuple of ray indices of some maximal cone) and
    extend the ample weights so the pair stays ample.

    The new weight is the midpoint of its admissible interval, so the
    construction is deterministic given the face choice.
    """
    new_ray = tuple(sum(fan.rays[i][c] for i in face) for c in range(fan.dim))
    cd = fans.cartier_data(fan, weights)
    upper = sum(weights[i] for i in face)
    lower = None
    face_set = set(face)
    for ci, idx in enumerate(fan.max_cones):
        if face_set <= set(idx):
            continue
        val = -xm.dot(new_ray, cd[ci])
        if lower is None or val > lower:
            lower = val
    assert lower is not None and lower < upper
    new_weight = (lower + upper) / 2
    new_index = fan.n_rays
    cones = []
    for idx in fan.max_cones:
        if face_set <= set(idx):
            for f in face:
                cones.append(tuple(sorted((set(idx) - {f}) | {new_index})))
        else:
            cones.append(idx)
    new_fan = fans.Fan(fan.dim, fan.rays + (new_ray,), tuple(cones))
    return new_fan, tuple(weights) + (new_weight,)


def random_unimodular(rng, d, steps=6):
    U = [list(row) for row in xm.identity_matrix(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(d):
            U[i][k] += c * U[j][k]
    return tuple(tuple(row) for row in U)


def random_ample_pair(rng, dim, max_blowups=2):
    """A random smooth complete projective fan with ample rational weights
    normalized into (0, 1]."""
    seeds = {
        1: [lambda: projective_space_fan(1)],
        2: [lambda: projective_space_fan(2),
            lambda: product_of_projective_spaces((1, 1))],
        3: [lambda: projective_space_fan(3),
            lambda: product_of_projective_spaces((2, 1)),
            lambda: product_of_projective_spaces((1, 1, 1))],
    }
    fan = rng.choice(seeds[dim])()
    weights = tuple(Fraction(1) for _ in range(fan.n_rays))
    for _ in range(rng.randrange(max_blowups + 1)):
        cone = rng.choice(fan.max_cones)
        size = rng.randrange(2, len(cone) + 1)
        face = tuple(sorted(rng.sample(list(cone), size)))
        fan, weights = stellar_subdivide(fan, face, weights)
    U = random_unimodular(rng, dim)
    rays = tuple(tuple(xm.mat_vec(U, r)) for r in fan.rays)
    fan = fans.Fan(dim, rays, fan.max_cones)
    top = max(weights)
    weights = tuple(w / top for w in weights)
    assert fans.is_ample(fan, weights)
    return fan, weights


def p3xp3_rays_cones():
    rays = []
    a = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    for i in range(4):
        rays.append(a[i] + (0, 0, 0))
        rays.append((0, 0, 0) + a[i])
    cones = []
    for ai in (0, 2, 4, 6):
        for bj in (1, 3, 5, 7):
            cones.append(tuple(sorted(set(range(8)) - {ai, bj})))
    return tuple(rays), tuple(cones)


def p3xp3_input(two_relations=False):
    rays, cones = p3xp3_rays_cones()
    fan = fans.Fan(6, rays, cones)
    degree_rows = fans.gale_dual(tuple(zip(*rays)))
    degrees = tuple(zip(*degree_rows))
    if two_relations:
        polys = (gb.parse_polynomial("T1*T2 + T3*T4 + T5*T6", 8),
                 gb.parse_polynomial("-T3*T4 + T5*T6 + T7*T8", 8))
        rel = ((1, 1), (1, 1))
    else:
        polys = (gb.parse_polynomial("T1*T2 + T3*T4 + T5*T6 + T7*T8", 8),)
        rel = ((1, 1),)
    p = br.GradedCoxPresentation(degrees, rel, polys)
    return mukai.ConstructionInput(p, fan)


def toric_input(fan):
    degree_rows = fans.gale_dual(tuple(zip(*fan.rays)))
    degrees = tuple(zip(*degree_rows))
    p = br.GradedCoxPresentation(degrees)
    return mukai.ConstructionInput(p, fan, tuple(0 for _ in range(fan.n_rays)))


def gauss_solve(rows, rhs):
    """Oracle-side dense Gauss over Fractions: a solution with free
    variables at zero, or None when inconsistent."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    where = []
    row = 0
    for col in range(n):
        pivot = None
        for i in range(row, m):
            if aug[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        scale = aug[row][col]
        aug[row] = [x / scale for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        where.append(col)
        row += 1
    for i in range(row, m):
        if aug[i][n] != 0:
            return None
    out = [Fraction(0)] * n
    for k, col in enumerate(where):
        out[col] = aug[k][n]
    return tuple(out)


def gauss_rank(rows):
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(n):
        pivot = None
        for i in range(rank, m):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        scale = work[rank][col]
        work[rank] = [x / scale for x in work[rank]]
        for i in range(m):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


@pytest.fixture
def rng():
    return random.Random(20250809)
