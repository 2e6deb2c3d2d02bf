import random
from fractions import Fraction
from itertools import combinations

import pytest

from coxcheck import polyhedra as ph
from coxcheck.errors import DomainError
from conftest import gauss_rank, gauss_solve


# --------------------------------------------------------------------------
# Independent oracles (subset solving with a separate Gauss routine;
# Fourier-Motzkin elimination)
# --------------------------------------------------------------------------

def oracle_vertices(halfspaces, dim):
    """Vertex enumeration oracle: solve every dim-subset of facet equalities
    and keep the feasible unique solutions."""
    verts = set()
    for subset in combinations(range(len(halfspaces)), dim):
        rows = [halfspaces[k][0] for k in subset]
        if gauss_rank(rows) != dim:
            continue
        point = gauss_solve(rows, [-halfspaces[k][1] for k in subset])
        ok = True
        for n, c in halfspaces:
            if sum(Fraction(a) * x for a, x in zip(n, point)) + Fraction(c) < 0:
                ok = False
                break
        if ok:
            verts.add(point)
    return verts


def fourier_motzkin_cone(gens, dim):
    """H-form of cone(gens) by eliminating the multiplier variables from
    {x = sum lam_i g_i, lam >= 0}.  Returns rows (coeffs on x, >= 0)."""
    k = len(gens)
    nv = k + dim
    rows = []
    for i in range(k):
        row = [Fraction(0)] * nv
        row[i] = Fraction(1)
        rows.append(row)
    for c in range(dim):
        row = [Fraction(-gens[i][c]) for i in range(k)] + [Fraction(0)] * dim
        row[k + c] = Fraction(1)
        rows.append(list(row))
        rows.append([-x for x in row])
    for var in range(k):
        pos = [r for r in rows if r[var] > 0]
        neg = [r for r in rows if r[var] < 0]
        zero = [r for r in rows if r[var] == 0]
        new = list(zero)
        for rp in pos:
            for rn in neg:
                comb = [a * (-rn[var]) + b * rp[var] for a, b in zip(rp, rn)]
                if any(x != 0 for x in comb):
                    new.append(comb)
        rows = new
    return [r[k:] for r in rows]


# --------------------------------------------------------------------------
# LP
# --------------------------------------------------------------------------

def test_lp_forced_optimum():
    res = ph.lp_minimize([1, 1], [(1, 1)], [2], [0, 0], [1, 1])
    assert res.status == "optimal"
    assert res.optimum == 2
    assert res.point == (1, 1)


def test_lp_p3xp3_fiber():
    # Degrees of the product of two projective 3-spaces, one relation.
    cols = [(1, 0) if i % 2 == 0 else (0, 1) for i in range(8)]
    rows = [tuple(cols[i][k] for i in range(8)) for k in range(2)]
    res = ph.lp_minimize([1] * 8, rows, [3, 3], [0] * 8, [1] * 8)
    assert res.status == "optimal"
    assert res.optimum == 6
    assert res.optimum <= 7  # m - r


def test_lp_infeasible_with_certificate():
    res = ph.lp_minimize([0], [(1,)], [2], [0], [1])
    assert res.status == "infeasible"
    assert res.certificate["kind"] in ("farkas", "bounds")
    if res.certificate["kind"] == "farkas":
        assert ph.verify_farkas(res.certificate)


def test_lp_unbounded_ray():
    res = ph.lp_minimize([-1], [], [], [0], [None])
    assert res.status == "unbounded"
    cert = res.certificate
    assert cert["kind"] == "ray"
    assert cert["ray"][0] > 0


def test_lp_free_variables():
    # min x + y with x + y = -5, both free.
    res = ph.lp_minimize([1, 1], [(1, 1)], [-5], [None, None], [None, None])
    assert res.status == "optimal"
    assert res.optimum == -5


def test_lp_bound_contradiction():
    res = ph.lp_minimize([0], [], [], [1], [0])
    assert res.status == "infeasible"
    assert res.certificate["kind"] == "bounds"


def test_lp_min_max_negation(rng):
    # Maximization is the negated minimization: max c.x = -min(-c).x, and on
    # a bounded feasible region the minimum never exceeds the maximum.
    for _ in range(60):
        n = rng.randrange(1, 4)
        m = rng.randrange(0, n)
        A = [tuple(rng.randrange(-3, 4) for _ in range(n)) for _ in range(m)]
        b = [rng.randrange(-2, 3) for _ in range(m)]
        c = [rng.randrange(-3, 4) for _ in range(n)]
        lo = [0] * n
        hi = [rng.randrange(1, 4) for _ in range(n)]
        mn = ph.lp_minimize(c, A, b, lo, hi)
        mx = ph.lp_minimize([-x for x in c], A, b, lo, hi)
        assert mn.status == mx.status
        if mn.status == "optimal":
            maximum = -mx.optimum
            assert mn.optimum <= maximum
            assert sum(ci * xi for ci, xi in zip(c, mx.point)) == maximum


def test_lp_vs_fiber_vertex_enumeration(rng):
    """Acceptance oracle: LP optimum equals the minimum over the fiber
    polytope's vertices (enumerated independently via sympy), m <= 10."""
    checked = 0
    trials = 0
    while checked < 200 and trials < 2000:
        trials += 1
        m = rng.randrange(2, 11)
        rho = rng.randrange(1, min(m, 4))
        cols = [tuple(rng.randrange(0, 3) for _ in range(rho)) for _ in range(m)]
        target = tuple(sum(rng.choice([0, 1]) * cols[i][k] for i in range(m))
                       for k in range(rho))
        rows = [tuple(cols[i][k] for i in range(m)) for k in range(rho)]
        res = ph.lp_minimize([1] * m, rows, list(target), [0] * m, [1] * m)

        rank = gauss_rank(rows)
        best = None
        for free in combinations(range(m), m - rank):
            for bits in range(2 ** len(free)):
                fixed = {f: (bits >> t) & 1 for t, f in enumerate(free)}
                keep = [i for i in range(m) if i not in fixed]
                sub = [[rows[k][i] for i in keep] for k in range(rho)]
                if keep and gauss_rank(sub) != len(keep):
                    continue
                rhs = [target[k] - sum(fixed[f] * rows[k][f] for f in free)
                       for k in range(rho)]
                sol = gauss_solve(sub, rhs) if keep else (
                    () if all(x == 0 for x in rhs) else None)
                if sol is None:
                    continue
                point = {i: sol[t] for t, i in enumerate(keep)}
                point.update({f: Fraction(v) for f, v in fixed.items()})
                if all(0 <= point[i] <= 1 for i in range(m)):
                    total = sum(point[i] for i in range(m))
                    if best is None or total < best:
                        best = total
        if best is None:
            assert res.status == "infeasible"
        else:
            assert res.status == "optimal"
            assert res.optimum == best
            checked += 1
    assert checked >= 200


# --------------------------------------------------------------------------
# Polytopes
# --------------------------------------------------------------------------

def test_dual_description_square():
    hs = [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]
    V = ph.dual_description(ph.HPolytope(tuple(hs), 2))
    assert set(V.vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_dual_description_triangle():
    hs = [((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)]
    V = ph.dual_description(ph.HPolytope(tuple(hs), 2))
    assert set(V.vertices) == {(-1, -1), (2, -1), (-1, 2)}


def test_dual_description_empty():
    hs = [((1,), -2), ((-1,), 1)]  # y >= 2 and y <= 1
    with pytest.raises(ph.EmptyPolytopeError):
        ph.dual_description(ph.HPolytope(tuple(hs), 1, expect_bounded=False))


def test_dual_description_unbounded():
    hs = [((1, 0), 0), ((0, 1), 0)]
    with pytest.raises(ph.UnboundedPolytopeError):
        ph.HPolytope(tuple(hs), 2)
    with pytest.raises(ph.UnboundedPolytopeError):
        ph.dual_description(ph.HPolytope(tuple(hs), 2, expect_bounded=False))


def test_dual_description_random_vs_oracle(rng):
    """Acceptance oracle: d <= 4, <= 10 facets, >= 200 instances."""
    for trial in range(200):
        d = rng.randrange(1, 5)
        extra = rng.randrange(0, max(1, 10 - 2 * d))
        hs = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            box = rng.randrange(1, 4)
            hs.append((tuple(e), box))
            hs.append((tuple(-x for x in e), box))
        for _ in range(extra):
            n = tuple(rng.randrange(-3, 4) for _ in range(d))
            if all(x == 0 for x in n):
                continue
            hs.append((n, rng.randrange(1, 5)))
        hs = hs[:10]
        H = ph.HPolytope(tuple(hs), d)
        V = ph.dual_description(H)
        assert set(V.vertices) == oracle_vertices(hs, d)


def test_v_to_h_round_trip(rng):
    for _ in range(60):
        d = rng.randrange(1, 4)
        hs = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            hs.append((tuple(e), rng.randrange(1, 3)))
            hs.append((tuple(-x for x in e), rng.randrange(1, 3)))
        n = tuple(rng.randrange(-2, 3) for _ in range(d))
        if any(x != 0 for x in n):
            hs.append((n, rng.randrange(1, 4)))
        V = ph.dual_description(ph.HPolytope(tuple(hs), d))
        H2 = ph.v_to_h(V)
        V2 = ph.dual_description(ph.HPolytope(H2.halfspaces, d, expect_bounded=False))
        assert set(V2.vertices) == set(V.vertices)


def test_polar_square():
    V = ph.VPolytope(((1, 1), (1, -1), (-1, 1), (-1, -1)))
    P = ph.polar_dual(V)
    assert set(P.vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_polar_triangle_gives_fan_rays():
    V = ph.VPolytope(((-1, -1), (2, -1), (-1, 2)))
    P = ph.polar_dual(V)
    assert set(P.vertices) == {(1, 0), (0, 1), (-1, -1)}


def test_polar_involution_random(rng):
    count = 0
    for _ in range(120):
        d = rng.randrange(1, 4)
        hs = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            hs.append((tuple(e), rng.randrange(1, 4)))
            hs.append((tuple(-x for x in e), rng.randrange(1, 4)))
        n = tuple(rng.randrange(-2, 3) for _ in range(d))
        if any(x != 0 for x in n):
            hs.append((n, rng.randrange(1, 4)))
        V = ph.dual_description(ph.HPolytope(tuple(hs), d))
        PP = ph.polar_dual(ph.polar_dual(V))
        assert set(PP.vertices) == set(V.vertices)
        count += 1
    assert count >= 100


def test_polar_requires_interior_origin():
    V = ph.VPolytope(((0, 0), (1, 0), (0, 1)), check_irredundant=False)
    with pytest.raises(DomainError):
        ph.polar_dual(V)


def test_hull_membership_examples():
    assert not ph.hull_membership((1, 1), [(1, 0), (0, 1)], include_origin=True)
    assert ph.hull_membership((1, 1), [(2, 0), (0, 2)])
    assert ph.hull_membership((0, 0), [(5, 1), (-3, 2)], include_origin=True)


def test_hull_membership_monotone(rng):
    for _ in range(50):
        d = rng.randrange(1, 4)
        S = [tuple(rng.randrange(-3, 4) for _ in range(d))
             for _ in range(rng.randrange(1, 5))]
        x = tuple(rng.randrange(-3, 4) for _ in range(d))
        inside = ph.hull_membership(x, S)
        bigger = S + [tuple(rng.randrange(-3, 4) for _ in range(d))]
        if inside:
            assert ph.hull_membership(x, bigger)


def test_cone_membership_basic():
    C = ph.RationalCone(2, ((1, 0), (0, 1)))
    assert ph.cone_membership((1, 1), C, interior=True)
    assert not ph.cone_membership((1, 0), C, interior=True)
    assert ph.cone_membership((1, 0), C)
    assert not ph.cone_membership((-1, 0), C)


def test_cone_membership_vs_fourier_motzkin(rng):
    for _ in range(150):
        d = rng.randrange(1, 4)
        k = rng.randrange(1, 4)
        gens = [tuple(rng.randrange(-2, 3) for _ in range(d)) for _ in range(k)]
        gens = [g for g in gens if any(x != 0 for x in g)]
        if not gens:
            continue
        C = ph.RationalCone(d, tuple(gens))
        rows = fourier_motzkin_cone(gens, d)
        x = tuple(rng.randrange(-3, 4) for _ in range(d))
        expected = all(sum(r[c] * x[c] for c in range(d)) >= 0 for r in rows)
        assert ph.cone_membership(x, C) == expected


def test_zero_cone():
    C = ph.RationalCone(2, ())
    assert ph.cone_membership((0, 0), C)
    assert not ph.cone_membership((1, 0), C)
    assert not ph.cone_membership((0, 0), C, interior=True)


def test_vpolytope_irredundancy_check():
    with pytest.raises(DomainError):
        ph.VPolytope(((0, 0), (2, 0), (1, 0)))
