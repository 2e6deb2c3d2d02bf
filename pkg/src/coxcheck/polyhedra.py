"""Exact cones and polytopes over Q, plus an exact rational simplex solver.

Polytopes come in two descriptions: half-space intersections (HPolytope) and
vertex hulls (VPolytope).  Conversion both ways is by brute-force subset
solving, which is entirely adequate at the scale of the bundled instances
(about two dozen facets).  All open conditions (interior membership, strict
positivity) are decided by LP on the closed region with a maximized slack
variable, never by epsilon tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import exactmath as xm
from .errors import DomainError


class EmptyPolytopeError(DomainError):
    pass


class UnboundedPolytopeError(DomainError):
    pass


def _frac(x):
    xm.check_entry(x)
    return Fraction(x)


def _frac_vec(v):
    return tuple(_frac(x) for x in v)


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPProblem:
    """min objective . x  subject to  eq_matrix x = eq_rhs, lower <= x <= upper.

    A bound of None means unbounded on that side.
    """

    objective: tuple
    eq_matrix: tuple
    eq_rhs: tuple
    lower: tuple
    upper: tuple

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", _frac_vec(self.objective))
        object.__setattr__(self, "eq_matrix",
                           tuple(_frac_vec(r) for r in self.eq_matrix))
        object.__setattr__(self, "eq_rhs", _frac_vec(self.eq_rhs))
        object.__setattr__(self, "lower",
                           tuple(None if b is None else _frac(b) for b in self.lower))
        object.__setattr__(self, "upper",
                           tuple(None if b is None else _frac(b) for b in self.upper))
        if len(self.lower) != n or len(self.upper) != n:
            raise DomainError("bound vectors do not match the variable count")
        if len(self.eq_matrix) != len(self.eq_rhs):
            raise DomainError("equality matrix and right side differ in length")
        for row in self.eq_matrix:
            if len(row) != n:
                raise DomainError("equality row length does not match variables")


@dataclass(frozen=True)
class LPResult:
    """Outcome of an exact LP solve.

    status is "optimal", "infeasible" or "unbounded".  Every result is
    re-verified by substitution before being returned: optimal points satisfy
    all constraints exactly, infeasibility carries a Farkas certificate for
    the standard-form system stored alongside it, and unboundedness carries a
    feasible point plus an improving ray.
    """

    status: str
    optimum: Fraction | None = None
    point: tuple | None = None
    certificate: dict | None = None


def _pivot(T, obj, basis, pr, pc):
    piv = T[pr][pc]
    T[pr] = [v / piv for v in T[pr]]
    prow = T[pr]
    for i in range(len(T)):
        if i != pr and T[i][pc] != 0:
            f = T[i][pc]
            T[i] = [a - f * b for a, b in zip(T[i], prow)]
    if obj[pc] != 0:
        f = obj[pc]
        for j in range(len(obj)):
            obj[j] = obj[j] - f * prow[j]
    basis[pr] = pc


def _bland(T, obj, basis, allowed):
    """Run Bland's rule to optimality; returns None or the unbounded column."""
    last = len(obj) - 1
    while True:
        pc = next((j for j in allowed if obj[j] < 0), None)
        if pc is None:
            return None
        pr = None
        best = None
        for i in range(len(T)):
            if T[i][pc] > 0:
                ratio = T[i][last] / T[i][pc]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr is None:
            return pc
        _pivot(T, obj, basis, pr, pc)


def _simplex_standard(A, b, c):
    """Two-phase simplex for min c.x s.t. A x = b, x >= 0 over Fractions.

    Returns one of
        ("optimal", x, value)
        ("infeasible", farkas_y, A_snapshot, b_snapshot)
        ("unbounded", x, ray)
    Bland's rule is used throughout, so the computation is deterministic and
    terminates on exact rationals.
    """
    m = len(A)
    n = len(c)
    rows = [[Fraction(v) for v in A[i]] for i in range(m)]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    snapshot = tuple(tuple(r) for r in rows)
    snapshot_rhs = tuple(rhs)

    ncols = n + m
    T = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    # Phase 1: minimize the sum of artificials.
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = -sum(T[i][j] for i in range(m))
    obj[ncols] = -sum(rhs)
    unb = _bland(T, obj, basis, range(ncols))
    assert unb is None  # phase-1 objective is bounded below by zero
    phase1 = -obj[ncols]
    if phase1 > 0:
        y = tuple(Fraction(1) - obj[n + i] for i in range(m))
        return ("infeasible", y, snapshot, snapshot_rhs)

    # Drive artificials out of the basis; drop redundant rows.
    drop = []
    for i in range(len(T)):
        if basis[i] >= n:
            pc = next((j for j in range(n) if T[i][j] != 0), None)
            if pc is None:
                drop.append(i)
            else:
                _pivot(T, obj, basis, i, pc)
    for i in reversed(drop):
        del T[i]
        del basis[i]
    # Artificial columns are only needed for the Farkas certificate; from
    # here on every basic variable is original, so truncate the tableau.
    for i in range(len(T)):
        T[i] = T[i][:n] + [T[i][ncols]]

    # Phase 2 with the real objective.
    obj = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        cb = sum(c[basis[i]] * T[i][j] for i in range(len(T)))
        cj = c[j] if j < n else Fraction(0)
        obj[j] = cj - cb
    unb = _bland(T, obj, basis, range(n))
    x = [Fraction(0)] * n
    for i in range(len(T)):
        x[basis[i]] = T[i][n]
    if unb is not None:
        ray = [Fraction(0)] * n
        ray[unb] = Fraction(1)
        for i in range(len(T)):
            ray[basis[i]] = -T[i][unb]
        return ("unbounded", tuple(x), tuple(ray))
    value = -obj[n]
    return ("optimal", tuple(x), value)


def _to_standard(p):
    """Rewrite a bounded-variable LP as min c.x, A x = b, x >= 0.

    Returns (A, b, c, c0, subs) where subs reconstructs original variables:
    ("shift", j, l) -> x = l + x_j;  ("negshift", j, u) -> x = u - x_j;
    ("split", jp, jm) -> x = x_jp - x_jm.
    """
    n = len(p.objective)
    subs = []
    c = []
    ub_rows = []
    for i in range(n):
        l, u = p.lower[i], p.upper[i]
        if l is not None:
            j = len(c)
            c.append(p.objective[i])
            subs.append(("shift", j, l))
            if u is not None:
                ub_rows.append((j, u - l))
        elif u is not None:
            j = len(c)
            c.append(-p.objective[i])
            subs.append(("negshift", j, u))
        else:
            jp = len(c)
            c.append(p.objective[i])
            jm = len(c)
            c.append(-p.objective[i])
            subs.append(("split", jp, jm))
    slack0 = len(c)
    c.extend([Fraction(0)] * len(ub_rows))

    A = []
    b = []
    for k, row in enumerate(p.eq_matrix):
        new = [Fraction(0)] * len(c)
        rhs = p.eq_rhs[k]
        for i in range(n):
            a = row[i]
            if a == 0:
                continue
            kind = subs[i]
            if kind[0] == "shift":
                new[kind[1]] += a
                rhs -= a * kind[2]
            elif kind[0] == "negshift":
                new[kind[1]] -= a
                rhs -= a * kind[2]
            else:
                new[kind[1]] += a
                new[kind[2]] -= a
        A.append(new)
        b.append(rhs)
    for t, (j, cap) in enumerate(ub_rows):
        new = [Fraction(0)] * len(c)
        new[j] = Fraction(1)
        new[slack0 + t] = Fraction(1)
        A.append(new)
        b.append(cap)

    c0 = Fraction(0)
    for i in range(n):
        kind = subs[i]
        if kind[0] == "shift":
            c0 += p.objective[i] * kind[2]
        elif kind[0] == "negshift":
            c0 += p.objective[i] * kind[2]
    return A, b, c, c0, subs


def _from_standard(subs, x):
    out = []
    for kind in subs:
        if kind[0] == "shift":
            out.append(kind[2] + x[kind[1]])
        elif kind[0] == "negshift":
            out.append(kind[2] - x[kind[1]])
        else:
            out.append(x[kind[1]] - x[kind[2]])
    return tuple(out)


def _ray_from_standard(subs, d):
    out = []
    for kind in subs:
        if kind[0] == "shift":
            out.append(d[kind[1]])
        elif kind[0] == "negshift":
            out.append(-d[kind[1]])
        else:
            out.append(d[kind[1]] - d[kind[2]])
    return tuple(out)


def _check_feasible(p, x):
    for row, rhs in zip(p.eq_matrix, p.eq_rhs):
        if xm.dot(row, x) != rhs:
            return False
    for xi, l, u in zip(x, p.lower, p.upper):
        if l is not None and xi < l:
            return False
        if u is not None and xi > u:
            return False
    return True


def verify_farkas(certificate):
    """Check an infeasibility certificate by direct substitution."""
    y = certificate["farkas"]
    A = certificate["matrix"]
    b = certificate["rhs"]
    if not A:
        return False
    ncols = len(A[0])
    for j in range(ncols):
        if sum(y[i] * A[i][j] for i in range(len(A))) > 0:
            return False
    return sum(y[i] * b[i] for i in range(len(b))) > 0


def lp_solve(p: LPProblem) -> LPResult:
    """Solve an exact rational LP; the result is re-verified before return."""
    n = len(p.objective)
    for i in range(n):
        l, u = p.lower[i], p.upper[i]
        if l is not None and u is not None and l > u:
            # Trivial contradiction between the bounds of one variable.
            cert = {"kind": "bounds", "variable": i, "lower": l, "upper": u}
            return LPResult(status="infeasible", certificate=cert)
    if n == 0:
        if all(r == 0 for r in p.eq_rhs):
            return LPResult(status="optimal", optimum=Fraction(0), point=())
        bad = next(i for i, r in enumerate(p.eq_rhs) if r != 0)
        cert = {"kind": "empty", "row": bad}
        return LPResult(status="infeasible", certificate=cert)

    A, b, c, c0, subs = _to_standard(p)
    res = _simplex_standard(A, b, c)
    if res[0] == "infeasible":
        _, y, snapA, snapb = res
        cert = {"kind": "farkas", "farkas": y, "matrix": snapA, "rhs": snapb}
        assert verify_farkas(cert)
        return LPResult(status="infeasible", certificate=cert)
    if res[0] == "unbounded":
        _, xs, ds = res
        x = _from_standard(subs, xs)
        d = _ray_from_standard(subs, ds)
        assert _check_feasible(p, x)
        assert all(xm.dot(row, d) == 0 for row in p.eq_matrix)
        assert xm.dot(p.objective, d) < 0
        # The ray must point away from every finite bound it moves against.
        for di, l, u in zip(d, p.lower, p.upper):
            if di < 0:
                assert l is None
            if di > 0:
                assert u is None
        cert = {"kind": "ray", "point": x, "ray": d}
        return LPResult(status="unbounded", point=x, certificate=cert)
    _, xs, value = res
    x = _from_standard(subs, xs)
    opt = value + c0
    assert _check_feasible(p, x)
    assert xm.dot(p.objective, x) == opt
    return LPResult(status="optimal", optimum=opt, point=x)


def lp_minimize(objective, eq_matrix, eq_rhs, lower, upper):
    return lp_solve(LPProblem(tuple(objective), tuple(tuple(r) for r in eq_matrix),
                              tuple(eq_rhs), tuple(lower), tuple(upper)))


# ---------------------------------------------------------------------------
# Polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfSpace:
    """The region  <normal, y> + offset >= 0."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", _frac_vec(self.normal))
        object.__setattr__(self, "offset", _frac(self.offset))

    def value(self, y):
        return xm.dot(self.normal, y) + self.offset


def _h_feasibility_lp(halfspaces, dim, objective):
    """LP over {y : all half-spaces hold} with free y and slack variables."""
    F = len(halfspaces)
    nvars = dim + F
    rows = []
    rhs = []
    for k, h in enumerate(halfspaces):
        row = list(h.normal) + [Fraction(0)] * F
        row[dim + k] = Fraction(-1)
        rows.append(tuple(row))
        rhs.append(-h.offset)
    lower = [None] * dim + [Fraction(0)] * F
    upper = [None] * nvars
    obj = list(objective) + [Fraction(0)] * F
    return lp_minimize(obj, rows, rhs, lower, upper)


@dataclass(frozen=True)
class HPolytope:
    """Intersection of half-spaces  <normal, y> + offset >= 0.

    With expect_bounded=True the constructor certifies boundedness by solving
    one LP per coordinate direction and raises otherwise.
    """

    halfspaces: tuple
    dim: int
    expect_bounded: bool = True

    def __post_init__(self):
        hs = tuple(h if isinstance(h, HalfSpace) else HalfSpace(h[0], h[1])
                   for h in self.halfspaces)
        object.__setattr__(self, "halfspaces", hs)
        for h in hs:
            if len(h.normal) != self.dim:
                raise DomainError("half-space dimension mismatch")
        if self.expect_bounded:
            status = self._boundedness_status()
            if status == "unbounded":
                raise UnboundedPolytopeError("half-space system is unbounded")

    def _boundedness_status(self):
        for i in range(self.dim):
            for sign in (1, -1):
                obj = [Fraction(0)] * self.dim
                obj[i] = Fraction(sign)
                res = _h_feasibility_lp(self.halfspaces, self.dim, obj)
                if res.status == "infeasible":
                    return "empty"
                if res.status == "unbounded":
                    return "unbounded"
        return "bounded"

    def contains(self, y):
        y = _frac_vec(y)
        return all(h.value(y) >= 0 for h in self.halfspaces)


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite vertex list.

    With check_irredundant=True each stored point is certified extreme (not
    in the hull of the others) via one LP per point.
    """

    vertices: tuple
    check_irredundant: bool = True

    def __post_init__(self):
        vs = tuple(_frac_vec(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise DomainError("a vertex polytope needs at least one vertex")
        d = len(vs[0])
        if any(len(v) != d for v in vs):
            raise DomainError("vertex dimension mismatch")
        if len(set(vs)) != len(vs):
            raise DomainError("duplicate vertices")
        if self.check_irredundant:
            for i, v in enumerate(vs):
                others = vs[:i] + vs[i + 1:]
                if others and hull_membership(v, others):
                    raise DomainError("vertex %d lies in the hull of the others" % i)

    @property
    def dim(self):
        return len(self.vertices[0])

    def contains(self, y):
        return hull_membership(y, self.vertices)


def dual_description(h: HPolytope) -> VPolytope:
    """Exact vertex enumeration of a bounded nonempty H-polytope.

    Brute force: solve every d-subset of facet equalities and keep the
    feasible unique solutions.
    """
    d = h.dim
    res = _h_feasibility_lp(h.halfspaces, d, [Fraction(0)] * d)
    if res.status == "infeasible":
        raise EmptyPolytopeError("half-space system is empty")
    if not h.expect_bounded and h._boundedness_status() == "unbounded":
        raise UnboundedPolytopeError("half-space system is unbounded")
    verts = set()
    hs = h.halfspaces
    for subset in combinations(range(len(hs)), d):
        A = tuple(hs[k].normal for k in subset)
        if xm.rank(A) != d:
            continue
        b = tuple(-hs[k].offset for k in subset)
        y = xm.solve_linear(A, b)
        if y is None:
            continue
        if all(hh.value(y) >= 0 for hh in hs):
            verts.add(y)
    if not verts:
        raise EmptyPolytopeError("no vertices found; system has no extreme points")
    return VPolytope(tuple(sorted(verts)), check_irredundant=False)


def _normalize_halfspace(normal, offset):
    """Scale (normal, offset) to a primitive integer vector, orientation kept."""
    entries = list(normal) + [offset]
    denoms = 1
    for x in entries:
        denoms = denoms * x.denominator // gcd(denoms, x.denominator)
    ints = [int(x * denoms) for x in entries]
    g = xm.vec_gcd(ints)
    if g:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def v_to_h(p: VPolytope) -> HPolytope:
    """Facet description of a full-dimensional V-polytope.

    Every returned half-space is a genuine facet: it supports the polytope
    and touches a (d-1)-dimensional set of vertices.
    """
    verts = p.vertices
    d = p.dim
    if len(verts) < d + 1:
        raise DomainError("polytope is not full-dimensional")
    rel = tuple(xm.vec_sub(v, verts[0]) for v in verts[1:])
    if xm.rank(rel) != d:
        raise DomainError("polytope is not full-dimensional")
    facets = {}
    for subset in combinations(range(len(verts)), d):
        M = tuple(tuple(verts[k]) + (Fraction(1),) for k in subset)
        if xm.rank(M) != d:
            continue
        # One-dimensional kernel gives the hyperplane through the subset.
        kernel_vec = _rational_kernel_vector(M)
        if kernel_vec is None:
            continue
        normal, offset = kernel_vec[:-1], kernel_vec[-1]
        vals = [xm.dot(normal, v) + offset for v in verts]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            normal = tuple(-x for x in normal)
            offset = -offset
        else:
            continue
        n_i, c_i = _normalize_halfspace(_frac_vec(normal), _frac(offset))
        facets[(n_i, c_i)] = None
    hs = tuple(HalfSpace(_frac_vec(n), _frac(c)) for n, c in sorted(facets))
    return HPolytope(hs, d, expect_bounded=False)


def _rational_kernel_vector(M):
    """A nonzero kernel vector of M when the kernel is one-dimensional."""
    ncols = len(M[0])
    if xm.rank(M) != ncols - 1:
        return None
    # Solve with each column in turn forced to 1 until consistent.
    for free in range(ncols):
        rows = tuple(tuple(r[j] for j in range(ncols) if j != free) for r in M)
        rhs = tuple(-r[free] for r in M)
        sol = xm.solve_linear(rows, rhs)
        if sol is None:
            continue
        out = list(sol)
        out.insert(free, Fraction(1))
        return tuple(out)
    return None


def polar_dual(p: VPolytope) -> VPolytope:
    """Polar polytope {x : <x, c> + 1 >= 0 for every vertex c}.

    Requires the origin strictly inside p; an involution on such polytopes.
    """
    verts = p.vertices
    d = p.dim
    rel = tuple(xm.vec_sub(v, verts[0]) for v in verts[1:])
    full_dim = len(verts) >= d + 1 and xm.rank(rel) == d
    t_opt, lam = _interior_weight_lp(verts)
    if not full_dim or t_opt is None or t_opt <= 0:
        if t_opt is None or lam is None:
            detail = "origin is outside the affine hull"
        else:
            stuck = min(range(len(verts)), key=lambda i: lam[i])
            detail = "vertex %s carries no positive weight" % (verts[stuck],)
        raise DomainError("origin is not interior to the polytope: " + detail)
    hs = tuple(HalfSpace(v, Fraction(1)) for v in verts)
    return dual_description(HPolytope(hs, d, expect_bounded=False))


def _interior_weight_lp(verts):
    """max t s.t. sum lam_i v_i = 0, sum lam_i = 1, lam_i >= t >= 0.

    Substituting lam_i = mu_i + t with mu >= 0 keeps the system at d+1 rows.
    The upper bounds lam_i <= 1 are implied by the simplex constraints.
    """
    m = len(verts)
    d = len(verts[0])
    colsum = [sum(verts[i][c] for i in range(m)) for c in range(d)]
    rows = []
    rhs = []
    for c in range(d):
        rows.append(tuple(verts[i][c] for i in range(m)) + (colsum[c],))
        rhs.append(Fraction(0))
    rows.append(tuple([Fraction(1)] * m + [Fraction(m)]))
    rhs.append(Fraction(1))
    obj = [Fraction(0)] * m + [Fraction(-1)]  # maximize t
    res = lp_minimize(obj, rows, rhs, [Fraction(0)] * (m + 1), [None] * (m + 1))
    if res.status != "optimal":
        return None, None
    t = -res.optimum
    lam = tuple(res.point[i] + t for i in range(m))
    return t, lam


def hull_membership(x, points, include_origin=False):
    """Exact test x in conv(points), optionally conv(points + {0})."""
    x = _frac_vec(x)
    pts = tuple(_frac_vec(p) for p in points)
    if not pts:
        return include_origin and all(v == 0 for v in x)
    d = len(x)
    m = len(pts)
    nvars = m + (1 if include_origin else 0)
    rows = []
    rhs = []
    for coord in range(d):
        row = [pts[i][coord] for i in range(m)]
        if include_origin:
            row.append(Fraction(0))
        rows.append(tuple(row))
        rhs.append(x[coord])
    rows.append(tuple([Fraction(1)] * nvars))
    rhs.append(Fraction(1))
    res = lp_minimize([Fraction(0)] * nvars, rows, rhs,
                      [Fraction(0)] * nvars, [Fraction(1)] * nvars)
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone.

    Always carries generators (possibly the empty tuple, which is explicitly
    the zero cone); may additionally carry half-space normals <n, x> >= 0.
    If the generator description is unavailable (cone with lineality built
    from half-spaces) generators is None and the normals are authoritative.
    """

    dim: int
    generators: tuple | None
    normals: tuple | None = None

    def __post_init__(self):
        if self.generators is not None:
            object.__setattr__(self, "generators",
                               tuple(_frac_vec(g) for g in self.generators))
            for g in self.generators:
                if len(g) != self.dim:
                    raise DomainError("generator dimension mismatch")
        if self.normals is not None:
            object.__setattr__(self, "normals",
                               tuple(_frac_vec(n) for n in self.normals))
            for n in self.normals:
                if len(n) != self.dim:
                    raise DomainError("normal dimension mismatch")
        if self.generators is None and self.normals is None:
            raise DomainError("a cone needs generators or normals")


def cone_membership(x, cone: RationalCone, interior=False) -> bool:
    """Exact membership of x in the cone or its (full-dimensional) interior.

    The closed test is LP feasibility on nonnegative combinations; the open
    test maximizes a slack along an interior direction and asks for a
    strictly positive optimum.
    """
    x = _frac_vec(x)
    if len(x) != cone.dim:
        raise DomainError("point dimension mismatch")
    if cone.normals is not None and not interior:
        return all(xm.dot(n, x) >= 0 for n in cone.normals)
    if cone.normals is not None and interior and cone.generators is None:
        # Interior via strict inequalities; pairs +/-n force emptiness, which
        # is correct for cones that are not full-dimensional.
        return all(xm.dot(n, x) > 0 for n in cone.normals)
    gens = cone.generators
    if gens is None:
        raise DomainError("cone has no generator description")
    if not gens:
        return (not interior or cone.dim == 0) and all(v == 0 for v in x)
    m = len(gens)
    d = cone.dim
    if not interior:
        rows = tuple(tuple(gens[i][c] for i in range(m)) for c in range(d))
        res = lp_minimize([Fraction(0)] * m, rows, x,
                          [Fraction(0)] * m, [None] * m)
        return res.status == "optimal"
    if xm.rank(gens) != d:
        return False
    bary = tuple(sum(g[c] for g in gens) for c in range(d))
    # Variables: mu_1..mu_m, t; constraint sum mu g + t * bary = x; max t.
    rows = tuple(tuple(gens[i][c] for i in range(m)) + (bary[c],) for c in range(d))
    obj = [Fraction(0)] * m + [Fraction(-1)]
    res = lp_minimize(obj, rows, x, [Fraction(0)] * (m + 1), [None] * (m + 1))
    if res.status == "unbounded":
        return True
    return res.status == "optimal" and -res.optimum > 0


def _gram_dual_basis(basis):
    """Vectors beta_i in span(basis) with <beta_i, basis_j> = delta_ij."""
    k = len(basis)
    gram = tuple(tuple(xm.dot(basis[i], basis[j]) for j in range(k)) for i in range(k))
    ginv = xm.inverse(gram)
    return tuple(
        tuple(sum(ginv[i][j] * basis[j][c] for j in range(k)) for c in range(len(basis[0])))
        for i in range(k)
    )


def _rational_kernel_basis(rows, dim):
    """Basis of {x in Q^dim : <r, x> = 0 for all rows}."""
    out = []
    M = [list(_frac_vec(r)) for r in rows]
    # Row reduce and read off free columns.
    piv_cols = []
    r = 0
    for c in range(dim):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(dim) if c not in piv_cols]
    for fc in free:
        v = [Fraction(0)] * dim
        v[fc] = Fraction(1)
        for k, pc in enumerate(piv_cols):
            v[pc] = -M[k][fc]
        out.append(tuple(v))
    return out


def cone_facet_normals(generators, dim):
    """Half-space description of cone(generators), including span equalities.

    Returns normals n with <n, x> >= 0; for a cone that is not full
    dimensional the list contains +/- pairs cutting out its linear span, so
    the conjunction of the inequalities is exact in every dimension.
    """
    gens = tuple(_frac_vec(g) for g in generators)
    gens = tuple(g for g in gens if any(x != 0 for x in g))
    if not gens:
        normals = []
        for i in range(dim):
            e = [Fraction(0)] * dim
            e[i] = Fraction(1)
            normals.append(tuple(e))
            normals.append(tuple(-x for x in e))
        return tuple(normals)
    r = xm.rank(gens)
    if r == dim:
        return _pointed_facets(gens, dim)
    # Split off the span: equalities +/- h for h orthogonal to all generators,
    # plus facets computed inside span coordinates and lifted back.
    span_perp = _rational_kernel_basis(gens, dim)
    normals = []
    for h in span_perp:
        normals.append(h)
        normals.append(tuple(-x for x in h))
    # Independent spanning subset of the generators.
    basis = []
    for g in gens:
        if xm.rank(basis + [g]) > len(basis):
            basis.append(g)
    beta = _gram_dual_basis(basis)
    coords = [tuple(xm.dot(beta[i], g) for i in range(r)) for g in gens]
    for mvec in _pointed_facets(tuple(coords), r):
        lifted = tuple(sum(mvec[i] * beta[i][c] for i in range(r))
                       for c in range(dim))
        normals.append(lifted)
    return tuple(normals)


def _pointed_facets(gens, dim):
    """Facet normals of a full-dimensional cone by (dim-1)-subset solving."""
    if dim == 0:
        return ()
    if dim == 1:
        signs = {1 if g[0] > 0 else -1 for g in gens if g[0] != 0}
        if signs == {1}:
            return ((Fraction(1),),)
        if signs == {-1}:
            return ((Fraction(-1),),)
        return ()  # the whole line: no facets
    normals = {}
    for subset in combinations(range(len(gens)), dim - 1):
        rows = tuple(gens[k] for k in subset)
        if xm.rank(rows) != dim - 1:
            continue
        kernel = _rational_kernel_basis(rows, dim)
        if len(kernel) != 1:
            continue
        h = kernel[0]
        vals = [xm.dot(h, g) for g in gens]
        if all(v >= 0 for v in vals):
            key = _primitive_direction(h)
            normals[key] = None
        elif all(v <= 0 for v in vals):
            key = _primitive_direction(tuple(-x for x in h))
            normals[key] = None
    return tuple(_frac_vec(n) for n in sorted(normals))


def _primitive_direction(v):
    denoms = 1
    for x in v:
        denoms = denoms * x.denominator // gcd(denoms, x.denominator)
    ints = [int(x * denoms) for x in v]
    g = xm.vec_gcd(ints)
    if g:
        ints = [x // g for x in ints]
    return tuple(ints)


def cone_extreme_rays(normals, dim):
    """Extreme rays of {x : <n, x> >= 0}, primitive and sorted.

    Correct for pointed cones of any dimension (the normal list must cut out
    the span via +/- pairs when the cone is lower dimensional).  For cones
    with lineality this enumeration misses interior generators, so callers
    check pointedness first.
    """
    rays = {}
    normals = tuple(_frac_vec(n) for n in normals)
    if not normals:
        raise DomainError("a full space has no extreme rays")
    for subset in combinations(range(len(normals)), dim - 1):
        rows = tuple(normals[k] for k in subset)
        if xm.rank(rows) != dim - 1:
            continue
        kernel = _rational_kernel_basis(rows, dim)
        if len(kernel) != 1:
            continue
        h = kernel[0]
        for cand in (h, tuple(-x for x in h)):
            if all(xm.dot(n, cand) >= 0 for n in normals):
                rays[_primitive_direction(cand)] = None
    return tuple(sorted(rays))
