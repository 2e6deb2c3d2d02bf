"""Lattice fans, Gale duality, moment polytopes and Cartier data.

A fan is stored as a primitive integer ray matrix (one ray per column,
exposed here as a tuple of ray vectors) together with the index sets of its
maximal cones.  All maximal cones must be full dimensional and the rays must
span the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import exactmath as xm
from . import polyhedra as ph
from .errors import DomainError


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(xm.as_int_vector(r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        for r in rays:
            if len(r) != self.dim:
                raise DomainError("ray dimension differs from fan dimension")
            if not xm.is_primitive(r):
                raise DomainError("ray %s is not primitive; inputs are rejected,"
                                  " not normalized" % (r,))
        if len(set(rays)) != len(rays):
            raise DomainError("duplicate rays")
        if xm.rank(rays) != self.dim:
            raise DomainError("rays fail to span the ambient space")
        cones = []
        for cone in self.max_cones:
            idx = tuple(sorted(set(int(i) for i in cone)))
            if len(idx) != len(tuple(cone)):
                raise DomainError("repeated ray index inside a maximal cone")
            if not idx or idx[0] < 0 or idx[-1] >= len(rays):
                raise DomainError("ray index out of range in maximal cone")
            if xm.rank(tuple(rays[i] for i in idx)) != self.dim:
                raise DomainError("maximal cone %s is not full dimensional" % (idx,))
            cones.append(idx)
        cones = tuple(sorted(set(cones)))
        if len(cones) != len(self.max_cones):
            raise DomainError("duplicate maximal cones")
        for a in cones:
            for b in cones:
                if a != b and set(a) <= set(b):
                    raise DomainError("maximal cone %s is contained in %s" % (a, b))
        used = set(i for c in cones for i in c)
        if used != set(range(len(rays))):
            raise DomainError("every ray must appear in some maximal cone")
        object.__setattr__(self, "max_cones", cones)

    @property
    def n_rays(self):
        return len(self.rays)

    def cone_rays(self, cone_index):
        return tuple(self.rays[i] for i in self.max_cones[cone_index])


@dataclass(frozen=True)
class WeightedRays:
    """Per-ray rational coefficients a_v with 0 < a_v <= 1."""

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(xm.check_entry(v)) for v in self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if not (0 < v <= 1):
                raise DomainError("weight %s lies outside (0, 1]" % (v,))

    @classmethod
    def ones(cls, m):
        return cls(tuple(Fraction(1) for _ in range(m)))


@dataclass(frozen=True)
class VectorConfiguration:
    """A finite multi-set of rational vectors (order carries multiplicity)."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(Fraction(xm.check_entry(x)) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if vecs and any(len(v) != len(vecs[0]) for v in vecs):
            raise DomainError("vector dimension mismatch")


@dataclass(frozen=True)
class FanChecks:
    is_smooth: bool
    is_simplicial: bool
    is_complete: bool


def coefficients(a, m):
    """Accept a WeightedRays or any sequence of exact numbers."""
    vals = a.values if isinstance(a, WeightedRays) else tuple(a)
    vals = tuple(Fraction(xm.check_entry(v)) for v in vals)
    if len(vals) != m:
        raise DomainError("expected %d ray coefficients, got %d" % (m, len(vals)))
    return vals


def gale_dual(P):
    """Gale dual degree matrix of a spanning ray matrix.

    P has the rays as columns.  The result Q has one row per generator of the
    saturated integer kernel of P, normalized by Hermite form so the output
    is deterministic; its columns are the divisor classes of the rays.  Any
    integer relation among the columns of P corresponds to a linear form on
    the columns of Q and conversely.
    """
    P = xm.as_int_matrix(P)
    if not P or not P[0]:
        raise DomainError("ray matrix must be nonempty")
    d = len(P)
    if xm.rank(P) != d:
        raise DomainError("rays fail to span; Gale dual undefined")
    K = xm.integer_kernel(P)
    return tuple(K.vectors)


def fan_from_rays_and_cones(rays, cones):
    d = len(rays[0]) if rays else 0
    return Fan(d, tuple(rays), tuple(cones))


def _cone_facet_keys(f: Fan, cone_index):
    """Facets of a maximal cone as frozensets of the ray indices lying on them."""
    idx = f.max_cones[cone_index]
    d = f.dim
    if len(idx) == d:
        return [frozenset(idx) - {i} for i in idx]
    gens = tuple(f.rays[i] for i in idx)
    keys = []
    for n in ph.cone_facet_normals(gens, d):
        on = frozenset(i for i in idx if xm.dot(n, f.rays[i]) == 0)
        keys.append(on)
    return keys


def fan_checks(f: Fan) -> FanChecks:
    """Smoothness, simpliciality and completeness of a fan.

    Complete means: every facet of a maximal cone is shared by exactly two
    maximal cones and the facet-adjacency graph is connected.  This is the
    standard criterion for pure full-dimensional fans.
    """
    simplicial = all(len(c) == f.dim for c in f.max_cones)
    smooth = simplicial and all(
        abs(xm.det(f.cone_rays(i))) == 1 for i in range(len(f.max_cones))
    )
    facet_count = {}
    adjacency = {i: set() for i in range(len(f.max_cones))}
    for ci in range(len(f.max_cones)):
        for key in _cone_facet_keys(f, ci):
            facet_count.setdefault(key, []).append(ci)
    complete = all(len(v) == 2 for v in facet_count.values())
    if complete:
        for pair in facet_count.values():
            adjacency[pair[0]].add(pair[1])
            adjacency[pair[1]].add(pair[0])
        seen = set()
        stack = [0]
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            stack.extend(adjacency[c] - seen)
        complete = len(seen) == len(f.max_cones)
    return FanChecks(is_smooth=smooth, is_simplicial=simplicial, is_complete=complete)


def moment_polytope(f: Fan, a) -> ph.HPolytope:
    """The polytope cut out by <ray_i, y> + a_i >= 0 for all rays.

    Requires a complete fan; completeness makes the recession cone trivial,
    so the result is bounded for every coefficient vector.
    """
    vals = coefficients(a, f.n_rays)
    if not fan_checks(f).is_complete:
        raise DomainError("moment polytope requires a complete fan")
    hs = tuple(ph.HalfSpace(tuple(Fraction(x) for x in r), vals[i])
               for i, r in enumerate(f.rays))
    return ph.HPolytope(hs, f.dim, expect_bounded=True)


def cartier_data(f: Fan, a) -> dict:
    """Per maximal cone, the unique C with <w, C> = -a_w on the cone's rays.

    Keys are positions into f.max_cones.  Each solution is re-checked by
    substitution before being returned.
    """
    vals = coefficients(a, f.n_rays)
    out = {}
    for ci, idx in enumerate(f.max_cones):
        if len(idx) != f.dim:
            raise DomainError("Cartier data needs simplicial maximal cones")
        rows = tuple(f.rays[i] for i in idx)
        rhs = tuple(-vals[i] for i in idx)
        C = xm.solve_linear(rows, rhs)
        if C is None:
            raise DomainError("singular ray matrix in cone %d" % ci)
        for i in idx:
            assert xm.dot(f.rays[i], C) + vals[i] == 0
        out[ci] = C
    return out


def is_ample(f: Fan, a) -> bool:
    """Strict convexity of the support function of sum a_i D_i.

    True iff <v, C_sigma> + a_v > 0 for every maximal cone sigma and every
    ray v outside sigma.  The verdict depends only on the divisor class of
    the coefficient vector.
    """
    vals = coefficients(a, f.n_rays)
    cd = cartier_data(f, vals)
    for ci, idx in enumerate(f.max_cones):
        inside = set(idx)
        C = cd[ci]
        for i in range(f.n_rays):
            if i in inside:
                continue
            if xm.dot(f.rays[i], C) + vals[i] <= 0:
                return False
    return True


def normal_fan(p: ph.VPolytope) -> Fan:
    """Inner normal fan of a full-dimensional polytope.

    Rays are the primitive facet normals; the maximal cone at a vertex is
    spanned by the normals of the facets through it.  For an ample pair the
    round trip normal_fan(moment_polytope(f, a)) == f holds.
    """
    h = ph.v_to_h(p)
    d = p.dim
    rays = []
    for hs in h.halfspaces:
        rays.append(xm.primitive_part(_clear_denominators(hs.normal)))
    cones = []
    for v in p.vertices:
        active = tuple(k for k, hs in enumerate(h.halfspaces) if hs.value(v) == 0)
        cones.append(active)
    return Fan(d, tuple(rays), tuple(cones))


def _clear_denominators(v):
    denoms = 1
    for x in v:
        denoms = denoms * x.denominator // gcd(denoms, x.denominator)
    return tuple(int(x * denoms) for x in v)


def facet_neighbors(f: Fan, cone_index) -> dict:
    """For each ray of a simplicial cone, the unique maximal cone across the
    opposite facet (which does not contain that ray)."""
    idx = f.max_cones[cone_index]
    if len(idx) != f.dim:
        raise DomainError("facet neighbors need a simplicial cone")
    out = {}
    for i in idx:
        rest = set(idx) - {i}
        matches = [cj for cj, other in enumerate(f.max_cones)
                   if cj != cone_index and rest <= set(other)]
        if len(matches) != 1:
            raise DomainError(
                "facet %s is not shared by exactly two maximal cones; fan is"
                " not complete" % (sorted(rest),))
        out[i] = matches[0]
    return out


def weighted_homogenisation(f: Fan, a):
    """Append the weight as an extra coordinate and adjoin a vertical vector.

    Returns the configuration {(v, a_v)} + {(0,..,0,1)} in dimension d+1 and
    its Gale dual {v_down} + {-sum a_v v_down}; the pair is verified to be an
    exact Gale-dual pair before being returned.
    """
    vals = coefficients(a, f.n_rays)
    if not all(0 < v <= 1 for v in vals):
        raise DomainError("weighted homogenisation expects weights in (0, 1]")
    lifted = [tuple(Fraction(x) for x in r) + (vals[i],) for i, r in enumerate(f.rays)]
    lifted.append(tuple(Fraction(0) for _ in range(f.dim)) + (Fraction(1),))
    Q = gale_dual(tuple(zip(*f.rays)))
    cols = list(zip(*Q))
    canonical = tuple(-sum(vals[i] * cols[i][k] for i in range(f.n_rays))
                      for k in range(len(Q)))
    down = [tuple(Fraction(x) for x in c) for c in cols]
    down.append(canonical)
    _verify_gale_pair(lifted, down)
    return VectorConfiguration(tuple(lifted)), VectorConfiguration(tuple(down))


def _verify_gale_pair(V, W):
    """Exactness check: sum_i V_i W_i^T = 0 and ranks add to the length."""
    m = len(V)
    assert len(W) == m
    dv = len(V[0])
    dw = len(W[0])
    for r in range(dv):
        for c in range(dw):
            s = sum(V[i][r] * W[i][c] for i in range(m))
            if s != 0:
                raise DomainError("configurations are not Gale dual (pairing)")
    if xm.rank(V) + xm.rank(W) != m:
        raise DomainError("configurations are not Gale dual (rank)")
