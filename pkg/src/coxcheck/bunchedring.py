"""Graded Cox-ring presentations and their Gale-dual (bunch) geometry.

A presentation consists of the degree matrix (one class-group degree per
generator), the relation degrees, and optionally the relation polynomials.
From a polarizing class inside the moving cone the canonical ambient fan is
reconstructed chamber-wise; the bunch, Picard lattice, anticanonical class,
local factoriality and the units criterion all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import exactmath as xm
from . import fans
from . import groebner as gb
from . import polyhedra as ph
from .errors import DomainError, InputError, NonGenericPolarizationError


@dataclass(frozen=True)
class GradedCoxPresentation:
    """Generator degrees in Z^rho plus relation degrees and optional
    relation polynomials (in variables T1..Tm).

    When polynomials are supplied, each must be homogeneous of exactly its
    declared degree; inconsistent inputs are rejected outright.
    """

    degrees: tuple                  # one degree vector per generator
    relation_degrees: tuple = ()
    relation_polys: tuple | None = None

    def __post_init__(self):
        degs = tuple(xm.as_int_vector(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        if not degs:
            raise InputError("a presentation needs at least one generator")
        rho = len(degs[0])
        if any(len(d) != rho for d in degs):
            raise InputError("generator degrees have mixed lengths")
        rel = tuple(xm.as_int_vector(d) for d in self.relation_degrees)
        object.__setattr__(self, "relation_degrees", rel)
        if any(len(d) != rho for d in rel):
            raise InputError("relation degrees have mixed lengths")
        if len(rel) >= len(degs):
            raise InputError("need fewer relations than generators")
        if self.relation_polys is not None:
            polys = tuple(self.relation_polys)
            object.__setattr__(self, "relation_polys", polys)
            if len(polys) != len(rel):
                raise InputError("relation polynomial count differs from degrees")
            for j, p in enumerate(polys):
                if not isinstance(p, gb.Polynomial) or p.nvars != len(degs):
                    raise InputError("relation %d is not a polynomial in T1..T%d"
                                     % (j + 1, len(degs)))
                if p.is_zero():
                    raise InputError("relation %d is the zero polynomial" % (j + 1,))
                found = gb.graded_degree(p, degs)
                if found != tuple(rel[j]):
                    raise InputError(
                        "relation %d is not homogeneous of its declared degree"
                        " (declared %s, found %s)" % (j + 1, rel[j], found))

    @property
    def m(self):
        return len(self.degrees)

    @property
    def rho(self):
        return len(self.degrees[0])

    @property
    def r(self):
        return len(self.relation_degrees)

    @property
    def ambient_dim(self):
        return self.m - self.rho


@dataclass(frozen=True)
class Bunch:
    """A collection of Gale-dual cones tau_J, J the stored index sets.

    assumed_maximal records that the radical filter could not be evaluated
    (relations without polynomials) and the full chamber collection is used.
    """

    rho: int
    members: tuple                 # tuple of index-set tuples
    cones: tuple                   # generator tuples, aligned with members
    assumed_maximal: bool = False


def moving_cone(p: GradedCoxPresentation) -> ph.RationalCone:
    """Intersection over j of cone(degrees without the j-th one).

    Returned with an exact half-space description (facets of each deleted
    cone, including span equalities) and, when the intersection is pointed,
    with its extreme rays as generators.
    """
    rho = p.rho
    normals = {}
    for j in range(p.m):
        rest = tuple(p.degrees[i] for i in range(p.m) if i != j)
        for n in ph.cone_facet_normals(rest, rho):
            normals[tuple(n)] = None
    nlist = tuple(sorted(normals))
    lineality = ph._rational_kernel_basis(nlist, rho) if nlist else [
        tuple(Fraction(1) if k == i else Fraction(0) for k in range(rho))
        for i in range(rho)]
    if lineality:
        return ph.RationalCone(rho, None, nlist)
    gens = ph.cone_extreme_rays(nlist, rho)
    return ph.RationalCone(rho, gens, nlist)


def _chamber_members(p: GradedCoxPresentation, L):
    """Index sets J with |J| = rho and L strictly inside cone(tau_J).

    Also reports whether L touched the boundary of some full-dimensional
    tau_J, which flags a GIT chamber wall.
    """
    L = xm.as_int_vector(L)
    if len(L) != p.rho:
        raise DomainError("polarizing class has the wrong length")
    mov = moving_cone(p)
    if not ph.cone_membership(L, mov, interior=True):
        raise DomainError("polarizing class is not interior to the moving cone")
    members = []
    on_wall = []
    for J in combinations(range(p.m), p.rho):
        gens = tuple(p.degrees[i] for i in J)
        cone = ph.RationalCone(p.rho, gens)
        if ph.cone_membership(L, cone, interior=True):
            members.append(J)
        elif ph.cone_membership(L, cone, interior=False) and xm.rank(gens) == p.rho:
            on_wall.append(J)
    return members, on_wall


def sigma_bunch(p: GradedCoxPresentation, L) -> Bunch:
    """The chamber collection of Gale-dual cones containing L in their
    interior (the Gale-dual description of the ambient fan)."""
    members, on_wall = _chamber_members(p, L)
    if not members:
        raise NonGenericPolarizationError(
            "no chamber contains the polarizing class strictly; it lies on "
            "walls %s" % (on_wall,) if on_wall else
            "no full-dimensional chamber contains the polarizing class")
    cones = tuple(tuple(p.degrees[i] for i in J) for J in members)
    return Bunch(p.rho, tuple(members), cones)


def ambient_fan(p: GradedCoxPresentation, L) -> fans.Fan:
    """Reconstruct the canonical ambient fan from degrees and polarization.

    Maximal cones are the complements of the chamber index sets; the result
    must be a smooth complete fan, otherwise the polarization is declared
    non-generic (or the degree data inconsistent).
    """
    members, on_wall = _chamber_members(p, L)
    d = p.ambient_dim
    if d < 1:
        raise DomainError("rays fail to span: ambient dimension would be %d" % d)
    Q = tuple(p.degrees)
    P_rows = fans.gale_dual(tuple(zip(*Q)))  # kernel of Q as rows = ray matrix
    rays = tuple(zip(*P_rows))               # one ray per generator
    cones = tuple(tuple(i for i in range(p.m) if i not in set(J)) for J in members)
    try:
        fan = fans.Fan(d, rays, cones)
    except DomainError as exc:
        if on_wall:
            raise NonGenericPolarizationError(
                "polarization lies on a chamber wall (boundary index sets %s)"
                % (on_wall,)) from exc
        raise DomainError("degree data does not reconstruct a fan: %s" % (exc,)) from exc
    checks = fans.fan_checks(fan)
    if not (checks.is_smooth and checks.is_complete):
        if on_wall:
            raise NonGenericPolarizationError(
                "polarization lies on a chamber wall; reconstructed cones do "
                "not form a smooth complete fan")
        raise DomainError(
            "reconstructed cone collection is not a smooth complete fan "
            "(smooth=%s, complete=%s)" % (checks.is_smooth, checks.is_complete))
    return fan


def phi_bunch(p: GradedCoxPresentation, L) -> Bunch:
    """Filter the chamber collection by the radical condition.

    tau_J survives when prod_{j in J} T_j does not lie in the radical of the
    ideal generated by prod_{j not in J} T_j together with the relations.
    With no relations this is a pure monomial-divisibility statement and the
    filter keeps everything; with relation degrees but no polynomials the
    filter cannot run and the result is flagged assumed_maximal.
    """
    return _phi_filter(p, sigma_bunch(p, L))


def _phi_filter(p: GradedCoxPresentation, sigma: Bunch) -> Bunch:
    if p.r == 0:
        # Radical of a squarefree monomial prod_{j not in J} T_j contains a
        # monomial in disjoint variables only if the complement is empty,
        # which cannot happen since |J| = rho < m.
        return Bunch(p.rho, sigma.members, sigma.cones, assumed_maximal=False)
    if p.relation_polys is None:
        return Bunch(p.rho, sigma.members, sigma.cones, assumed_maximal=True)
    keep = []
    for J in sigma.members:
        inside = gb.Polynomial(p.m, {tuple(1 if i in J else 0 for i in range(p.m)): Fraction(1)})
        outside = gb.Polynomial(p.m, {tuple(0 if i in J else 1 for i in range(p.m)): Fraction(1)})
        gens = [outside] + list(p.relation_polys)
        if not gb.radical_membership(inside, gens):
            keep.append(J)
    keep = tuple(keep)
    cones = tuple(tuple(p.degrees[i] for i in J) for J in keep)
    return Bunch(p.rho, keep, cones, assumed_maximal=False)


def bunch_from_fan(p: GradedCoxPresentation, fan: fans.Fan) -> Bunch:
    """The chamber collection read off an explicit ambient fan: complements
    of the maximal cones' index sets."""
    if fan.n_rays != p.m:
        raise InputError("fan ray count differs from generator count")
    members = tuple(tuple(i for i in range(p.m) if i not in set(c))
                    for c in fan.max_cones)
    cones = tuple(tuple(p.degrees[i] for i in J) for J in members)
    return Bunch(p.rho, members, cones)


def picard_group(b: Bunch) -> xm.LatticeBasis:
    """Intersection of the integer spans of the bunch cones."""
    if not b.members:
        raise DomainError("empty bunch has no Picard lattice")
    result = None
    for gens in b.cones:
        lattice = xm.LatticeBasis.from_generators(b.rho, gens)
        result = lattice if result is None else xm.lattice_intersection(result, lattice)
    return result


def anticanonical_class(p: GradedCoxPresentation):
    """Sum of the generator degrees minus the sum of the relation degrees."""
    total = [0] * p.rho
    for d in p.degrees:
        for k in range(p.rho):
            total[k] += d[k]
    for d in p.relation_degrees:
        for k in range(p.rho):
            total[k] -= d[k]
    return tuple(total)


def is_locally_factorial(b: Bunch, rho) -> bool:
    """True iff every bunch cone spans the full integer lattice Z^rho."""
    for gens in b.cones:
        lattice = xm.LatticeBasis.from_generators(rho, gens)
        if xm.lattice_index(lattice) != 1:
            return False
    return True


def units_condition_sufficient(p: GradedCoxPresentation) -> bool:
    """Sufficient criterion for the graded units being trivial: no generator
    degree is zero and the cone spanned by all generator degrees is pointed.

    Pointedness is decided by LP: a nonzero nonnegative combination of the
    degrees summing to zero exists iff the cone contains a line.
    """
    zero = (0,) * p.rho
    if any(tuple(d) == zero for d in p.degrees):
        return False
    m = p.m
    rows = [tuple(p.degrees[i][k] for i in range(m)) for k in range(p.rho)]
    rows.append(tuple(Fraction(1) for _ in range(m)))
    rhs = [Fraction(0)] * p.rho + [Fraction(1)]
    res = ph.lp_minimize([Fraction(0)] * m, rows, rhs,
                         [Fraction(0)] * m, [None] * m)
    return res.status == "infeasible"
