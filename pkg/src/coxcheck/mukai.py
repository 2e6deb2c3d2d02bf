"""Hypothesis checking and the Mukai-inequality certificate pipeline.

Given a graded Cox presentation (plus an explicit ambient fan or one
reconstructed from the degrees), this module checks every input hypothesis,
builds a low-coefficient anticanonical representative, evaluates the
per-cone index bounds with their extracting linear forms, produces a
barycentric relation on the Cartier data, and assembles everything into a
report whose numeric claims are re-verifiable by substitution alone.

A hypothesis that fails is a verdict, not an error.  A *proven* step that
fails (the coefficient-sum bound, an index bound, divisibility, the final
inequality, the equality-case recognition) is recorded as a theorem
contradiction: the pipeline never repairs such a failure silently.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import bunchedring as br
from . import exactmath as xm
from . import fans
from . import polyhedra as ph
from .errors import CoxcheckError, DomainError, InputError

SCHEMA = "coxcheck-report-1"


class TheoremContradiction(CoxcheckError):
    """A step the theory proves must succeed has failed on this input."""


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    passed: bool | None          # None = not evaluated (earlier failure)
    mode: str = "verified"       # "verified" | "assumed" | "skipped"
    details: str = ""


@dataclass(frozen=True)
class ConstructionInput:
    """A presentation, an optional explicit ambient fan, and an optional
    ray-wise boundary divisor.

    With an explicit fan the degree data must be an exact Gale dual of the
    ray matrix (same saturated relation lattice); inconsistent pairs are
    rejected.
    """

    presentation: br.GradedCoxPresentation
    fan: fans.Fan | None = None
    delta_ray_coeffs: tuple | None = None
    name: str | None = None

    def __post_init__(self):
        p = self.presentation
        if self.fan is not None:
            f = self.fan
            if f.n_rays != p.m:
                raise InputError("fan has %d rays but presentation has %d generators"
                                 % (f.n_rays, p.m))
            if f.dim != p.ambient_dim:
                raise InputError("fan dimension %d does not match m - rho = %d"
                                 % (f.dim, p.ambient_dim))
            ray_matrix = tuple(zip(*f.rays))
            kernel = xm.integer_kernel(ray_matrix)
            degree_lattice = xm.LatticeBasis.from_generators(p.m, tuple(zip(*p.degrees)))
            if not xm.lattices_equal(kernel, degree_lattice):
                raise InputError("degree matrix is not a Gale dual of the fan's rays")
        if self.delta_ray_coeffs is not None:
            delta = xm.as_int_vector(self.delta_ray_coeffs)
            object.__setattr__(self, "delta_ray_coeffs", delta)
            if len(delta) != p.m:
                raise InputError("delta needs one integer coefficient per ray")


@dataclass(frozen=True)
class ExtractionForm:
    """The linear form attached to a maximal cone and an off-cone ray.

    values holds the form evaluated on every generator degree: 1 on the
    chosen ray's class, the expansion coefficients on the cone's ray
    classes, 0 elsewhere.  anticanonical_value is the form applied to the
    anticanonical class.
    """

    cone_index: int
    ray_index: int
    form: tuple
    values: tuple
    anticanonical_value: Fraction


@dataclass
class MukaiReport:
    """Full certificate chain; every numeric claim is re-checkable from the
    stored witnesses by substitution."""

    name: str | None
    overall: str
    quantities: dict
    checklist: list
    degrees: tuple
    relation_degrees: tuple
    anticanonical: tuple
    rays: tuple | None = None
    max_cones: tuple | None = None
    picard_basis: tuple | None = None
    picard_path: str | None = None
    phi_members: tuple | None = None
    fano_index: int | None = None
    representative: dict | None = None
    cartier: list | None = None
    bounds: list | None = None
    min_bound: Fraction | None = None
    weights: tuple | None = None
    chain: dict | None = None
    inequality: dict | None = None
    gamma: Fraction | None = None
    equality_factors: tuple | None = None
    equality_partition: dict | None = None
    contradictions: list = field(default_factory=list)

    def to_json_dict(self):
        from .cli import report_to_json  # serialization lives with the CLI
        return report_to_json(self)


# ---------------------------------------------------------------------------
# Individual operations
# ---------------------------------------------------------------------------

def degree_not_small(delta, p: br.GradedCoxPresentation) -> bool:
    """True unless delta lies in conv(0, degrees) with conv(degrees) removed.

    Degrees inside that half-open region admit representatives with
    coefficient sum below one, which breaks the coefficient-sum bound.
    """
    delta = xm.as_int_vector(delta)
    degs = tuple(p.degrees)
    in_with_origin = ph.hull_membership(delta, degs, include_origin=True)
    in_without = ph.hull_membership(delta, degs, include_origin=False)
    return not (in_with_origin and not in_without)


def fano_index(L, pic: xm.LatticeBasis) -> int:
    """Largest k such that L = k*H for some H in the Picard lattice."""
    return xm.divisibility_index(pic, L)


def low_coefficient_representative(c: ConstructionInput):
    """Anticanonical representative a in (0,1]^m with sum a_i <= m - r.

    Returns (WeightedRays, coefficient_sum).  Raises TheoremContradiction
    when no such representative exists, since the hypotheses guarantee one.
    """
    ctx = _prepare(c)
    if not ctx.hypotheses_pass:
        raise DomainError("construction hypotheses fail; run check_construction")
    a, total, flags = _representative(ctx.p, ctx.L)
    if flags:
        raise TheoremContradiction("; ".join(flags))
    return fans.WeightedRays(a), total


def _representative(p, L):
    """LP search for the representative; returns (a, sum, contradiction_flags)."""
    m, r = p.m, p.r
    bound = Fraction(m - r)
    rows = [tuple(p.degrees[i][k] for i in range(m)) for k in range(p.rho)]
    rhs = [Fraction(x) for x in L]
    ones = [Fraction(1)] * m
    res = ph.lp_minimize(ones, rows, rhs, [Fraction(0)] * m, [Fraction(1)] * m)
    if res.status != "optimal":
        return None, None, ["anticanonical class admits no representative with "
                            "coefficients in [0,1]; the half-open box is empty"]
    flags = []
    a = res.point
    total = sum(a)
    if total > bound:
        flags.append("minimal coefficient sum %s exceeds the proven bound %s"
                     % (total, bound))
    if all(x > 0 for x in a):
        return a, total, flags
    # Zero coefficients: maximize the smallest coordinate subject to the sum
    # staying within the bound, then take the largest step toward that point
    # keeping the sum within the bound (here: the point itself).
    nv = m + 1
    rows2 = [row + (Fraction(0),) for row in rows]
    rhs2 = list(rhs)
    for i in range(m):
        grow = [Fraction(0)] * nv
        grow[i] = Fraction(1)
        grow[m] = Fraction(-1)
        rows2.append(tuple(grow))
        rhs2.append(Fraction(0))
    # slack rows need explicit slack variables: y_i - t - s_i = 0, s_i >= 0
    nv2 = nv + m
    rows3 = []
    for row in rows2[:p.rho]:
        rows3.append(tuple(row) + (Fraction(0),) * m)
    for i in range(m):
        row = [Fraction(0)] * nv2
        row[i] = Fraction(1)
        row[m] = Fraction(-1)
        row[nv + i] = Fraction(-1)
        rows3.append(tuple(row))
    # sum constraint with its own slack
    nv3 = nv2 + 1
    rows4 = [row + (Fraction(0),) for row in rows3]
    sum_row = [Fraction(1)] * m + [Fraction(0)] * (1 + m) + [Fraction(1)]
    rows4.append(tuple(sum_row))
    rhs4 = list(rhs) + [Fraction(0)] * m + [bound]
    obj = [Fraction(0)] * nv3
    obj[m] = Fraction(-1)  # maximize t
    lower = [Fraction(0)] * nv3
    upper = [Fraction(1)] * m + [Fraction(1)] + [None] * (m + 1)
    res2 = ph.lp_minimize(obj, rows4, rhs4, lower, upper)
    if res2.status != "optimal" or -res2.optimum <= 0:
        flags.append("no strictly positive representative exists with the "
                     "coefficient sum within %s" % (bound,))
        return a, total, flags
    z = res2.point[:m]
    total_z = sum(z)
    assert all(x > 0 for x in z) and total_z <= bound
    return z, total_z, flags


def index_bounds(f: fans.Fan, a):
    """All values <v, C_sigma> + a_v over maximal cones sigma and rays v not
    in sigma, and their minimum.  Values must be strictly positive, which is
    exactly ampleness of the weighted divisor."""
    vals = fans.coefficients(a, f.n_rays)
    cd = fans.cartier_data(f, vals)
    out = {}
    for ci, idx in enumerate(f.max_cones):
        inside = set(idx)
        for v in range(f.n_rays):
            if v in inside:
                continue
            value = xm.dot(f.rays[v], cd[ci]) + vals[v]
            if value <= 0:
                raise DomainError("value at cone %d, ray %d is %s <= 0: the "
                                  "divisor is not ample" % (ci, v, value))
            out[(ci, v)] = value
    return out, min(out.values())


def extraction_form(f: fans.Fan, cone_index: int, ray_index: int,
                    degrees=None, anticanonical=None) -> ExtractionForm:
    """Linear form on the class group extracting one coefficient of the
    Gale-dual expansion of the anticanonical class over a maximal cone.

    Solves v + sum_w lambda_w w = 0 over the cone's rays, then finds the
    form taking value 1 on the class of v, lambda_w on the class of w, and 0
    on every other generator class.
    """
    idx = f.max_cones[cone_index]
    if ray_index in idx:
        raise DomainError("ray %d lies in cone %d" % (ray_index, cone_index))
    if len(idx) != f.dim:
        raise DomainError("extraction forms need a simplicial cone")
    if degrees is None:
        degrees = tuple(zip(*fans.gale_dual(f.rays)))
    if anticanonical is None:
        anticanonical = tuple(sum(q[k] for q in degrees) for k in range(len(degrees[0])))
    cols = tuple(tuple(f.rays[i][c] for i in idx) for c in range(f.dim))
    lam = xm.solve_linear(cols, tuple(-x for x in f.rays[ray_index]))
    assert lam is not None  # the cone is full dimensional
    lam_full = [Fraction(0)] * f.n_rays
    lam_full[ray_index] = Fraction(1)
    for t, i in enumerate(idx):
        lam_full[i] = lam[t]
    ell = xm.solve_linear(tuple(degrees), tuple(lam_full))
    if ell is None:
        raise DomainError("degree data is not Gale dual to the rays; no "
                          "extracting form exists")
    values = tuple(xm.dot(ell, q) for q in degrees)
    assert values == tuple(lam_full)
    return ExtractionForm(cone_index, ray_index, tuple(ell), values,
                          xm.dot(ell, anticanonical))


def barycentric_certificate(cartier_map):
    """Convex weights m_sigma with sum m_sigma C_sigma = 0 and sum = 1.

    Deterministic two-stage selection: first maximize the smallest weight,
    then minimize the weights lexicographically in cone order within that
    optimum.  The result is verified by substitution before returning.
    """
    keys = sorted(cartier_map)
    verts = [cartier_map[k] for k in keys]
    nc = len(verts)
    d = len(verts[0])
    t_opt, _ = ph._interior_weight_lp(tuple(verts))
    if t_opt is None or t_opt < 0:
        raise DomainError("origin is not in the hull of the Cartier data; "
                          "this flags an upstream bug or a non-ample divisor")

    # Lexicographic refinement: pin the weights one by one, substituting the
    # pinned prefix into the right side so every stage LP stays small.
    pinned = []
    for stage in range(nc):
        tail = nc - stage
        rows = []
        rhs = []
        for coord in range(d):
            rows.append(tuple(verts[i][coord] for i in range(stage, nc)))
            rhs.append(-sum(pinned[i] * verts[i][coord] for i in range(stage)))
        rows.append(tuple([Fraction(1)] * tail))
        rhs.append(Fraction(1) - sum(pinned))
        obj = [Fraction(0)] * tail
        obj[0] = Fraction(1)
        res = ph.lp_minimize(obj, rows, rhs, [t_opt] * tail, [Fraction(1)] * tail)
        assert res.status == "optimal"
        pinned.append(res.optimum)
    weights = tuple(pinned)
    assert sum(weights) == 1
    for coord in range(d):
        assert sum(w * verts[i][coord] for i, w in enumerate(weights)) == 0
    return dict(zip(keys, weights))


def recognize_equality_case(f: fans.Fan, a, i_x: int, p: br.GradedCoxPresentation):
    """Execute the boundary-case reconstruction: verify every index bound is
    met with equality, express the off-cone rays over a fixed cone's basis
    with coefficients in {0,-1}, check the blocks partition the basis, and
    return the factor dimensions of the resulting product of projective
    spaces.  Any failed verification raises TheoremContradiction."""
    vals = fans.coefficients(a, f.n_rays)
    cd = fans.cartier_data(f, vals)
    for ci, idx in enumerate(f.max_cones):
        inside = set(idx)
        for v in range(f.n_rays):
            if v in inside:
                continue
            value = xm.dot(f.rays[v], cd[ci]) + vals[v]
            if value != i_x:
                raise TheoremContradiction(
                    "equality case claimed but value at cone %d, ray %d is %s"
                    " instead of %d" % (ci, v, value, i_x))
    base = 0
    idx = f.max_cones[base]
    d = f.dim
    neighbors = fans.facet_neighbors(f, base)
    off = [v for v in range(f.n_rays) if v not in set(idx)]
    blocks = []
    seen_positions = set()
    for v in off:
        positions = []
        for t, i in enumerate(idx):
            ci = neighbors[i]
            coord = (xm.dot(f.rays[v], cd[ci]) - (i_x - vals[v])) / Fraction(i_x)
            if coord == 0:
                continue
            if coord == -1:
                positions.append(t)
                continue
            raise TheoremContradiction(
                "coordinate of ray %d over the base cone is %s, not in {0,-1}"
                % (v, coord))
        rebuilt = tuple(-sum(f.rays[idx[t]][c] for t in positions) for c in range(d))
        if rebuilt != f.rays[v]:
            raise TheoremContradiction(
                "ray %d is not minus the sum of its block %s" % (v, positions))
        if seen_positions & set(positions):
            raise TheoremContradiction("blocks of the basis partition overlap")
        seen_positions |= set(positions)
        blocks.append((v, tuple(positions)))
    if seen_positions != set(range(d)):
        raise TheoremContradiction("blocks do not partition the base cone's rays")
    for v, positions in blocks:
        if len(positions) != i_x - 1:
            raise TheoremContradiction(
                "block of ray %d has size %d, expected %d"
                % (v, len(positions), i_x - 1))
    if p.r > 0:
        gen_degs = {tuple(q) for q in p.degrees}
        for j, dg in enumerate(p.relation_degrees):
            if tuple(dg) not in gen_degs:
                raise TheoremContradiction(
                    "equality case forces relation %d to have a generator "
                    "degree, but %s is none" % (j + 1, tuple(dg)))
        raise TheoremContradiction(
            "equality case with relations: relation degrees equal generator "
            "degrees, contradicting pairwise non-associated prime generators")
    factors = tuple(len(positions) for _, positions in blocks)
    partition = {"base_cone": base, "blocks": [
        {"ray": v, "positions": list(positions)} for v, positions in blocks]}
    return factors, partition


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

@dataclass
class _Context:
    p: br.GradedCoxPresentation
    L: tuple
    checklist: list
    hypotheses_pass: bool
    fan: fans.Fan | None = None
    phi: br.Bunch | None = None
    pic: xm.LatticeBasis | None = None
    picard_path: str | None = None


def _prepare(c: ConstructionInput) -> _Context:
    p = c.presentation
    L = br.anticanonical_class(p)
    checks = []

    degree_lattice = xm.LatticeBasis.from_generators(p.rho, p.degrees)
    surjective = xm.lattice_index(degree_lattice) == 1
    checks.append(ConditionCheck(
        "degree_matrix_surjective", surjective,
        details="generator degrees span Z^%d" % p.rho if surjective else
        "generator degrees span a proper sublattice of Z^%d" % p.rho))

    try:
        mov = br.moving_cone(p)
        mov_ok = ph.cone_membership(L, mov, interior=True)
        mov_detail = ("anticanonical class %s lies strictly inside the moving cone"
                      % (L,)) if mov_ok else (
            "anticanonical class %s is not interior to the moving cone" % (L,))
    except DomainError as exc:
        mov_ok = False
        mov_detail = str(exc)
    checks.append(ConditionCheck("polarization_in_moving_interior", mov_ok,
                                 details=mov_detail))

    fan = c.fan
    recon_detail = None
    if fan is None and mov_ok:
        try:
            fan = br.ambient_fan(p, L)
        except (DomainError, InputError) as exc:
            recon_detail = str(exc)
    if fan is not None:
        fc = fans.fan_checks(fan)
        checks.append(ConditionCheck("ambient_smooth", fc.is_smooth,
                                     details="every maximal cone is unimodular"
                                     if fc.is_smooth else "some maximal cone is not unimodular"))
        checks.append(ConditionCheck("ambient_complete", fc.is_complete,
                                     details="facet pairing and connectivity hold"
                                     if fc.is_complete else "facet pairing fails"))
    else:
        detail = recon_detail or "ambient fan unavailable"
        checks.append(ConditionCheck("ambient_smooth", False, details=detail))
        checks.append(ConditionCheck("ambient_complete", False, details=detail))
        fc = None

    fan_ok = fan is not None and fc.is_smooth and fc.is_complete

    if fan_ok:
        bunch = br.bunch_from_fan(p, fan)
        chamber_ok = all(
            ph.cone_membership(L, ph.RationalCone(p.rho, gens), interior=True)
            for gens in bunch.cones)
        checks.append(ConditionCheck(
            "polarization_in_chamber_interiors", chamber_ok,
            details="anticanonical class is interior to every chamber cone"
            if chamber_ok else "anticanonical class touches a chamber wall"))
    else:
        bunch = None
        chamber_ok = False
        checks.append(ConditionCheck("polarization_in_chamber_interiors", None,
                                     mode="skipped", details="no ambient fan"))

    if fan_ok:
        if c.delta_ray_coeffs is not None:
            amp_coeffs = tuple(Fraction(1 - di) for di in c.delta_ray_coeffs)
            ample = fans.is_ample(fan, amp_coeffs)
            detail = "tested with ray-wise coefficients 1 - delta_i"
        else:
            rows = [tuple(p.degrees[i][k] for i in range(p.m)) for k in range(p.rho)]
            a0 = xm.solve_linear(rows, L)
            if a0 is None:
                ample = False
                detail = "anticanonical class is not in the image of the degree map"
            else:
                ample = fans.is_ample(fan, a0)
                detail = "tested with a class representative (ampleness depends only on the class)"
        checks.append(ConditionCheck("anticanonical_ample", ample, details=detail))
    else:
        checks.append(ConditionCheck("anticanonical_ample", None, mode="skipped",
                                     details="no ambient fan"))
        ample = False

    rel_sum = tuple(sum(dg[k] for dg in p.relation_degrees) for k in range(p.rho)) \
        if p.r else (0,) * p.rho
    if c.delta_ray_coeffs is not None:
        delta_class = tuple(sum(c.delta_ray_coeffs[i] * p.degrees[i][k]
                                for i in range(p.m)) for k in range(p.rho))
        ok = delta_class == rel_sum
        checks.append(ConditionCheck(
            "delta_class_matches_relations", ok,
            details="[Delta] = %s equals the relation-degree sum" % (delta_class,)
            if ok else "[Delta] = %s but relation degrees sum to %s"
            % (delta_class, rel_sum)))
    else:
        checks.append(ConditionCheck(
            "delta_class_matches_relations", True, mode="assumed",
            details="[Delta] taken to be the relation-degree sum %s" % (rel_sum,)))

    if p.r == 0:
        checks.append(ConditionCheck("relations_homogeneous", True,
                                     details="no relations"))
    elif p.relation_polys is not None:
        checks.append(ConditionCheck(
            "relations_homogeneous", True,
            details="each polynomial is homogeneous of its declared degree"))
    else:
        checks.append(ConditionCheck(
            "relations_homogeneous", True, mode="assumed",
            details="degrees declared without polynomials"))

    bad = [j + 1 for j, dg in enumerate(p.relation_degrees)
           if not degree_not_small(dg, p)]
    checks.append(ConditionCheck(
        "relation_degrees_not_small", not bad,
        details="all relation degrees avoid the half-open hull region" if not bad
        else "relations %s have relatively small degrees" % (bad,)))

    units = br.units_condition_sufficient(p)
    checks.append(ConditionCheck(
        "units_condition", units,
        details="degrees are nonzero and span a pointed cone" if units else
        "sufficient criterion failed: a zero degree or a line in the degree cone"))

    checks.append(ConditionCheck(
        "cox_ring_factorial_complete_intersection", True, mode="assumed",
        details="declared input; not verified here"))

    phi = None
    pic = None
    picard_path = None
    if fan_ok and bunch is not None:
        phi = br._phi_filter(p, bunch)
        if p.r == 0:
            picard_path = "phi (equals the chamber collection; no relations)"
        elif phi.assumed_maximal:
            picard_path = "chamber collection (radical filter unavailable; assumed maximal)"
        else:
            picard_path = "phi (radical-filtered bunch)"
        lf = br.is_locally_factorial(phi, p.rho)
        checks.append(ConditionCheck(
            "locally_factorial", lf,
            details="every bunch cone spans Z^%d" % p.rho if lf else
            "some bunch cone spans a proper sublattice"))
        if lf or phi.members:
            pic = br.picard_group(phi)
    else:
        checks.append(ConditionCheck("locally_factorial", None, mode="skipped",
                                     details="no ambient fan"))

    evaluated = [ck for ck in checks if ck.passed is not None]
    hypotheses_pass = (all(ck.passed for ck in evaluated)
                       and not any(ck.passed is None for ck in checks))
    return _Context(p=p, L=L, checklist=checks, hypotheses_pass=hypotheses_pass,
                    fan=fan, phi=phi, pic=pic, picard_path=picard_path)


def check_construction(c: ConstructionInput) -> list:
    """Evaluate and record every input hypothesis; failures are verdicts."""
    return _prepare(c).checklist


def _parallel_map(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def verify_mukai_inequality(c: ConstructionInput, threads: int = 1) -> MukaiReport:
    """Run the full pipeline and assemble the certificate report."""
    ctx = _prepare(c)
    p = ctx.p
    quantities = {"m": p.m, "r": p.r, "rho": p.rho, "d": p.ambient_dim,
                  "n": p.ambient_dim - p.r}
    report = MukaiReport(
        name=c.name, overall="hypothesis_failed", quantities=quantities,
        checklist=list(ctx.checklist), degrees=tuple(p.degrees),
        relation_degrees=tuple(p.relation_degrees),
        anticanonical=tuple(ctx.L))
    if ctx.fan is not None:
        report.rays = tuple(ctx.fan.rays)
        report.max_cones = tuple(ctx.fan.max_cones)
    if ctx.phi is not None:
        report.phi_members = tuple(ctx.phi.members)
        report.picard_path = ctx.picard_path
    if ctx.pic is not None:
        report.picard_basis = tuple(ctx.pic.vectors)
    if not ctx.hypotheses_pass:
        return report

    fan = ctx.fan
    n = quantities["n"]
    rho = p.rho
    contradictions = []

    try:
        i_x = fano_index(ctx.L, ctx.pic)
    except DomainError as exc:
        report.checklist.append(ConditionCheck(
            "anticanonical_in_picard_lattice", False, details=str(exc)))
        report.overall = "hypothesis_failed"
        return report
    report.checklist.append(ConditionCheck(
        "anticanonical_in_picard_lattice", True,
        details="divisibility index computed in the Picard lattice"))
    report.fano_index = i_x

    a, total, rep_flags = _representative(p, ctx.L)
    contradictions.extend(rep_flags)
    if a is None or any(x <= 0 for x in a):
        report.contradictions = contradictions
        report.overall = "contradiction"
        return report
    bound = p.m - p.r
    report.representative = {"a": tuple(a), "sum": total, "bound": bound}

    cd = fans.cartier_data(fan, a)
    report.cartier = [{"cone": list(fan.max_cones[ci]), "vertex": tuple(cd[ci])}
                      for ci in sorted(cd)]

    pairs = [(ci, v) for ci, idx in enumerate(fan.max_cones)
             for v in range(fan.n_rays) if v not in set(idx)]

    def eval_pair(pair):
        ci, v = pair
        value = xm.dot(fan.rays[v], cd[ci]) + a[v]
        form = extraction_form(fan, ci, v, degrees=tuple(p.degrees),
                               anticanonical=ctx.L)
        return ci, v, value, form

    bound_entries = []
    min_value = None
    for ci, v, value, form in _parallel_map(eval_pair, pairs, threads):
        if value <= 0:
            contradictions.append(
                "ampleness violated: value %s at cone %d, ray %d" % (value, ci, v))
        if form.anticanonical_value != value:
            contradictions.append(
                "extraction form at cone %d, ray %d evaluates to %s, expected %s"
                % (ci, v, form.anticanonical_value, value))
        if any((xm.dot(form.form, b)).denominator != 1 for b in ctx.pic.vectors):
            contradictions.append(
                "extraction form at cone %d, ray %d is not integral on the "
                "Picard lattice" % (ci, v))
        elif value.denominator != 1 or int(value) % i_x != 0:
            contradictions.append(
                "value %s at cone %d, ray %d is not a multiple of the index %d"
                % (value, ci, v, i_x))
        bound_entries.append({"cone": ci, "ray": v, "value": value,
                              "form": form.form, "form_values": form.values,
                              "anticanonical_value": form.anticanonical_value})
        if min_value is None or value < min_value:
            min_value = value
    report.bounds = bound_entries
    report.min_bound = min_value
    if min_value is not None and i_x > min_value:
        contradictions.append("index %d exceeds the minimal bound value %s"
                              % (i_x, min_value))

    try:
        weights = barycentric_certificate(cd)
    except DomainError as exc:
        contradictions.append(str(exc))
        report.contradictions = contradictions
        report.overall = "contradiction"
        return report
    report.weights = tuple(weights[ci] for ci in sorted(weights))

    per_ray = []
    for v in range(fan.n_rays):
        lhs = Fraction(i_x) - a[v]
        rhs = Fraction(i_x) * sum(weights[ci] for ci, idx in enumerate(fan.max_cones)
                                  if v in set(idx))
        per_ray.append({"ray": v, "lhs": lhs, "rhs": rhs})
        if lhs > rhs:
            contradictions.append(
                "weighted-average step fails at ray %d: %s > %s" % (v, lhs, rhs))
    if Fraction(i_x * rho) > total:
        contradictions.append(
            "index times Picard rank %d exceeds the coefficient sum %s"
            % (i_x * rho, total))
    report.chain = {"per_ray": per_ray, "index_times_rho": Fraction(i_x * rho),
                    "sum_a": total}

    lhs = (i_x - 1) * rho
    holds = lhs <= n
    equality = lhs == n
    report.inequality = {"lhs": lhs, "rhs": n, "holds": holds, "equality": equality}
    if not holds:
        contradictions.append(
            "final inequality fails: (%d - 1) * %d = %d > %d" % (i_x, rho, lhs, n))
    report.gamma = Fraction(n + rho) - total
    if report.gamma < 0:
        contradictions.append("decomposition complexity %s is negative" % (report.gamma,))

    if holds and equality and not contradictions:
        try:
            factors, partition = recognize_equality_case(fan, a, i_x, p)
            report.equality_factors = factors
            report.equality_partition = partition
        except TheoremContradiction as exc:
            contradictions.append(str(exc))

    report.contradictions = contradictions
    report.overall = "contradiction" if contradictions else "verified"
    return report
