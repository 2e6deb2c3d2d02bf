"""Independent re-validation of serialized certificate reports.

This module deliberately imports nothing from the rest of the package: it
re-checks every numeric claim of a JSON report dict by direct substitution
with its own small exact-arithmetic helpers.  No linear program is solved
here; stored witnesses (representative coefficients, Cartier vertices,
barycentric weights, extraction forms) are only plugged back into the
identities they certify.
"""

from __future__ import annotations

from fractions import Fraction

SCHEMA = "coxcheck-report-1"


def _num(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError("report numbers must be exact: %r" % (x,))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if "/" in x:
            a, b = x.split("/")
            return Fraction(int(a), int(b))
        return Fraction(int(x))
    if isinstance(x, Fraction):
        return x
    raise ValueError("bad number in report: %r" % (x,))


def _vec(v):
    return tuple(_num(x) for x in v)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _rank(rows):
    M = [list(r) for r in rows]
    if not M:
        return 0
    m, n = len(M), len(M[0])
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
    return r


def _solve(rows, rhs):
    """One rational solution of rows . x = rhs or None (free vars zero)."""
    if not rows:
        return ()
    m, n = len(rows), len(rows[0])
    M = [list(rows[i]) + [rhs[i]] for i in range(m)]
    piv = []
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
        piv.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for k, c in enumerate(piv):
        x[c] = M[k][n]
    return tuple(x)


def recheck_report(report) -> list:
    """Return a list of failure messages; an empty list means the report's
    witness chain is internally consistent."""
    fails = []

    def bad(msg):
        fails.append(msg)

    if report.get("schema") != SCHEMA:
        bad("unknown schema %r" % (report.get("schema"),))
        return fails

    q = report["quantities"]
    m, r, rho, d, n = q["m"], q["r"], q["rho"], q["d"], q["n"]
    if n + rho != m - r:
        bad("quantities violate n + rho = m - r")
    if d != m - rho:
        bad("quantities violate d = m - rho")

    degrees = [_vec(v) for v in report["degrees"]]
    rel_degrees = [_vec(v) for v in report.get("relation_degrees", [])]
    K = _vec(report["anticanonical"])
    if len(degrees) != m or any(len(v) != rho for v in degrees):
        bad("degree matrix shape is wrong")
        return fails
    expect_K = tuple(sum(v[k] for v in degrees) - sum(v[k] for v in rel_degrees)
                     for k in range(rho))
    if tuple(K) != expect_K:
        bad("anticanonical class is not degrees-sum minus relation-sum")

    rays = report.get("rays")
    cones = report.get("max_cones")
    if rays is not None:
        rays = [_vec(v) for v in rays]
        if len(rays) != m:
            bad("ray count differs from generator count")

    i_x = report.get("fano_index")
    pic = report.get("picard_basis")
    if pic is not None:
        pic = [_vec(v) for v in pic]

    rep = report.get("representative")
    a = None
    if rep is not None:
        a = _vec(rep["a"])
        total = _num(rep["sum"])
        bound = _num(rep["bound"])
        if len(a) != m:
            bad("representative length differs from generator count")
        if any(not (0 < x <= 1) for x in a):
            bad("representative coefficients leave the half-open box (0,1]")
        if sum(a) != total:
            bad("stored coefficient sum is wrong")
        if bound != m - r:
            bad("stored coefficient-sum bound is not m - r")
        if report["overall"] == "verified" and total > bound:
            bad("coefficient sum exceeds its bound in a verified report")
        for k in range(rho):
            if sum(a[i] * degrees[i][k] for i in range(m)) != K[k]:
                bad("Q a = anticanonical fails in coordinate %d" % k)
                break

    cartier = report.get("cartier")
    vertex_of = {}
    if cartier is not None and rays is not None and a is not None:
        if cones is None or len(cartier) != len(cones):
            bad("Cartier data misaligned with maximal cones")
        for ci, entry in enumerate(cartier):
            C = _vec(entry["vertex"])
            vertex_of[ci] = C
            idx = entry["cone"]
            if cones is not None and list(cones[ci]) != list(idx):
                bad("Cartier entry %d names the wrong cone" % ci)
            for i in idx:
                if _dot(rays[i], C) + a[i] != 0:
                    bad("Cartier equality fails at cone %d, ray %d" % (ci, i))

    bounds = report.get("bounds")
    if bounds is not None and rays is not None and a is not None and vertex_of:
        seen = set()
        for entry in bounds:
            ci, v = entry["cone"], entry["ray"]
            value = _num(entry["value"])
            seen.add((ci, v))
            idx = set(cones[ci])
            if v in idx:
                bad("bound entry (%d, %d) names a ray of its own cone" % (ci, v))
                continue
            if _dot(rays[v], vertex_of[ci]) + a[v] != value:
                bad("bound value at cone %d, ray %d is not <v, C> + a_v" % (ci, v))
            if value <= 0:
                bad("bound value at cone %d, ray %d is not positive" % (ci, v))
            if i_x is not None and report["overall"] == "verified" and value < i_x:
                bad("bound value at cone %d, ray %d is below the index" % (ci, v))
            form = _vec(entry["form"])
            fvals = _vec(entry["form_values"])
            if len(fvals) != m:
                bad("form values at cone %d, ray %d have wrong length" % (ci, v))
                continue
            for i in range(m):
                if _dot(form, degrees[i]) != fvals[i]:
                    bad("stored form does not evaluate to its stored values "
                        "at cone %d, ray %d" % (ci, v))
                    break
            if fvals[v] != 1:
                bad("form value on its own ray class is not 1 at (%d, %d)" % (ci, v))
            for i in range(m):
                if i != v and i not in idx and fvals[i] != 0:
                    bad("form value on an off-cone class is nonzero at (%d, %d)"
                        % (ci, v))
                    break
            # The value pattern must be a linear relation among the rays.
            for c in range(d):
                if sum(fvals[i] * rays[i][c] for i in range(m)) != 0:
                    bad("form values are not a ray relation at (%d, %d)" % (ci, v))
                    break
            av = _num(entry["anticanonical_value"])
            if _dot(form, K) != av:
                bad("stored anticanonical value is wrong at (%d, %d)" % (ci, v))
            if av != value:
                bad("extraction identity fails at (%d, %d)" % (ci, v))
            if i_x is not None:
                if av.denominator != 1 or int(av) % i_x != 0:
                    bad("anticanonical value at (%d, %d) is not a multiple of "
                        "the index" % (ci, v))
            if pic is not None:
                if any((_dot(form, b)).denominator != 1 for b in pic):
                    bad("form at (%d, %d) is not integral on the Picard lattice"
                        % (ci, v))
        if cones is not None:
            expected = {(ci, v) for ci in range(len(cones))
                        for v in range(m) if v not in set(cones[ci])}
            if seen != expected:
                bad("bound entries do not cover every (cone, off-ray) pair")

    mb = report.get("min_bound")
    if mb is not None and bounds is not None:
        values = [_num(e["value"]) for e in bounds]
        if values and min(values) != _num(mb):
            bad("stored minimal bound is not the minimum of the values")

    weights = report.get("weights")
    if weights is not None and vertex_of:
        w = _vec(weights)
        if len(w) != len(vertex_of):
            bad("weight count differs from the cone count")
        elif any(not (0 <= x <= 1) for x in w):
            bad("barycentric weights leave [0, 1]")
        elif sum(w) != 1:
            bad("barycentric weights do not sum to 1")
        else:
            for c in range(d):
                if sum(w[ci] * vertex_of[ci][c] for ci in range(len(w))) != 0:
                    bad("barycentric relation sum m_sigma C_sigma = 0 fails")
                    break

    chain = report.get("chain")
    if chain is not None and weights is not None and a is not None and i_x is not None:
        w = _vec(weights)
        for entry in chain["per_ray"]:
            v = entry["ray"]
            lhs = _num(entry["lhs"])
            rhs = _num(entry["rhs"])
            if lhs != i_x - a[v]:
                bad("chain left side at ray %d is not index - a_v" % v)
            cover = sum(w[ci] for ci in range(len(cones)) if v in set(cones[ci]))
            if rhs != i_x * cover:
                bad("chain right side at ray %d is not index * cone coverage" % v)
            if lhs > rhs:
                bad("chain inequality fails at ray %d" % v)
        if _num(chain["index_times_rho"]) != i_x * rho:
            bad("stored index * rho is wrong")
        if _num(chain["sum_a"]) != sum(a):
            bad("stored coefficient sum in the chain is wrong")
        if i_x * rho > sum(a):
            bad("index * rho exceeds the coefficient sum")

    ineq = report.get("inequality")
    if ineq is not None and i_x is not None:
        if ineq["lhs"] != (i_x - 1) * rho or ineq["rhs"] != n:
            bad("inequality sides are not (index-1)*rho and n")
        if ineq["holds"] != (ineq["lhs"] <= ineq["rhs"]):
            bad("inequality verdict is inconsistent with its sides")
        if ineq["equality"] != (ineq["lhs"] == ineq["rhs"]):
            bad("equality flag is inconsistent with the sides")

    gamma = report.get("gamma")
    if gamma is not None and a is not None:
        if _num(gamma) != n + rho - sum(a):
            bad("stored complexity gamma is not n + rho - sum a")
        if _num(gamma) < 0 and report["overall"] == "verified":
            bad("negative complexity in a verified report")

    factors = report.get("equality_factors")
    partition = report.get("equality_partition")
    if factors is not None:
        if ineq is None or not ineq.get("equality"):
            bad("equality factors present without equality")
        if i_x is not None and any(f != i_x - 1 for f in factors):
            bad("equality factors are not all index - 1")
        if len(factors) != rho:
            bad("equality factor count is not the Picard rank")
        if r != 0:
            bad("equality factors present despite relations")
        if partition is not None and rays is not None and cones is not None:
            base = partition["base_cone"]
            idx = list(cones[base])
            used = set()
            for block in partition["blocks"]:
                v = block["ray"]
                positions = list(block["positions"])
                if used & set(positions):
                    bad("equality partition blocks overlap")
                used |= set(positions)
                rebuilt = tuple(-sum(rays[idx[t]][c] for t in positions)
                                for c in range(d))
                if rebuilt != tuple(rays[v]):
                    bad("equality block for ray %d does not rebuild the ray" % v)
            if used != set(range(d)):
                bad("equality partition does not cover the base cone")

    if pic is not None and i_x is not None and report["overall"] == "verified":
        if _rank(pic) != len(pic):
            bad("stored Picard basis is linearly dependent")
        target = tuple(x / Fraction(i_x) for x in K)
        cols = tuple(tuple(pic[j][k] for j in range(len(pic))) for k in range(rho))
        sol = _solve(cols, target)
        if sol is None or any(x.denominator != 1 for x in sol):
            bad("anticanonical class is not index times a Picard class")

    return fails
