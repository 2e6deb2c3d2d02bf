"""Command-line front end.

Commands:
    coxcheck check <file-or-name> [--json out.json]
    coxcheck index <file-or-name>
    coxcheck examples [--json]

Instance files are line-oriented JSON: every line is one object carrying
exactly one record.  All numbers are exact; integer literals or "p/q"
strings are accepted and floating-point literals are rejected with a
located diagnostic.  The first line must be {"coxcheck": 1}.

Records:
    {"meta": {"name": ..., "provenance": ..., "expect_exit": 0}}
    {"fan": {"rays": [[...], ...], "cones": [[...], ...]}}
    {"degrees": {"columns": [[...], ...], "polarization": [...]}}
    {"relation": {"degree": [...], "polynomial": "T1*T2 + ..."}}
    {"delta": {"ray_coefficients": [...]}}

Exactly one of "fan" and "degrees" must be present.  Relation polynomials
follow the term grammar of the polynomial parser (terms like
``3/2*T1^2*T4 - T2*T3``).  Exit codes: 0 all hypotheses verified and the
inequality holds, 1 a hypothesis failed, 2 input error, 3 theorem
contradiction.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from . import bunchedring as br
from . import fans
from . import groebner as gb
from . import mukai
from .errors import CoxcheckError, InputError

FORMAT_VERSION = 1

EXIT_VERIFIED = 0
EXIT_HYPOTHESIS_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CONTRADICTION = 3

_OVERALL_EXIT = {
    "verified": EXIT_VERIFIED,
    "hypothesis_failed": EXIT_HYPOTHESIS_FAILED,
    "contradiction": EXIT_CONTRADICTION,
}


# ---------------------------------------------------------------------------
# Exact JSON numbers
# ---------------------------------------------------------------------------

def _reject_float(s):
    raise InputError("floating-point literal %r is not accepted; use integers "
                     "or \"p/q\" strings" % (s,))


def _loads_exact(line):
    return json.loads(line, parse_float=_reject_float,
                      parse_constant=_reject_float)


def number_from_json(x, where=""):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("%s: expected an exact number" % where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        parts = x.split("/")
        try:
            if len(parts) == 1:
                return Fraction(int(parts[0]))
            if len(parts) == 2:
                return Fraction(int(parts[0]), int(parts[1]))
        except (ValueError, ZeroDivisionError):
            pass
        raise InputError("%s: malformed rational %r" % (where, x))
    raise InputError("%s: expected an exact number, got %r" % (where, x))


def int_from_json(x, where=""):
    v = number_from_json(x, where)
    if v.denominator != 1:
        raise InputError("%s: expected an integer, got %s" % (where, x))
    return int(v)


def number_to_json(x):
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return "%d/%d" % (x.numerator, x.denominator)


def _int_vector(value, where):
    if not isinstance(value, list):
        raise InputError("%s: expected a list of integers" % where)
    return tuple(int_from_json(v, "%s[%d]" % (where, i)) for i, v in enumerate(value))


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------

def parse_instance_text(text, source="<input>"):
    """Parse instance text into (meta, ConstructionInput).

    Diagnostics carry the source name, line number and field path.
    """
    lines = [ln for ln in text.splitlines()]
    records = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        try:
            obj = _loads_exact(stripped)
        except InputError:
            raise
        except json.JSONDecodeError as exc:
            raise InputError("%s: line %d: invalid JSON: %s" % (source, lineno, exc))
        if not isinstance(obj, dict):
            raise InputError("%s: line %d: each line must be a JSON object"
                             % (source, lineno))
        records.append((lineno, obj))
    if not records:
        raise InputError("%s: empty instance file" % source)

    first_line, first = records[0]
    if list(first.keys()) != ["coxcheck"] or first.get("coxcheck") != FORMAT_VERSION:
        raise InputError("%s: line %d: first record must be {\"coxcheck\": %d}"
                         % (source, first_line, FORMAT_VERSION))

    meta = {}
    fan_spec = None
    degrees_spec = None
    relations = []
    delta = None
    for lineno, obj in records[1:]:
        if len(obj) != 1:
            raise InputError("%s: line %d: each record carries exactly one key"
                             % (source, lineno))
        key, value = next(iter(obj.items()))
        where = "%s: line %d: %s" % (source, lineno, key)
        if key == "meta":
            if not isinstance(value, dict):
                raise InputError(where + ": expected an object")
            meta = dict(value)
        elif key == "fan":
            if fan_spec is not None:
                raise InputError(where + ": duplicate fan record")
            fan_spec = (lineno, value)
        elif key == "degrees":
            if degrees_spec is not None:
                raise InputError(where + ": duplicate degrees record")
            degrees_spec = (lineno, value)
        elif key == "relation":
            relations.append((lineno, value))
        elif key == "delta":
            if delta is not None:
                raise InputError(where + ": duplicate delta record")
            delta = (lineno, value)
        else:
            raise InputError(where + ": unknown record key")

    if (fan_spec is None) == (degrees_spec is None):
        raise InputError("%s: exactly one of \"fan\" and \"degrees\" is required"
                         % source)

    rel_degrees = []
    rel_poly_strings = []
    for lineno, value in relations:
        where = "%s: line %d: relation" % (source, lineno)
        if not isinstance(value, dict) or "degree" not in value:
            raise InputError(where + ": expected an object with a degree")
        unknown = set(value) - {"degree", "polynomial"}
        if unknown:
            raise InputError(where + ": unknown fields %s" % sorted(unknown))
        rel_degrees.append(_int_vector(value["degree"], where + ".degree"))
        rel_poly_strings.append((lineno, value.get("polynomial")))

    if fan_spec is not None:
        lineno, value = fan_spec
        where = "%s: line %d: fan" % (source, lineno)
        if not isinstance(value, dict) or set(value) != {"rays", "cones"}:
            raise InputError(where + ": expected rays and cones")
        rays = [_int_vector(r, where + ".rays[%d]" % i)
                for i, r in enumerate(value["rays"])]
        cones = [_int_vector(cn, where + ".cones[%d]" % i)
                 for i, cn in enumerate(value["cones"])]
        if not rays:
            raise InputError(where + ": no rays")
        try:
            fan = fans.Fan(len(rays[0]), tuple(rays), tuple(cones))
        except CoxcheckError as exc:
            raise InputError(where + ": %s" % exc)
        degree_rows = fans.gale_dual(tuple(zip(*fan.rays)))
        degrees = tuple(zip(*degree_rows))
        polarization = None
    else:
        lineno, value = degrees_spec
        where = "%s: line %d: degrees" % (source, lineno)
        if not isinstance(value, dict) or "columns" not in value:
            raise InputError(where + ": expected columns")
        unknown = set(value) - {"columns", "polarization"}
        if unknown:
            raise InputError(where + ": unknown fields %s" % sorted(unknown))
        degrees = tuple(_int_vector(col, where + ".columns[%d]" % i)
                        for i, col in enumerate(value["columns"]))
        polarization = None
        if "polarization" in value:
            polarization = _int_vector(value["polarization"], where + ".polarization")
        fan = None

    rho = len(degrees[0]) if degrees else 0
    for (lineno, _), dg in zip(relations, rel_degrees):
        if len(dg) != rho:
            raise InputError("%s: line %d: relation.degree: expected length %d"
                             % (source, lineno, rho))

    m = len(degrees)
    polys = None
    if any(s is not None for _, s in rel_poly_strings):
        if not all(s is not None for _, s in rel_poly_strings):
            raise InputError("%s: either all relations carry polynomials or none"
                             % source)
        polys = []
        for lineno, s in rel_poly_strings:
            try:
                polys.append(gb.parse_polynomial(s, m))
            except InputError as exc:
                raise InputError("%s: line %d: relation.polynomial: %s"
                                 % (source, lineno, exc))
        polys = tuple(polys)

    try:
        presentation = br.GradedCoxPresentation(tuple(degrees), tuple(rel_degrees),
                                                polys)
    except CoxcheckError as exc:
        raise InputError("%s: %s" % (source, exc))

    if polarization is not None:
        expected = br.anticanonical_class(presentation)
        if tuple(polarization) != expected:
            raise InputError(
                "%s: line %d: degrees.polarization: %s differs from the "
                "anticanonical class %s computed from the data"
                % (source, degrees_spec[0], list(polarization), list(expected)))

    delta_coeffs = None
    if delta is not None:
        lineno, value = delta
        where = "%s: line %d: delta" % (source, lineno)
        if not isinstance(value, dict) or set(value) != {"ray_coefficients"}:
            raise InputError(where + ": expected ray_coefficients")
        delta_coeffs = _int_vector(value["ray_coefficients"], where + ".ray_coefficients")
        if len(delta_coeffs) != m:
            raise InputError(where + ": expected %d coefficients" % m)

    try:
        ci = mukai.ConstructionInput(presentation, fan, delta_coeffs,
                                     name=meta.get("name"))
    except CoxcheckError as exc:
        raise InputError("%s: %s" % (source, exc))
    return meta, ci


def parse_instance_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    return parse_instance_text(text, source=str(path))


def serialize_instance(meta, ci: mukai.ConstructionInput) -> str:
    """Inverse of parse_instance_text on content: parse(serialize(x)) == x."""
    lines = [json.dumps({"coxcheck": FORMAT_VERSION})]
    if meta:
        lines.append(json.dumps({"meta": meta}, sort_keys=True))
    p = ci.presentation
    if ci.fan is not None:
        lines.append(json.dumps({"fan": {
            "rays": [list(r) for r in ci.fan.rays],
            "cones": [list(c) for c in ci.fan.max_cones]}}))
    else:
        lines.append(json.dumps({"degrees": {
            "columns": [list(d) for d in p.degrees],
            "polarization": list(br.anticanonical_class(p))}}))
    for j, dg in enumerate(p.relation_degrees):
        rec = {"degree": list(dg)}
        if p.relation_polys is not None:
            rec["polynomial"] = gb.poly_to_string(p.relation_polys[j])
        lines.append(json.dumps({"relation": rec}))
    if ci.delta_ray_coeffs is not None:
        lines.append(json.dumps({"delta": {"ray_coefficients":
                                           list(ci.delta_ray_coeffs)}}))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Report serialization and rendering
# ---------------------------------------------------------------------------

def report_to_json(report: mukai.MukaiReport) -> dict:
    def vec(v):
        return [number_to_json(x) for x in v]

    out = {
        "schema": mukai.SCHEMA,
        "name": report.name,
        "overall": report.overall,
        "quantities": dict(report.quantities),
        "checklist": [{"name": ck.name, "passed": ck.passed, "mode": ck.mode,
                       "details": ck.details} for ck in report.checklist],
        "degrees": [list(d) for d in report.degrees],
        "relation_degrees": [list(d) for d in report.relation_degrees],
        "anticanonical": list(report.anticanonical),
        "contradictions": list(report.contradictions),
    }
    out["rays"] = [list(r) for r in report.rays] if report.rays is not None else None
    out["max_cones"] = ([list(c) for c in report.max_cones]
                        if report.max_cones is not None else None)
    out["picard_basis"] = ([list(v) for v in report.picard_basis]
                           if report.picard_basis is not None else None)
    out["picard_path"] = report.picard_path
    out["phi_members"] = ([list(J) for J in report.phi_members]
                          if report.phi_members is not None else None)
    out["fano_index"] = report.fano_index
    out["representative"] = None
    if report.representative is not None:
        out["representative"] = {
            "a": vec(report.representative["a"]),
            "sum": number_to_json(report.representative["sum"]),
            "bound": report.representative["bound"],
        }
    out["cartier"] = None
    if report.cartier is not None:
        out["cartier"] = [{"cone": list(e["cone"]), "vertex": vec(e["vertex"])}
                          for e in report.cartier]
    out["bounds"] = None
    if report.bounds is not None:
        out["bounds"] = [{
            "cone": e["cone"], "ray": e["ray"],
            "value": number_to_json(e["value"]),
            "form": vec(e["form"]),
            "form_values": vec(e["form_values"]),
            "anticanonical_value": number_to_json(e["anticanonical_value"]),
        } for e in report.bounds]
    out["min_bound"] = (number_to_json(report.min_bound)
                        if report.min_bound is not None else None)
    out["weights"] = vec(report.weights) if report.weights is not None else None
    out["chain"] = None
    if report.chain is not None:
        out["chain"] = {
            "per_ray": [{"ray": e["ray"], "lhs": number_to_json(e["lhs"]),
                         "rhs": number_to_json(e["rhs"])}
                        for e in report.chain["per_ray"]],
            "index_times_rho": number_to_json(report.chain["index_times_rho"]),
            "sum_a": number_to_json(report.chain["sum_a"]),
        }
    out["inequality"] = dict(report.inequality) if report.inequality is not None else None
    out["gamma"] = number_to_json(report.gamma) if report.gamma is not None else None
    out["equality_factors"] = (list(report.equality_factors)
                               if report.equality_factors is not None else None)
    out["equality_partition"] = report.equality_partition
    return out


def _fmt(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def render_text(report: mukai.MukaiReport) -> str:
    lines = []
    title = report.name or "instance"
    lines.append("== %s ==" % title)
    q = report.quantities
    lines.append("generators m = %d, relations r = %d, class rank rho = %d, "
                 "ambient dim d = %d, dim X n = %d"
                 % (q["m"], q["r"], q["rho"], q["d"], q["n"]))
    lines.append("anticanonical class: %s" % (list(report.anticanonical),))
    lines.append("hypothesis checklist:")
    for ck in report.checklist:
        if ck.passed is True:
            mark = "ok" if ck.mode == "verified" else ck.mode
        elif ck.passed is False:
            mark = "FAIL"
        else:
            mark = "--"
        lines.append("  [%s] %s: %s" % (mark, ck.name, ck.details))
    if report.fano_index is not None:
        lines.append("Fano index i_X = %d (%s)" % (report.fano_index,
                                                   report.picard_path))
    if report.representative is not None:
        rep = report.representative
        lines.append("representative a = (%s), sum = %s <= %d"
                     % (", ".join(_fmt(x) for x in rep["a"]),
                        _fmt(rep["sum"]), rep["bound"]))
    if report.min_bound is not None:
        lines.append("minimal index-bound value over all (cone, ray): %s"
                     % _fmt(report.min_bound))
    if report.weights is not None:
        lines.append("barycentric weights: (%s)"
                     % ", ".join(_fmt(w) for w in report.weights))
    if report.inequality is not None:
        ineq = report.inequality
        rel = "=" if ineq["equality"] else ("<" if ineq["holds"] else ">")
        verdict = "holds" if ineq["holds"] else "FAILS"
        lines.append("inequality (i_X - 1) * rho = %d %s %d = n: %s"
                     % (ineq["lhs"], rel, ineq["rhs"], verdict))
    if report.gamma is not None:
        lines.append("decomposition complexity gamma = %s" % _fmt(report.gamma))
    if report.equality_factors is not None:
        lines.append("equality case: product of projective spaces with factor "
                     "dimensions %s" % (list(report.equality_factors),))
    for msg in report.contradictions:
        lines.append("THEOREM CONTRADICTION: %s" % msg)
    lines.append("overall: %s" % report.overall)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Bundled instances
# ---------------------------------------------------------------------------

def bundled_instances():
    """Sorted (name, provenance, expect_exit, resource) for bundled data."""
    out = []
    root = resources.files("coxcheck").joinpath("data")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".jsonl"):
            continue
        text = entry.read_text(encoding="utf-8")
        meta, _ = parse_instance_text(text, source=entry.name)
        out.append((meta.get("name", entry.name), meta.get("provenance", ""),
                    meta.get("expect_exit"), entry))
    return out


def _resolve(path_or_name):
    if os.path.exists(path_or_name):
        return parse_instance_file(path_or_name)
    for name, _, _, entry in bundled_instances():
        if name == path_or_name:
            return parse_instance_text(entry.read_text(encoding="utf-8"),
                                       source="bundled:%s" % name)
    raise InputError("no such file or bundled instance: %s" % path_or_name)


def _thread_count():
    raw = os.environ.get("COXCHECK_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError("COXCHECK_THREADS must be a positive integer, got %r" % raw)
    if value < 1:
        raise InputError("COXCHECK_THREADS must be a positive integer, got %r" % raw)
    return value


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(args, out=sys.stdout):
    meta, ci = _resolve(args.path)
    report = mukai.verify_mukai_inequality(ci, threads=_thread_count())
    out.write(render_text(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report_to_json(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return _OVERALL_EXIT[report.overall]


def cmd_index(args, out=sys.stdout):
    meta, ci = _resolve(args.path)
    report = mukai.verify_mukai_inequality(ci, threads=_thread_count())
    if report.fano_index is not None:
        q = report.quantities
        out.write("i_X = %d\n" % report.fano_index)
        out.write("rho = %d\n" % q["rho"])
        out.write("n = %d\n" % q["n"])
        if report.gamma is not None:
            out.write("gamma = %s\n" % _fmt(report.gamma))
        if report.inequality is not None and report.inequality["equality"]:
            out.write("equality\n")
            if report.equality_factors is not None:
                out.write("factors %s\n" % (list(report.equality_factors),))
    else:
        out.write("hypotheses failed; no index computed\n")
    return _OVERALL_EXIT[report.overall]


def cmd_examples(args, out=sys.stdout):
    rows = bundled_instances()
    if args.json:
        payload = [{"name": n, "provenance": p, "expect_exit": e}
                   for n, p, e, _ in rows]
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for name, prov, expect, _ in rows:
            out.write("%-24s exit %s  %s\n" % (name, expect, prov))
    return EXIT_VERIFIED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coxcheck",
        description="Verify the hypotheses and the Mukai inequality for Fano "
                    "varieties given by graded Cox-ring presentations.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_check = sub.add_parser("check", help="run every hypothesis and the full "
                                           "inequality certificate")
    p_check.add_argument("path", help="instance file or bundled instance name")
    p_check.add_argument("--json", metavar="PATH",
                         help="also write the full report as JSON")
    p_check.set_defaults(func=cmd_check)
    p_index = sub.add_parser("index", help="print i_X, rho, n and gamma")
    p_index.add_argument("path", help="instance file or bundled instance name")
    p_index.set_defaults(func=cmd_index)
    p_ex = sub.add_parser("examples", help="list bundled instances")
    p_ex.add_argument("--json", action="store_true")
    p_ex.set_defaults(func=cmd_examples)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT_ERROR
    except CoxcheckError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
