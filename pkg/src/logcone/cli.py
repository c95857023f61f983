"""Command-line interface: ``logcone <group> <command> [file] [options]``.

Exit codes: 0 every check passed, 1 some check failed, 2 bad input, 3 size guard.
"""

import argparse
import random
import sys

from . import charts, cones, homs, lattice, monoids, pans, sampling
from .documents import dumps, load_document, to_jsonable
from .errors import (
    ExponentNotFound,
    InputError,
    InputTooLargeError,
    LogconeError,
)
from .lattice import LatticeHom
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TOO_LARGE = 0, 1, 2, 3


class Outcome:
    """What a command produced: a report plus an optional computed value."""

    def __init__(self, report, result=None):
        self.report = report
        self.result = result


def _check(title, name, ok, **details):
    r = Report(title)
    r.add(name, ok, **details)
    return Outcome(r)


def _value(title, result):
    return Outcome(Report(title), result)


# ---------------------------------------------------------------------------
# object selection


def _pick(args, kind, count):
    """``count`` objects of ``kind``: the ``--obj`` names in order, else the first ones."""
    doc = load_document(args.file)
    names = list(args.obj or [])
    if names:
        if len(names) < count:
            raise InputError("$.objects", f"need {count} {kind} objects, --obj named {len(names)}")
        names = names[:count]
    else:
        names = doc.names_of_type(kind)[:count]
        if len(names) < count:
            raise InputError("$.objects", f"need {count} objects of type {kind}, found {len(names)}")
    return [doc.get(n, kind) for n in names]


def _pick_all(args, kind, minimum=1):
    doc = load_document(args.file)
    names = list(args.obj or doc.names_of_type(kind))
    if len(names) < minimum:
        raise InputError("$.objects", f"need at least {minimum} objects of type {kind}")
    return [doc.get(n, kind) for n in names]


def _named(args, name, kind):
    return load_document(args.file).get(name, kind)


def _pan_morphism(args):
    doc = load_document(args.file)
    matrices = doc.names_of_type("matrix")
    if not matrices:
        raise InputError("$.objects", "need a matrix object for the lattice map")
    m = doc.get(matrices[0], "matrix")
    src, tgt = _pick(args, "pan", 2)
    return pans.PanMorphism(m, src, tgt, check=False)


# ---------------------------------------------------------------------------
# handlers


def cmd_lattice(args):
    (m,) = _pick(args, "matrix", 1)
    op = args.op
    if op == "snf":
        s = lattice.smith_normal_form(m)
        return _value("lattice snf", {"u": s.u, "d": s.d, "v": s.v,
                                      "invariant_factors": s.invariant_factors})
    if op == "kernel":
        return _value("lattice kernel", {"basis": lattice.kernel_basis(m)})
    if op == "cokernel":
        free, tors = lattice.cokernel_invariants(m)
        return _value("lattice cokernel", {"free_rank": free, "torsion_factors": tors})
    gens = [tuple(r) for r in m.matrix]
    return _value("lattice saturate", {"basis": lattice.saturate_sublattice(gens, m.source.rank)})


def cmd_cone(args):
    (c,) = _pick(args, "cone", 1)
    if args.op == "dual":
        return _value("cone dual", cones.dual_cone(c))
    return _value("cone faces", cones.faces(c))


def cmd_fan(args):
    op = args.op
    if op == "complete":
        (f,) = _pick(args, "fan", 1)
        out = cones.complete_fan(f)
        return _value("fan complete", out)
    if op == "validate":
        (f,) = _pick(args, "fan", 1)
        return _check("fan validate", "valid_fan", cones.is_valid_fan(f))
    f, g = _pick(args, "fan", 2)
    if op == "refine":
        return _value("fan refine", cones.common_refinement(f, g))
    if op == "subdivision":
        return _check("fan subdivision", "is_subdivision", cones.is_subdivision(f, g))
    return _check("fan subfan", "is_subfan", cones.is_subfan(f, g))


def cmd_monoid(args):
    op = args.op
    (m,) = _pick(args, "monoid", 1)
    title = f"monoid {op}"
    if op == "hilbert":
        return _value(title, {"hilbert_basis": monoids.hilbert_basis(m)})
    if op == "saturate":
        return _value(title, monoids.saturation(m))
    if op == "faces":
        return _value(title, monoids.monoid_faces(m))
    if op == "dual":
        return _value(title, monoids.dual_monoid(m))
    if op == "units":
        return _value(title, {"units_basis": monoids.units(m)})
    if op == "sharpen":
        return _value(title, monoids.sharpen(m))
    if op == "spec-fan":
        return _value(title, cones.spec_fan(m))
    if op == "is-saturated":
        return _check(title, "is_saturated", monoids.is_saturated(m))
    if op == "is-sharp":
        return _check(title, "is_sharp", monoids.is_sharp(m))
    if op == "contains":
        if args.point is None:
            raise InputError("--point", "monoid contains needs --point")
        return _check(title, "contains", monoids.contains(m, tuple(args.point)), point=args.point)
    if args.face is None:
        raise InputError("--face", "monoid localize needs --face NAME")
    face = _named(args, args.face, "face")
    return _value(title, monoids.localize_at_face(face.parent, face))


PREDICATES = {
    "injective": homs.is_injective,
    "local": homs.is_local,
    "exact": homs.is_exact,
    "locally-exact": homs.is_locally_exact,
    "kummer": homs.is_kummer,
}


def cmd_check_hom(args):
    (h,) = _pick(args, "hom", 1)
    pred = args.predicate
    if pred == "critical-faces":
        crit = homs.critical_faces(h)
        maximal = homs.maximal_critical_faces(h)
        faces = [{"generators": f.generators, "dim": f.dim, "maximal": f in maximal} for f in crit]
        return _value("check hom critical-faces", {"critical_faces": faces,
                                                   "maximal": [f.generators for f in maximal]})
    return _check(f"check hom {pred}", pred.replace("-", "_"), PREDICATES[pred](h))


def cmd_pushout(args):
    if args.mult is not None:
        (h,) = _pick(args, "hom", 1)
        ok = homs.is_pushout_saturated_along_mult(h, args.mult)
        return _check("pushout mult", f"saturated_along_mult_{args.mult}", ok, n=args.mult)
    if args.find_exponent is not None or args.base_change_exponent is not None:
        (h,) = _pick(args, "hom", 1)
        finder, n_max, title = (
            (homs.find_saturation_exponent, args.find_exponent, "pushout find-exponent")
            if args.find_exponent is not None
            else (homs.find_base_change_exponent, args.base_change_exponent,
                  "pushout base-change-exponent"))
        try:
            cert = finder(h, n_max)
        except ExponentNotFound as exc:
            return _check(title, "exponent_found", False, n_max=exc.n_max)
        return _check(title, "exponent_found", True, exponent=cert.exponent,
                      witness=cert.witness.integral)
    h, k = _pick(args, "hom", 2)
    if args.sharpened:
        cmp = homs.compare_sharpened_pushouts(h, k)
        return _check("pushout sharpened", "paths_agree", cmp.isomorphic,
                      direct=cmp.direct, via_sharpened=cmp.via_sharpened, comparison=cmp.comparison)
    po = homs.integral_pushout(h, k)
    return _value("pushout", {"integral": po.integral, "fs": po.fs, "relations": po.relations,
                              "saturated": po.is_saturated()})


def cmd_pan(args):
    op = args.op
    title = f"pan {op}"
    if op == "pan7":
        (h,) = _pick(args, "hom", 1)
        doc = load_document(args.file)
        face_names = [args.face] if args.face else doc.names_of_type("face")[:1]
        if not face_names:
            raise InputError("$.objects", "pan pan7 needs a face object")
        face = doc.get(face_names[0], "face")
        if face.parent != h.target:
            face = monoids.face_spanned_by(h.target, face.generators)
        return Outcome(pans.verify_pan7_setup(h, face))
    if op in ("isogeny", "vertical"):
        m = _pan_morphism(args)
        if op == "isogeny":
            return _check(title, "is_isogeny", pans.is_isogeny(m))
        return _value(title, pans.vertical_locus(m))
    if op in ("convex", "monoid", "halfspace"):
        (a,) = _pick(args, "pan", 1)
        if op == "convex":
            return _check(title, "is_strongly_convex", pans.is_strongly_convex(a))
        if op == "monoid":
            return _value(title, pans.monoid_of_pan(a))
        xs = [tuple(x) for x in (args.covector or [])]
        return _value(title, pans.halfspace_region(a, xs))
    if op in ("cover", "cech", "refine"):
        a, *parts = _pick_all(args, "pan", 1)
        if op == "cover":
            return _check(title, "is_closed_cover", pans.is_closed_cover(a, parts))
        if op == "refine":
            return _value(title, pans.refine_for_subpans(a, parts))
        cube = pans.cech_cube(a, parts)
        cells = [{"index": list(k), "pan": v} for k, v in sorted(cube.cells.items())]
        return _value(title, {"cells": cells})
    a, b = _pick(args, "pan", 2)
    if op == "equal":
        return _check(title, "pan_equal", pans.pan_equal(a, b))
    if op == "subpan":
        return _check(title, "is_subpan_inclusion",
                      pans.is_subpan_inclusion(
                          pans.PanMorphism(LatticeHom.identity(b.lattice), a, b, check=False)))
    if op == "union":
        return _value(title, pans.pan_union(a, b))
    return _value(title, pans.pan_intersection(a, b))


def cmd_chart(args):
    (c,) = _pick(args, "chart_complex", 1)
    report = charts.validate_gluing(c)
    element = tuple(args.element) if args.element else charts.XY
    report.add("structure_map", charts.check_structure_map(c, element), element=list(element))
    return Outcome(report)


# built-in suites -----------------------------------------------------------


def suite_localization_figure(args):
    return charts.verify_localization_figure()


def suite_w_complex(args):
    data = charts.build_w_complex()
    report = charts.verify_charts(data)
    report.extend(charts.verify_w_bullets(data), prefix="bullets:")
    return report


def suite_conserv_charts(args):
    report = Report("conserv-charts")
    for p_name, p in (("N", monoids.AffineMonoid.free(1)), ("N2", monoids.AffineMonoid.free(2))):
        for n in (1, 2, 3):
            c = homs.build_conserv_charts(p, n)
            tag = f"{p_name}:n={n}"
            ident = c.first_proj.compose(c.eta).group_map == LatticeHom.identity(p.lattice)
            report.add(f"{tag}:eta_injective_local", homs.is_injective(c.eta) and homs.is_local(c.eta))
            report.add(f"{tag}:first_proj_after_eta_is_identity", ident)
            report.add(f"{tag}:incl_injective_local", homs.is_injective(c.incl) and homs.is_local(c.incl))
            maximal = homs.maximal_critical_faces(c.eta)
            summands = homs.summand_faces(c)
            report.add(f"{tag}:summands_are_maximal_critical", all(s in maximal for s in summands),
                       maximal=[f.generators for f in maximal])
            if p.rank == 1:
                report.add(f"{tag}:only_summands_are_maximal_critical",
                           len(maximal) == 2 and all(s in maximal for s in summands))
    return report


BUILTINS = {
    "localization-figure": suite_localization_figure,
    "w-complex": suite_w_complex,
    "conserv-charts": suite_conserv_charts,
}


def prop_sharpened_pushout(rng, count):
    report = Report("property sharpened-pushout")
    bad = 0
    for _ in range(count):
        h, k = sampling.random_pushout_data(rng)
        if not homs.compare_sharpened_pushouts(h, k).isomorphic:
            bad += 1
    report.add("two_paths_agree", bad == 0, instances=count, counterexamples=bad)
    return report


def prop_exact_implies_local(rng, count):
    report = Report("property exact-implies-local")
    bad = exact = 0
    for _ in range(count):
        h = sampling.random_hom(rng)
        if homs.is_exact(h):
            exact += 1
            bad += not homs.is_local(h)
    report.add("exact_implies_local", bad == 0, instances=count, exact=exact, counterexamples=bad)
    return report


def prop_dual_involution(rng, count):
    report = Report("property dual-involution")
    bad = 0
    for _ in range(count):
        c = sampling.random_pointed_cone(rng, rng.randint(1, 4))
        bad += cones.dual_cone(cones.dual_cone(c)) != c
    report.add("dual_dual_is_identity", bad == 0, instances=count, counterexamples=bad)
    return report


PROPERTIES = {
    "sharpened-pushout": prop_sharpened_pushout,
    "exact-implies-local": prop_exact_implies_local,
    "dual-involution": prop_dual_involution,
}


def cmd_verify(args):
    if args.kind == "builtin":
        return Outcome(BUILTINS[args.name](args))
    rng = random.Random(args.seed)
    return Outcome(PROPERTIES[args.name](rng, args.count))


# ---------------------------------------------------------------------------
# parser

# Every public library operation and the subcommand that exposes it.
OPERATIONS = {
    "smith_normal_form": "lattice snf",
    "kernel_basis": "lattice kernel",
    "cokernel_invariants": "lattice cokernel",
    "saturate_sublattice": "lattice saturate",
    "dual_cone": "cone dual",
    "faces": "cone faces",
    "common_refinement": "fan refine",
    "is_subdivision": "fan subdivision",
    "is_subfan": "fan subfan",
    "complete_fan": "fan complete",
    "validate_fan": "fan validate",
    "spec_fan": "monoid spec-fan",
    "hilbert_basis": "monoid hilbert",
    "saturation": "monoid saturate",
    "is_saturated": "monoid is-saturated",
    "is_sharp": "monoid is-sharp",
    "units": "monoid units",
    "sharpen": "monoid sharpen",
    "monoid_faces": "monoid faces",
    "localize_at_face": "monoid localize",
    "dual_monoid": "monoid dual",
    "contains": "monoid contains",
    "is_injective": "check hom",
    "is_local": "check hom",
    "is_exact": "check hom",
    "is_locally_exact": "check hom",
    "is_kummer": "check hom",
    "critical_faces": "check hom",
    "maximal_critical_faces": "check hom",
    "integral_pushout": "pushout",
    "sharpened_pushout": "pushout",
    "compare_sharpened_pushouts": "pushout",
    "is_pushout_saturated_along_mult": "pushout",
    "find_saturation_exponent": "pushout",
    "find_base_change_exponent": "pushout",
    "build_conserv_charts": "verify builtin",
    "pan_of_fan": "pan equal",
    "pan_equal": "pan equal",
    "is_subpan_inclusion": "pan subpan",
    "pan_union": "pan union",
    "pan_intersection": "pan intersect",
    "refine_for_subpans": "pan refine",
    "is_closed_cover": "pan cover",
    "cech_cube": "pan cech",
    "is_strongly_convex": "pan convex",
    "monoid_of_pan": "pan monoid",
    "is_isogeny": "pan isogeny",
    "vertical_locus": "pan vertical",
    "halfspace_region": "pan halfspace",
    "verify_pan7_setup": "pan pan7",
    "build_w_complex": "verify builtin",
    "validate_gluing": "chart validate",
    "check_structure_map": "chart validate",
    "verify_w_bullets": "verify builtin",
    "verify_localization_figure": "verify builtin",
}


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS,
                   help="output format (default: text)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for property suites (default: 0)")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write the report to this path")
    return p


def _with_file(sub, name, common, help_text, ops=None):
    p = sub.add_parser(name, parents=[common], help=help_text)
    if ops:
        p.add_argument("op", choices=ops)
    p.add_argument("file", help="input document (JSON)")
    p.add_argument("--obj", action="append", metavar="NAME",
                   help="object names to use, in order (repeatable)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="logcone", parents=[common],
                                     description="Exact fan, monoid and pan computations.")
    sub = parser.add_subparsers(dest="group", required=True)

    p = _with_file(sub, "lattice", common, "integer linear algebra",
                   ["snf", "kernel", "cokernel", "saturate"])
    p.set_defaults(handler=cmd_lattice)

    p = _with_file(sub, "cone", common, "cones", ["dual", "faces"])
    p.set_defaults(handler=cmd_cone)

    p = _with_file(sub, "fan", common, "fans",
                   ["refine", "complete", "subdivision", "subfan", "validate"])
    p.set_defaults(handler=cmd_fan)

    p = _with_file(sub, "monoid", common, "affine monoids",
                   ["hilbert", "saturate", "faces", "dual", "units", "sharpen", "spec-fan",
                    "is-saturated", "is-sharp", "contains", "localize"])
    p.add_argument("--point", type=int, nargs="+", help="lattice point for contains")
    p.add_argument("--face", help="face object for localize")
    p.set_defaults(handler=cmd_monoid)

    check = sub.add_parser("check", parents=[common], help="predicates on homomorphisms")
    check_sub = check.add_subparsers(dest="what", required=True)
    p = _with_file(check_sub, "hom", common, "monoid homomorphism predicates")
    p.add_argument("--predicate", required=True, choices=list(PREDICATES) + ["critical-faces"])
    p.set_defaults(handler=cmd_check_hom)

    p = _with_file(sub, "pushout", common, "pushouts along homomorphisms")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--mult", type=int, metavar="N", help="test saturation along x -> N x")
    g.add_argument("--find-exponent", type=int, metavar="N_MAX",
                   help="smallest n <= N_MAX with a saturated pushout along x -> n x")
    g.add_argument("--base-change-exponent", type=int, metavar="N_MAX",
                   help="smallest n <= N_MAX whose fs base change is saturated along small multiples")
    g.add_argument("--sharpened", action="store_true",
                   help="compare both ways of computing the sharpened fs pushout")
    p.set_defaults(handler=cmd_pushout)

    p = _with_file(sub, "pan", common, "pans",
                   ["equal", "union", "intersect", "cover", "cech", "pan7", "subpan", "refine",
                    "convex", "monoid", "isogeny", "vertical", "halfspace"])
    p.add_argument("--covector", type=int, nargs="+", action="append",
                   help="covector x for halfspace (repeatable)")
    p.add_argument("--face", help="face object for pan7")
    p.set_defaults(handler=cmd_pan)

    chart = sub.add_parser("chart", parents=[common], help="chart complexes")
    chart_sub = chart.add_subparsers(dest="what", required=True)
    p = _with_file(chart_sub, "validate", common, "gluing and structure-map checks")
    p.add_argument("--element", type=int, nargs="+", help="structure element (default 1 1)")
    p.set_defaults(handler=cmd_chart)

    verify = sub.add_parser("verify", parents=[common], help="built-in verification suites")
    verify_sub = verify.add_subparsers(dest="kind", required=True)
    p = verify_sub.add_parser("builtin", parents=[common], help="worked examples")
    p.add_argument("name", choices=list(BUILTINS))
    p.set_defaults(handler=cmd_verify)
    p = verify_sub.add_parser("property", parents=[common], help="seeded randomized suites")
    p.add_argument("name", choices=list(PROPERTIES))
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(handler=cmd_verify)
    return parser


# ---------------------------------------------------------------------------
# output


def _payload(argv, outcome):
    report = outcome.report
    data = {
        "command": list(argv),
        "title": report.title,
        "overall": report.overall,
        "checks": [c.to_dict() for c in report.checks],
    }
    if outcome.result is not None:
        data["result"] = outcome.result
    return data


def _text(data):
    lines = [f"{data['title']}: {data['overall'].upper()}"]
    for c in data.get("checks", []):
        details = ", ".join(f"{k}={v}" for k, v in sorted(c["details"].items()))
        lines.append(f"  [{c['status']}] {c['name']}" + (f"  ({details})" if details else ""))
    if "result" in data:
        lines.append(f"  result: {to_jsonable(data['result'])}")
    return "\n".join(lines) + "\n"


def _error_payload(argv, kind, exc, path=None):
    details = {"error": kind, "message": str(exc)}
    if path is not None:
        details["path"] = path
    return {"command": list(argv), "title": "error", "overall": "error",
            "checks": [{"name": kind, "status": "error", "details": details}]}


def _emit(data, fmt, out):
    text = dumps(data) if fmt == "json" else _text(data)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Run one command and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    fmt = getattr(args, "format", "text")
    out = getattr(args, "out", None)
    args.seed = getattr(args, "seed", 0)
    try:
        outcome = args.handler(args)
    except InputError as exc:
        _emit(_error_payload(argv, "input_error", exc, exc.path), fmt, out)
        return EXIT_INPUT
    except InputTooLargeError as exc:
        _emit(_error_payload(argv, "input_too_large", exc), fmt, out)
        return EXIT_TOO_LARGE
    except (LogconeError, ValueError) as exc:
        _emit(_error_payload(argv, type(exc).__name__, exc), fmt, out)
        return EXIT_INPUT
    data = _payload(argv, outcome)
    _emit(data, fmt, out)
    return EXIT_OK if outcome.report.passed else EXIT_FAIL


def main():
    sys.exit(run())
