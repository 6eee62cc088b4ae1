"""Command-line front end: ``ramcovers <command> --p P [options]``.

Exit codes: 0 success, 1 a check failed or the computation could not be carried
out, 2 bad usage or unparsable input.
"""

import argparse
import json
import sys

from . import __version__
from .deform import (
    RamCondition,
    brill_noether_dims,
    expected_dim_fixed_target,
    expected_dim_varying_source,
    solve_first_order,
)
from .errors import (
    ConstantMap,
    FieldTooLarge,
    NotIrreducible,
    NotPrime,
    ParseError,
    RamCoversError,
    ZeroMap,
)
from .expr import (
    parse_branch,
    parse_condition,
    parse_element,
    parse_map_expression,
    parse_rational,
    render,
    render_element,
    render_point,
    render_poly,
)
from .fields import PrimeField, build_field, is_prime, level_field
from .golden import golden_suite
from .moduli import (
    DEFAULT_BUDGET,
    BranchCondition,
    Filters,
    count_mod_pgl2,
    count_moduli,
    enumerate_maps,
    estimate_dimension,
    linear_system_fixed_branch,
    random_points,
)
from .ramify import ramification_profile, riemann_hurwitz_defect
from .wildtame import construct_wild_polynomial, lift_tame_to_wild, reduce_wild_to_tame

SCHEMA = "ramcovers.report/v1"

USAGE_ERRORS = (ParseError, NotPrime, NotIrreducible, FieldTooLarge, ZeroMap, ConstantMap)


class UsageError(Exception):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(sp):
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--k", type=int, default=1, help="extension degree of the base field")
    sp.add_argument("--modulus", help="defining polynomial of F_{p^k} over F_p, e.g. 'x^2+2'")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on enumerated candidate vectors")
    sp.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = _Parser(prog="ramcovers", description="Ramification of rational maps in characteristic p.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("analyze", help="ramification profile and Riemann-Hurwitz check")
    _common(sp)
    sp.add_argument("--map", required=True)

    sp = sub.add_parser("deform", help="first-order deformations with ramification conditions")
    _common(sp)
    sp.add_argument("--map", required=True)
    sp.add_argument("--cond", action="append", default=[], help="point:e (repeatable)")

    sp = sub.add_parser("expected-dim", help="closed-form dimension predictions")
    _common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--e", type=int, action="append", default=[], help="ramification index (repeatable)")
    sp.add_argument("--delta", type=int, action="append", default=None, help="0/1 indicator per index")
    sp.add_argument("--genus", type=int, default=0, help="genus of the source curve")
    sp.add_argument("--target-genus", type=int, default=0)
    sp.add_argument("--wild", type=int, default=None, help="number of wild points (default: indices divisible by p)")

    sp = sub.add_parser("count", help="count maps over F_q, F_{q^2}, ... and estimate the dimension")
    _common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--cond", action="append", default=[], help="point:e; the point may be 'random'")
    sp.add_argument("--branch", action="append", default=[], help="point:e->value (fixed branch values)")
    sp.add_argument("--tower", type=int, default=2, help="count over levels 1..tower")
    sp.add_argument("--unramified-elsewhere", action="store_true")

    sp = sub.add_parser("reduce", help="reduce a map wild at infinity to a tame one")
    _common(sp)
    sp.add_argument("--map", required=True)

    sp = sub.add_parser("lift", help="add c*x^p to a tame map")
    _common(sp)
    sp.add_argument("--map", required=True)
    sp.add_argument("--c", default="1")

    sp = sub.add_parser("construct", help="degree-p polynomial with prescribed finite ramification")
    _common(sp)
    sp.add_argument("--cond", action="append", default=[], help="finite point:e (repeatable)")
    sp.add_argument("--scale", default="1", help="scale of the derivative")
    sp.add_argument("--top", default="1", help="coefficient of x^p")

    sp = sub.add_parser("verify-golden", aliases=["verify-paper"], help="rerun the worked examples")
    _common(sp)
    return parser


# -- helpers -------------------------------------------------------------------


def _field(args):
    modulus = None
    if args.modulus:
        if not is_prime(args.p):
            raise NotPrime(f"{args.p} is not prime")
        num, den = parse_rational(args.modulus, PrimeField(args.p))
        if len(den) != 1:
            raise ParseError("modulus must be a polynomial", 0)
        modulus = num
    return build_field(args.p, args.k, modulus)


def _profile_json(prof):
    f = prof.map
    pts = []
    for rp in prof.points:
        item = {"point": render_point(rp.point), "orbit_size": rp.degree, "e": rp.e, "d": rp.d, "wild": rp.wild}
        if rp.minpoly is not None:
            item["minpoly"] = render_poly(f.field, rp.minpoly)
        pts.append(item)
    return {
        "map": render(f),
        "degree": f.degree,
        "points": pts,
        "total_different": prof.total_different,
        "rh_defect": riemann_hurwitz_defect(prof),
    }


def _config(args):
    cfg = {}
    for key, val in sorted(vars(args).items()):
        if key in ("format", "handler"):
            continue
        cfg[key] = val
    return cfg


# -- commands ------------------------------------------------------------------


def cmd_analyze(args, F, warnings):
    f = parse_map_expression(args.map, F)
    prof = ramification_profile(f)
    res = _profile_json(prof)
    return res, res["rh_defect"] == 0


def cmd_deform(args, F, warnings):
    f = parse_map_expression(args.map, F)
    conds = [RamCondition(*parse_condition(c, F)) for c in args.cond]
    rep = solve_first_order(f, conds)
    Fr = rep.conditions[0].point.field if rep.conditions else F
    res = {
        "map": render(f),
        "conditions": [{"point": render_point(c.point), "e": c.e} for c in rep.conditions],
        "deltas": list(rep.deltas),
        "solver_dim": rep.solver_dim,
        "formula_dim": rep.formula_dim,
        "agrees": rep.agrees,
        "basis": [
            {
                "A": render_poly(Fr, list(a)),
                "B": render_poly(Fr, list(b)),
                "x": [render_element(Fr, v) for v in xs],
            }
            for a, b, xs in rep.basis
        ],
    }
    return res, rep.agrees


def cmd_expected_dim(args, F, warnings):
    es = list(args.e)
    p = F.p
    if args.delta is not None:
        if len(args.delta) != len(es):
            raise UsageError("give one --delta per --e")
        deltas = list(args.delta)
    else:
        deltas = [0 if e == 0 or e % p == 0 else 1 for e in es]
    wild = args.wild if args.wild is not None else sum(1 for e in es if e > 0 and e % p == 0)
    fixed = expected_dim_fixed_target(args.degree, list(zip(es, deltas)), args.genus)
    varying = expected_dim_varying_source(args.degree, (args.genus, args.target_genus), es)
    bn = brill_noether_dims(args.degree, args.genus, [e for e in es if e > 0], wild)
    if fixed is None:
        warnings.append({"code": "Indeterminate", "detail": "Riemann-Roch is not exact for this twist"})
    res = {
        "fixed_target": "indeterminate" if fixed is None else fixed,
        "varying_source": varying,
        "deltas": deltas,
        "brill_noether": {
            "maps_mod_target_automorphisms": bn.maps_dim,
            "branch_fiber": bn.branch_fiber_dim,
            "wild_count": bn.wild_dim if bn.wild_applicable else "inapplicable",
        },
    }
    return res, True


def _resolve_conditions(texts, F, seed):
    fixed, random_es = [], []
    for t in texts:
        point, sep, e = t.rpartition(":")
        if sep and point.strip() == "random":
            try:
                random_es.append(int(e))
            except ValueError:
                raise ParseError(f"bad ramification index {e!r}", len(point) + 1) from None
        else:
            fixed.append(RamCondition(*parse_condition(t, F)))
    taken = [c.point.value for c in fixed]
    fresh = random_points(F, len(random_es), seed, exclude=taken)
    if any(pt in [c.point for c in fixed] for pt in fresh):
        raise UsageError("random point collided with a fixed one")
    return fixed + [RamCondition(pt, e) for pt, e in zip(fresh, random_es)]


def cmd_count(args, F, warnings):
    filters = Filters(require_unramified_elsewhere=args.unramified_elsewhere)
    levels = tuple(range(1, args.tower + 1))
    if args.branch:
        if args.cond:
            raise UsageError("use either --cond or --branch")
        bconds = [parse_branch(b, F) for b in args.branch]
        rows = []
        spent = 0
        for m in levels:
            K = level_field(F, m)
            space = linear_system_fixed_branch(K, args.degree, [BranchCondition(pt.to(K), v.to(K), e) for pt, e, v in bconds])
            en = enumerate_maps(space, filters, args.budget - spent, level=m, collect=False)
            spent += space.projective_size
            rows.append(en.row)
        count_mod_pgl2(rows)
        for r in rows:
            if not r.integral:
                warnings.append({"code": "NonIntegralQuotient", "level": r.level, "value": str(r.mod_pgl2)})
        est = estimate_dimension([(r.level, r.exact_ram_count) for r in rows], F.order)
        res = {
            "mode": "fixed-branch",
            "degree": args.degree,
            "conditions": [{"point": render_point(pt), "e": e, "value": render_point(v)} for pt, e, v in bconds],
            "rows": [r.as_dict() for r in rows],
            "dimension_estimate": est.as_dict(),
        }
        return res, True
    conds = _resolve_conditions(args.cond, F, args.seed)
    rep = count_moduli(F, args.degree, conds, levels, filters, args.budget, args.workers, args.seed)
    warnings.extend(rep.warnings)
    pred = rep.prediction
    expected = pred.wild_dim if pred.wild_applicable else pred.maps_dim
    res = {
        "mode": "free-branch",
        "degree": args.degree,
        "conditions": [{"point": render_point(c.point), "e": c.e} for c in rep.conditions],
        "rows": [r.as_dict() for r in rep.rows],
        "dimension_estimate": rep.estimate.as_dict(),
        "prediction": {
            "maps_mod_target_automorphisms": pred.maps_dim,
            "branch_fiber": pred.branch_fiber_dim,
            "wild_count": pred.wild_dim if pred.wild_applicable else "inapplicable",
        },
        "matches_prediction": rep.estimate.estimate == expected if rep.estimate.stable else None,
    }
    if rep.estimate.stable and rep.estimate.estimate != expected:
        warnings.append({"code": "PredictionMismatch", "estimate": rep.estimate.estimate, "predicted": expected})
    return res, True


def _transcript_json(F, transcript):
    return [s.as_dict(lambda c: render_poly(F, list(c))) for s in transcript.steps]


def cmd_reduce(args, F, warnings):
    f = parse_map_expression(args.map, F)
    g, tr = reduce_wild_to_tame(f)
    return {"map": render(f), "reduced": render(g), "steps": _transcript_json(F, tr)}, True


def cmd_lift(args, F, warnings):
    f = parse_map_expression(args.map, F)
    c = parse_element(args.c, F)
    g = lift_tame_to_wild(f, c)
    return {"map": render(f), "c": render_element(F, c), "lifted": render(g), "degree": g.degree}, True


def cmd_construct(args, F, warnings):
    conds = [parse_condition(c, F) for c in args.cond]
    f = construct_wild_polynomial(F.p, conds, parse_element(args.scale, F), parse_element(args.top, F), field=F)
    prof = ramification_profile(f)
    return {"map": render(f), "profile": _profile_json(prof)}, True


def cmd_verify(args, F, warnings):
    verdicts = golden_suite(args.p, args.seed)
    return {"verdicts": [v.as_dict() for v in verdicts]}, all(v.passed for v in verdicts)


COMMANDS = {
    "analyze": cmd_analyze,
    "deform": cmd_deform,
    "expected-dim": cmd_expected_dim,
    "count": cmd_count,
    "reduce": cmd_reduce,
    "lift": cmd_lift,
    "construct": cmd_construct,
    "verify-golden": cmd_verify,
    "verify-paper": cmd_verify,
}


# -- output --------------------------------------------------------------------


def _table(doc):
    lines = [f"command: {doc['command']}", f"status: {doc['status']}"]
    if "error" in doc:
        err = doc["error"]
        lines.append(f"error [{err['code']}]: {err['message']}")
    res = doc.get("result") or {}

    def emit(prefix, val):
        if isinstance(val, dict):
            for k, v in val.items():
                emit(f"{prefix}{k}.", v)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            for i, v in enumerate(val):
                emit(f"{prefix[:-1]}[{i}].", v)
        else:
            lines.append(f"  {prefix[:-1]}: {val}")

    emit("", res)
    for w in doc["warnings"]:
        lines.append(f"warning: {json.dumps(w, ensure_ascii=False)}")
    return "\n".join(lines)


def run(argv):
    """Parse, dispatch and build the report document; returns (document, exit code)."""
    parser = build_parser()
    warnings = []
    doc = {"schema": SCHEMA, "command": None, "config": {}, "result": None, "warnings": warnings, "status": "ok"}
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        doc["command"] = args.command
        doc["config"] = _config(args)
        F = _field(args)
        result, ok = COMMANDS[args.command](args, F, warnings)
        doc["result"] = result
        if not ok:
            doc["status"] = "failed"
            return doc, 1
        return doc, 0
    except (UsageError, *USAGE_ERRORS) as exc:
        doc["status"] = "error"
        doc["error"] = _error(exc)
        return doc, 2
    except RamCoversError as exc:
        doc["status"] = "error"
        doc["error"] = _error(exc)
        return doc, 1
    except ValueError as exc:
        # e.g. repeated condition points: still a problem with the input
        doc["status"] = "error"
        doc["error"] = {"code": "InvalidInput", "message": str(exc)}
        return doc, 2


def _error(exc):
    err = {"code": getattr(exc, "code", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, ParseError):
        err["position"] = exc.position
    return err


def _requested_format(argv):
    for i, a in enumerate(argv):
        if a == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--format="):
            return a.split("=", 1)[1]
    return "table"


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        build_parser().parse_args(argv)
    doc, code = run(argv)
    fmt = _requested_format(argv)
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    else:
        out = sys.stdout if code == 0 or doc["status"] == "failed" else sys.stderr
        out.write(_table(doc) + "\n")
    return code
