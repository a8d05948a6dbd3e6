"""Command-line front end.

    python -m gencollatz hyperplanes --catalog zsqrt2
    python -m gencollatz bound --catalog section4:d=3,b=1 --format text
    python -m gencollatz trajectory --map mymap.json --point 1,0 --max-steps 100

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""
import argparse
import csv
import json
import sys
import time
from fractions import Fraction

import mpmath

from . import catalog, density, geometry, trajectory
from .errors import CollatzError, ParseError
from .mapcore import is_relatively_prime_type, shift_span_rank, strictly_positive_witness, validate_map


# -- map documents ------------------------------------------------------------------

def parse_map_file(text):
    """Parse and validate a JSON map document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("map document must be a JSON object")
    for key in ("rank", "d", "entries"):
        if key not in doc:
            raise ParseError(f"map document lacks {key!r}")
    if not isinstance(doc["entries"], list):
        raise ParseError("'entries' must be a list")
    table = {}
    for n, entry in enumerate(doc["entries"]):
        if not isinstance(entry, dict) or not {"residue", "m", "r"} <= set(entry):
            raise ParseError(f"entry {n} must have 'residue', 'm' and 'r'")
        res, r, m = entry["residue"], entry["r"], entry["m"]
        if not (isinstance(res, list) and isinstance(r, list) and isinstance(m, int)):
            raise ParseError(f"entry {n}: residue and r must be lists, m an integer")
        if len(res) != doc["rank"]:
            raise ParseError(f"entry {n}: residue {res} does not have rank {doc['rank']}")
        key = tuple(res)
        if key in table:
            raise ParseError(f"entry {n}: duplicate residue {res}")
        table[key] = (m, tuple(r))
    try:
        return validate_map(doc["d"], table)
    except CollatzError as exc:
        raise type(exc)(f"{exc} (in map document)") from None


def emit_map(cmap):
    """The JSON document for ``cmap``; inverse of :func:`parse_map_file`."""
    entries = [{"residue": list(w), "m": m, "r": list(r)}
               for w, (m, r) in sorted(cmap.table.items())]
    return json.dumps({"rank": cmap.rank, "d": cmap.modulus, "entries": entries}, indent=2)


# -- helpers ---------------------------------------------------------------------------

def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, mpmath.mpf):
        return float(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _point(text):
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; use e.g. 1,0") from None


def _outcome(o):
    if isinstance(o, trajectory.Cycle):
        return {"kind": "cycle", "preperiod": o.preperiod, "period": o.period}
    if isinstance(o, trajectory.CertifiedDivergent):
        return {"kind": "certified_divergent", "witness_step": o.witness_step}
    return {"kind": "exceeded_cap", "steps": o.steps}


def _signs(signs):
    return "".join("+" if s > 0 else "-" for s in signs)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _section4_params(name):
    if name and name.startswith("section4:"):
        catalog.parse_catalog_name(name)
        parts = dict(p.split("=") for p in name.split(":", 1)[1].split(","))
        return catalog.Section4Params(int(parts["d"]), int(parts["b"]))
    return None


# -- commands --------------------------------------------------------------------------

def cmd_validate(cmap, args):
    witness = strictly_positive_witness(cmap.shifts, rank=cmap.rank)
    return {
        "valid": True,
        "relatively_prime_type": is_relatively_prime_type(cmap),
        "shift_span_rank": shift_span_rank(cmap),
        "acute": witness is not None,
        "positive_form": list(witness.coeffs) if witness else None,
        "document": json.loads(emit_map(cmap)),
    }


def cmd_trajectory(cmap, args):
    tame = geometry.build_tame_cone(cmap) if args.certify_divergence else None
    out = _outcome(trajectory.detect_cycle(cmap, args.point, args.max_steps, tame))
    out["point"] = list(args.point)
    return out


def cmd_stopping(cmap, args):
    res = trajectory.stopping_time(cmap, args.point, args.norm, args.cap)
    return {"point": list(args.point), "norm": args.norm, "cap": res.cap, "stopping_time": res.k}


def cmd_hyperplanes(cmap, args):
    forms = geometry.enumerate_separating_forms(cmap)
    if args.csv:
        _write_csv(args.csv, [f"a{i + 1}" for i in range(cmap.rank)], [f.coeffs for f in forms])
    return {"count": len(forms), "forms": [list(f.coeffs) for f in forms]}


def cmd_cones(cmap, args):
    tame = geometry.build_tame_cone(cmap)
    rows = [(i, _signs(c.signs), int(c.wild)) for i, c in enumerate(tame.chambers)]
    if args.csv:
        _write_csv(args.csv, ["chamber_id", "sign_vector", "wild"], rows)
    return {
        "forms": [list(f.coeffs) for f in tame.forms],
        "chambers": [{"chamber_id": i, "sign_vector": s, "wild": bool(w)} for i, s, w in rows],
        "wild_count": sum(r[2] for r in rows),
        "shift_cone_halfspaces": [list(n) for n in tame.shift_cone.halfspaces],
    }


def cmd_bound(cmap, args):
    est = density.divergence_density_bound(cmap, args.norm, args.mc_samples, args.seed)
    out = {"bound": float(est.value), "kind": est.kind, "ci_halfwidth": est.ci_halfwidth}
    if est.kind == "monte_carlo":
        out["samples"], out["seed"] = est.samples, est.seed
    params = _section4_params(args.catalog)
    if params is not None:
        ref = float(catalog.section4_closed_form_bound(params))
        out["closed_form"] = ref
        out["abs_difference"] = abs(ref - float(est.value))
    return out


def cmd_density_exact(cmap, args):
    tame = geometry.build_tame_cone(cmap)
    series = []
    for r in args.radius:
        v = density.exact_tame_lattice_density(cmap, r, args.norm, tame=tame).value
        series.append({"radius": r, "exact_density": str(v), "float": float(v)})
    if args.csv:
        _write_csv(args.csv, ["radius", "exact_density"], [(s["radius"], s["exact_density"]) for s in series])
    return {"series": series}


def cmd_ak(cmap, args):
    series = []
    for k in range(1, args.k_max + 1):
        a = density.ak_fraction(cmap, k).fraction
        series.append({"k": k, "a_k": str(a), "float": float(a)})
    if args.csv:
        _write_csv(args.csv, ["k", "a_k"], [(s["k"], s["a_k"]) for s in series])
    return {"series": series}


def cmd_hypothesis(cmap, args):
    ph = density.product_hypothesis(cmap)
    return {"holds": ph.holds, "product": str(ph.product), "threshold": str(ph.threshold)}


def cmd_sample_divergent(cmap, args):
    est = density.empirical_divergence_fraction(cmap, args.radius, args.cap, args.samples,
                                                args.seed, norm=args.norm, shards=args.shards)
    return {"fraction": est.value, "ci_halfwidth": est.ci_halfwidth, "samples": est.samples,
            "seed": est.seed, "max_steps": args.cap, "radius": args.radius}


def cmd_sample_stopping(cmap, args):
    est = density.empirical_stopping_fraction(cmap, args.radius, args.cap, args.samples,
                                              args.seed, args.norm, shards=args.shards)
    return {"fraction": est.value, "ci_halfwidth": est.ci_halfwidth, "samples": est.samples,
            "seed": est.seed, "cap": args.cap, "radius": args.radius}


def cmd_report(cmap, args):
    from .reproduce import run_checks
    checks = run_checks()
    return {"checks": checks, "all_passed": all(c["passed"] for c in checks)}


COMMANDS = {
    "validate": cmd_validate,
    "trajectory": cmd_trajectory,
    "stopping": cmd_stopping,
    "hyperplanes": cmd_hyperplanes,
    "cones": cmd_cones,
    "bound": cmd_bound,
    "density-exact": cmd_density_exact,
    "ak": cmd_ak,
    "hypothesis": cmd_hypothesis,
    "sample-divergent": cmd_sample_divergent,
    "sample-stopping": cmd_sample_stopping,
    "report": cmd_report,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--map", metavar="FILE", help="JSON map document")
    src.add_argument("--catalog", metavar="NAME", help="zsqrt2 or section4:d=<D>,b=<B>")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="gencollatz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("validate")
    p = add("trajectory")
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--certify-divergence", action="store_true")
    p = add("stopping")
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--norm", choices=["euclidean", "sup"], default="euclidean")
    for name in ("hyperplanes", "cones"):
        add(name).add_argument("--csv", metavar="PATH")
    p = add("bound")
    p.add_argument("--mc-samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", choices=["euclidean", "sup"], default="euclidean")
    p = add("density-exact")
    p.add_argument("--radius", type=lambda s: [int(x) for x in s.split(",")], default=[10])
    p.add_argument("--norm", choices=["euclidean", "sup"], default="euclidean")
    p.add_argument("--csv", metavar="PATH")
    p = add("ak")
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--csv", metavar="PATH")
    add("hypothesis")
    for name in ("sample-divergent", "sample-stopping"):
        p = add(name)
        p.add_argument("--radius", type=int, default=1000)
        p.add_argument("--samples", type=int, default=500)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=200)
        p.add_argument("--shards", type=int, default=1)
        p.add_argument("--norm", choices=["euclidean", "sup"], default="euclidean")
    add("report")
    return parser


def _glue_negative_points(argv):
    # argparse reads "-1,1" as a flag; bind it to --point explicitly
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok == "--point" and nxt[:1] == "-" and nxt[1:2].isdigit():
            out.append(f"--point={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _load(args):
    if args.map:
        with open(args.map) as fh:
            return parse_map_file(fh.read())
    if args.catalog:
        return catalog.parse_catalog_name(args.catalog)
    return None


def _render_text(report):
    lines = [f"command: {report['command']}"]
    if report.get("map"):
        m = report["map"]
        lines.append(f"map: d={m['d']} rank={m['rank']} multipliers={m['multipliers']}")

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}{k}.", x)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, x in enumerate(v):
                walk(f"{prefix}{i}.", x)
        else:
            lines.append(f"{prefix[:-1]}: {v}")

    walk("", report["results"])
    return "\n".join(lines) + "\n"


def run_command(argv):
    """Run one command; return ``(report dict or None, exit code)``.

    The report is also printed (or written to ``--out``).
    """
    parser = build_parser()
    argv = _glue_negative_points(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, exc.code
    start = time.perf_counter()
    try:
        cmap = _load(args)
        if cmap is None and args.command != "report":
            parser.error("one of --map or --catalog is required")
        results = COMMANDS[args.command](cmap, args)
    except SystemExit as exc:
        return None, exc.code
    except ValueError as exc:
        print(f"gencollatz: error: {exc}", file=sys.stderr)
        return None, 2
    except CollatzError as exc:
        report = {"command": args.command, "error": {"code": exc.code, "message": str(exc)}}
        print(json.dumps(report, sort_keys=True), file=sys.stderr)
        return report, 1
    report = {
        "command": args.command,
        "args": {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "out", "format")},
        "map": None if cmap is None else {
            "d": cmap.modulus, "rank": cmap.rank, "multipliers": sorted(cmap.multipliers)},
        "results": results,
        "seed": getattr(args, "seed", None),
    }
    if args.timing:
        report["timing_s"] = time.perf_counter() - start
    report = _jsonable(report)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report, 0


def main(argv=None):
    _, code = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
