"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any fails, 2 for usage
errors and 3 when a size bound is hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .coxeter import SizeBoundError
from .homology import DEFAULT_MAX_CELLS
from .specs import (CHECKS, SCHEMA, SpecError, building_from_spec, load_json,
                    normalize_job, pole_from_spec, pole_label, write_cached_complex)

log = logging.getLogger("hemilab")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _load_spec(args) -> dict:
    if not args.spec:
        raise UsageError("--spec is required")
    try:
        return load_json(args.spec)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read spec {args.spec}: {exc}") from exc


def _pole_doc(arg):
    if arg is None:
        return None
    if os.path.exists(arg):
        return load_json(arg)
    if ":" in arg:
        return arg
    raise UsageError(f"--pole must be a file, vertex:ID or barycenter:ID,ID (got {arg!r})")


def _building(args):
    doc = _load_spec(args)
    return doc, building_from_spec(doc)


def _need_pole(args, B):
    doc = _pole_doc(args.pole)
    if doc is None:
        raise UsageError("--pole is required")
    return doc, pole_from_spec(B, doc)


# -- subcommands -------------------------------------------------------------------

def cmd_generate(args) -> int:
    doc, B = _building(args)
    spec = B.spec()
    path, hit = write_cached_complex(B, spec, args.cache)
    if args.out:
        Path(args.out).write_text(B.complex.dumps() + "\n")
    info = {"schema": SCHEMA, "spec": spec, "path": str(path), "cache_hit": hit,
            "facets": len(B.complex.facets), "f_vector": list(B.complex.f_vector()),
            "thick": B.is_thick()}
    sys.stdout.write(_json(info))
    return EXIT_OK


def cmd_classify(args) -> int:
    from .metric import classify, classify_cap

    doc, B = _building(args)
    pdoc, x = _need_pole(args, B)
    cls = classify(B, x) if args.t is None else classify_cap(B, x, Fraction(args.t))
    out = {"schema": SCHEMA, "spec": B.spec(), "pole": pole_label(pdoc), "describe": x.describe(),
           "counts": cls.counts(), **cls.to_json()}
    if args.t is not None:
        out["t"] = args.t
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_filtrate(args) -> int:
    from .filtration import Filtration

    doc, B = _building(args)
    pdoc, x = _need_pole(args, B)
    F = Filtration(B, x)
    out = {"schema": SCHEMA, "spec": B.spec(), "pole": pole_label(pdoc), **F.summary(),
           "heights": [{"simplex": sorted(t), "height": F.heights[t]} for t in F.image]}
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_homology(args) -> int:
    from .homology import is_homotopy_CM, pi1_trivial
    from .supports import hemisphere

    doc, B = _building(args)
    X = B.complex
    label = "building"
    if args.vertices:
        vs = [int(v) for v in args.vertices.split(",") if v.strip()]
        K, label = X.full_subcomplex(vs), f"full subcomplex on {len(vs)} vertices"
    elif args.support != "all":
        pdoc, x = _need_pole(args, B)
        K = hemisphere(B, x, args.support.upper()).complex
        label = f"{args.support} at {pole_label(pdoc)}"
    else:
        K = X
    v = is_homotopy_CM(K, args.max_cells or DEFAULT_MAX_CELLS)
    out = {"schema": SCHEMA, "spec": B.spec(), "complex": label,
           "f_vector": [] if K.is_empty() else list(K.f_vector()), **v.to_json()}
    if args.pi1 and K.dim() >= 2:
        out["pi1"] = pi1_trivial(K)
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import dumps_report, run_job

    doc = _load_spec(args)
    checks = [c.strip() for c in args.checks.split(",")] if args.checks else None
    poles = None
    if args.pole:
        poles = [_pole_doc(args.pole)]
    elif args.poles:
        poles = args.poles
    job = normalize_job(doc, checks=checks, poles=poles, seed=args.seed, max_cells=args.max_cells)
    report = run_job(job, jobs=args.jobs or 1)
    text = dumps_report(report)
    _emit(text, args.out)
    s = report["summary"]
    log.info("verify: %d pass, %d fail, %d advisory, %d skipped",
             s["pass"], s["fail"], s["advisory"], s["skipped"])
    return EXIT_FAIL if report["status"] == "fail" else EXIT_OK


def cmd_export_dot(args) -> int:
    from .export import to_dot
    from .metric import classify

    doc, B = _building(args)
    cls, verts, name = None, None, "building"
    if args.pole:
        pdoc, x = _need_pole(args, B)
        cls = classify(B, x)
        name = pole_label(pdoc)
        if args.apartment and hasattr(x, "chart"):
            verts = x.chart.image
    _emit(to_dot(B.complex, cls, verts, name), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    from .plotting import write_report
    from .specs import expand_poles

    doc, B = _building(args)
    if args.pole:
        poles = [_pole_doc(args.pole)]
    else:
        sel = args.poles or doc.get("poles", "types")
        poles = expand_poles(B, sel)
    outdir = args.out or "report"
    for p in write_report(B, poles, outdir, seed=args.seed or 0,
                              max_cells=args.max_cells or DEFAULT_MAX_CELLS):
        log.info("wrote %s", p)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "classify": cmd_classify,
    "filtrate": cmd_filtrate,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
    "report": cmd_report,
}


def _poles_arg(s: str):
    if s in ("vertices", "edges", "all", "types"):
        return s
    return [p for p in s.split(";") if p]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="building or job JSON file")
    common.add_argument("--pole", help='pole file, "vertex:ID" or "barycenter:ID,ID"')
    common.add_argument("--out", help="output file (directory for report)")
    common.add_argument("--seed", type=int)
    common.add_argument("--cache", help="cache directory (default $HEMILAB_CACHE or .cache)")
    common.add_argument("--jobs", type=int, default=os.cpu_count(),
                        help="worker processes for verify")
    common.add_argument("--max-cells", type=int,
                        help="simplex bound for homology computations (default 200000)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hemilab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="build and cache a complex")
    c = sub.add_parser("classify", parents=[common], help="LT/EQ/GT class of every vertex")
    c.add_argument("--t", help="cap threshold (rational); default compares with pi/2")
    sub.add_parser("filtrate", parents=[common], help="restriction image, heights and stages")
    h = sub.add_parser("homology", parents=[common], help="reduced homology and CM link suite")
    h.add_argument("--support", choices=["all", "ge", "gt", "eq"], default="all")
    h.add_argument("--vertices", help="comma separated vertex ids; full subcomplex to examine")
    h.add_argument("--pi1", action="store_true", help="also try to certify pi1 trivial")
    v = sub.add_parser("verify", parents=[common], help="run a verification job")
    v.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")
    v.add_argument("--poles", type=_poles_arg,
                   help="vertices, edges, all, types, or ';'-separated pole shorthands")
    e = sub.add_parser("export-dot", parents=[common], help="DOT graph of the 1-skeleton")
    e.add_argument("--apartment", action="store_true",
                   help="restrict to the apartment chart of the pole")
    r = sub.add_parser("report", parents=[common], help="PNG figures and a CSV summary")
    r.add_argument("--poles", type=_poles_arg)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except SizeBoundError as exc:
        print(f"hemilab: size bound: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, SpecError) as exc:
        print(f"hemilab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as exc:
        # bad vertex ids or malformed pole data
        print(f"hemilab: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
