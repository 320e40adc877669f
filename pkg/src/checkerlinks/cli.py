"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .classify import (
    Solid,
    census_to_csv,
    classify,
    reference_diagram,
    weaving_census,
    weaving_diagram,
)
from .diagram import PDParseError, analyze, emit_pd, parse_pd_lines
from .hypgeom import regular_ngon_target
from .realize import inscribe_solid, polyhedron_volume, realize_solid

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(x: float) -> str:
    return f"{x:.10g}"


def rounded(obj):
    """Round every float in a JSON-able structure to 10 significant digits."""
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(rounded(obj), indent=2)


def _read_one_diagram(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as err:
            raise UsageError(f"cannot read {path}: {err.strerror}") from None
    diagrams = parse_pd_lines(text)
    if len(diagrams) != 1:
        raise UsageError(f"expected exactly one diagram in {path}, found {len(diagrams)}")
    return diagrams[0]


def _solid(name: str) -> Solid:
    try:
        return Solid.parse(name)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance (default 1e-9)")

    parser = _Parser(prog="checkerlinks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="combinatorial report on a PD diagram")
    p.add_argument("--pd", required=True, metavar="FILE", help="PD file, or - for stdin")

    p = sub.add_parser("classify", parents=[common], help="verdict for one diagram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", metavar="FILE")
    src.add_argument("--solid", type=_solid)
    src.add_argument("--weaving", nargs=2, type=int, metavar=("P", "Q"))

    p = sub.add_parser("weaving", parents=[common], help="build a weaving knot diagram")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--emit-pd", action="store_true")

    p = sub.add_parser("census", parents=[common], help="classify W(p,q) over a range")
    p.add_argument("--max-p", type=int, required=True)
    p.add_argument("--max-q", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("realize", parents=[common], help="right-angled realisation checks")
    p.add_argument("--solid", type=_solid, required=True)

    p = sub.add_parser("volume", parents=[common], help="polyhedron and right-angled volume")
    p.add_argument("--solid", type=_solid, required=True)

    p = sub.add_parser("crossratio", parents=[common], help="regular ideal n-gon cross ratio")
    p.add_argument("--n", type=int, required=True)
    return parser


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_analyze(args, out: TextIO) -> int:
    report = analyze(_read_one_diagram(args.pd))
    if args.json:
        print(dump_json(report.to_dict()), file=out)
        return EXIT_OK
    for name in ("alternating", "reduced", "split", "prime", "torus2q", "has_bigon", "has_triangle"):
        print(f"{name}: {_yes(getattr(report, name))}", file=out)
    print(f"components: {report.components}", file=out)
    faces = " ".join(f"{k}:{v}" for k, v in report.face_vector.items())
    print(f"face_vector: {faces}", file=out)
    return EXIT_OK


def _cmd_classify(args, out: TextIO) -> int:
    if args.pd is not None:
        d = _read_one_diagram(args.pd)
    elif args.solid is not None:
        d = reference_diagram(args.solid)
    else:
        d = weaving_diagram(*args.weaving)
    verdict = classify(d)
    print(dump_json(verdict.to_dict()) if args.json else str(verdict), file=out)
    return EXIT_OK


def _cmd_weaving(args, out: TextIO) -> int:
    d = weaving_diagram(args.p, args.q)
    report = analyze(d)
    if args.json:
        data = {"p": args.p, "q": args.q, "crossings": d.n, "report": report.to_dict()}
        if args.emit_pd:
            data["pd"] = emit_pd(d)
        print(dump_json(data), file=out)
        return EXIT_OK
    faces = " ".join(f"{k}:{v}" for k, v in report.face_vector.items())
    print(f"W({args.p},{args.q}): {d.n} crossings, {report.components} components, faces {faces}", file=out)
    if args.emit_pd:
        print(emit_pd(d), file=out)
    return EXIT_OK


def _cmd_census(args, out: TextIO) -> int:
    rows = weaving_census(args.max_p, args.max_q)
    if args.json:
        print(dump_json([r.to_dict() for r in rows]), file=out)
    elif args.csv:
        out.write(census_to_csv(rows))
    else:
        print(f"{'p':>3} {'q':>3} {'crossings':>9}  verdict", file=out)
        for r in rows:
            print(f"{r.p:>3} {r.q:>3} {r.crossings:>9}  {r.verdict}", file=out)
    return EXIT_OK


def _cmd_realize(args, out: TextIO) -> int:
    report = realize_solid(args.solid, tol=args.tol)
    if args.json:
        print(dump_json(report.to_dict()), file=out)
    else:
        angles = report.dihedral_angles.values()
        worst_angle = max(abs(a - 1.5707963267948966) for a in angles)
        worst_cusp = max(
            max(abs(a - 1.5707963267948966) for a in c["angles"]) for c in report.cusps
        )
        print(f"solid: {report.solid}", file=out)
        print(f"vertices: {len(report.vertices)}  edges: {len(report.dihedral_angles)}  "
              f"faces: {len(report.face_residuals)}", file=out)
        print(f"max |dihedral - pi/2|: {fmt(worst_angle)}", file=out)
        print(f"max face regularity residual: {fmt(max(report.face_residuals))}", file=out)
        print(f"max |cusp angle - pi/2|: {fmt(worst_cusp)}", file=out)
        print(f"edge classes: {len(report.edge_class_sizes)} of size "
              f"{sorted(set(report.edge_class_sizes))}", file=out)
        print(f"volume: {fmt(report.volume)}  vol_perp: {fmt(report.vol_perp)}", file=out)
        for name, ok in report.checks.items():
            print(f"{name}: {'pass' if ok else 'FAIL'}", file=out)
    if not report.ok:
        raise VerificationError(f"realisation checks failed for {report.solid}")
    return EXIT_OK


def _cmd_volume(args, out: TextIO) -> int:
    p = inscribe_solid(args.solid)
    vol = polyhedron_volume(p)
    far = int((p.vertices @ p.vertices[0]).argmin())
    if abs(vol - polyhedron_volume(p, apex=far, fan_root=1)) > 1e-8:
        raise VerificationError("volume depends on the coning vertex")
    if args.json:
        print(dump_json({"solid": args.solid.label, "volume": vol, "vol_perp": 2 * vol}), file=out)
    else:
        print(f"vol = {fmt(vol)}", file=out)
        print(f"vol_perp = {fmt(2 * vol)}", file=out)
    return EXIT_OK


def _cmd_crossratio(args, out: TextIO) -> int:
    target = regular_ngon_target(args.n)
    if args.json:
        value = None if target.is_infinite else target.value.real
        print(dump_json({"n": args.n, "target": value, "infinite": target.is_infinite}), file=out)
    else:
        print("inf" if target.is_infinite else fmt(target.value.real), file=out)
    return EXIT_OK


COMMANDS = {
    "analyze": _cmd_analyze,
    "classify": _cmd_classify,
    "weaving": _cmd_weaving,
    "census": _cmd_census,
    "realize": _cmd_realize,
    "volume": _cmd_volume,
    "crossratio": _cmd_crossratio,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_INPUT
    except (PDParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())
