"""Command-line interface.

Exit codes: 0 when an answer was produced (an obstruction is an answer),
1 on malformed input, 2 when the input is out of scope or undetermined.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalogue import ADEType, get_entry, validate_catalogue
from .engine import OUT_OF_SCOPE, UNDETERMINED, ADEDescriptor, decide, explain
from .errors import ArsError
from .fields import field_from_spec
from .geometry import BranchSystem, CurveConfiguration
from .mesh import mesh_presentation, reduce_ade
from .path_algebra import (
    DEFAULT_LENGTH_CAP,
    format_path,
    format_presentation,
    instantiate,
    parse_presentation,
    quiver_of_algebra,
    radical_power_dims,
)
from .quiver import export_dot, format_translation_quiver, parse_translation_quiver
from .representations import ext_dim, format_representation, is_gorenstein, stable_gp_quiver, standard_module

FORMATS_HELP = """\
file formats
  algebra (.alg):   field Q | field F <p>
                    vertex <label> ...
                    arrow <id> <src> <dst>
                    relation <term> (+|-) <term> ...   term := [<coeff>] <id>(*<id>)*
                    paths are written in traversal order: a*b means a, then b
  translation quiver (.tq):
                    vertex <label>
                    arrow <label> <src> <dst> [<valuation>]
                    tau <x> <y>
  branches:         one polynomial in z0, z1 per line, using * and ^
  curves:           curve <name> [nb=(-1,-1)|other|unknown]
                    meet <a> <b>
  '#' starts a comment everywhere.

environment
  ARSOBSTRUCT_CATALOGUE  overrides the bundled catalogue directory
"""


class UsageError(Exception):
    pass


def _positive(name: str, lo: int = 1, hi: int = 10**6):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"{name} must lie in [{lo}, {hi}]")
        return v
    return conv


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- subcommands

def cmd_decide(args, out) -> int:
    chosen = [x for x in (args.ade, args.branches, args.curves) if x is not None]
    if len(chosen) != 1:
        raise UsageError("decide needs exactly one of --ade, --branches, --curves")
    if args.ade is not None:
        if args.dim is None:
            raise UsageError("--ade needs --dim")
        desc = ADEDescriptor(ADEType.parse(args.ade), args.dim)
    elif args.branches is not None:
        desc = BranchSystem.parse(_read(args.branches), source=args.branches)
    else:
        desc = CurveConfiguration.parse(_read(args.curves), source=args.curves)
    v = decide(desc, args.catalogue)
    out.write(v.dumps() if args.format == "json" else explain(v))
    return 2 if v.outcome in (OUT_OF_SCOPE, UNDETERMINED) else 0


def cmd_ar_show(args, out) -> int:
    entry = get_entry(args.type, args.catalogue)
    tq = entry.ar_quiver
    if args.format == "dot":
        out.write(export_dot(tq))
    elif args.format == "json":
        out.write(_emit_json({
            "type": str(entry.type),
            "vertices": list(tq.vertices),
            "arrows": [[a.source, a.target, tq.valuation[a.id]] for a in tq.arrows],
            "tau": {v: tq.tau[v] for v in tq.vertices},
            "has_loop": entry.has_loop,
            "indecomposable_count": entry.indecomposable_count,
            "in_frakS": entry.in_frakS,
        }))
    else:
        out.write(format_translation_quiver(tq, [f"{entry.type}: has_loop={entry.has_loop} "
                                                 f"in_frakS={entry.in_frakS}"]))
    return 0


def cmd_ar_reduce(args, out) -> int:
    source = ADEType.parse(args.type)
    target, steps = reduce_ade(source, args.catalogue)
    if args.format == "json":
        out.write(_emit_json({
            "source": str(source),
            "target": str(target),
            "steps": [s.to_json() for s in steps],
            "result_vertices": list(steps[-1].result.vertices),
        }))
    elif args.format == "dot":
        out.write(export_dot(steps[-1].result))
    else:
        for s in steps:
            orbits = ", ".join("(" + ",".join(o) + ")" for o in s.orbits)
            out.write(f"{s.source} - {orbits} = {s.target}\n")
        out.write(format_translation_quiver(steps[-1].result, [f"result: AR-quiver of {target}"]))
    return 0


def cmd_mesh(args, out) -> int:
    tq = parse_translation_quiver(_read(args.file), source=args.file)
    F = field_from_spec(args.field)
    pres = mesh_presentation(tq, F)
    alg = instantiate(pres, args.cutoff)
    if args.format == "json":
        out.write(_emit_json({
            "presentation": format_presentation(pres),
            "dimension": alg.dim,
            "radical_dims": radical_power_dims(alg),
        }))
    else:
        out.write(format_presentation(pres))
        out.write(f"# dimension {alg.dim}\n# radical dims {radical_power_dims(alg)}\n")
    return 0


def _load_algebra(args):
    pres = parse_presentation(_read(args.file), source=args.file)
    F = field_from_spec(args.field) if args.field else pres.field
    return instantiate(pres, args.cutoff, field=F)


def cmd_algebra_info(args, out) -> int:
    alg = _load_algebra(args)
    gq = quiver_of_algebra(alg)
    arrows = [[a.source, a.target, gq.valuation[a.id]] for a in gq.arrows]
    info = {
        "field": alg.field.name,
        "dimension": alg.dim,
        "radical_dims": radical_power_dims(alg),
        "nilpotency": alg.nilpotency,
        "basis": [format_path(b) for b in alg.basis],
        "gabriel_quiver": {"vertices": list(gq.vertices), "arrows": arrows},
    }
    if args.format == "json":
        out.write(_emit_json(info))
    elif args.format == "dot":
        out.write(export_dot(gq))
    else:
        out.write(f"field {info['field']}\ndimension {alg.dim}\nradical dims {info['radical_dims']}\n")
        out.write("basis " + " ".join(info["basis"]) + "\n")
        out.write("gabriel quiver\n")
        for s, t, m in arrows:
            out.write(f"  {s} -> {t}" + (f" x{m}" if m != 1 else "") + "\n")
    return 0


def cmd_algebra_ext(args, out) -> int:
    alg = _load_algebra(args)
    i, j = args.simples
    S_i = standard_module(alg, "simple", i)
    S_j = standard_module(alg, "simple", j)
    d = ext_dim(S_i, S_j, args.deg)
    if args.format == "json":
        out.write(_emit_json({"ext": {"from": i, "to": j, "degree": args.deg, "dimension": d}}))
    else:
        out.write(f"dim Ext^{args.deg}(S_{i}, S_{j}) = {d}\n")
    return 0


def cmd_algebra_gp(args, out) -> int:
    if args.field is None:
        args.field = "F2"
    alg = _load_algebra(args)
    if not alg.field.is_finite():
        raise UsageError("the enumeration needs a finite field, e.g. --field F2")
    try:
        bound = [int(x) for x in args.bound.split(",")]
    except ValueError:
        raise UsageError("--bound must be comma-separated integers") from None
    if len(bound) != len(alg.vertices) or any(b < 0 or b > 4 for b in bound):
        raise UsageError(f"--bound needs {len(alg.vertices)} integers in [0, 4]")
    g = is_gorenstein(alg, args.cap + 1)
    sq = stable_gp_quiver(alg, bound, cap=args.cap)
    comps = sq.components()
    if args.format == "json":
        out.write(_emit_json({
            "gorenstein": {"left_idim": str(g.left_idim), "right_idim": str(g.right_idim)},
            "modules": [{"label": lab, "dim_vector": list(m.dim_vector()), "syzygy": (
                sq.quiver.vertices[s] if s is not None else None)}
                for lab, m, s in zip(sq.quiver.vertices, sq.modules, sq.syzygy)],
            "arrows": [[a.source, a.target] for a in sq.quiver.arrows],
            "components": [list(c) for c in comps],
        }))
    elif args.format == "dot":
        out.write(export_dot(sq.quiver))
    else:
        out.write(f"gorenstein: left idim {g.left_idim}, right idim {g.right_idim}\n")
        out.write(f"{len(sq.modules)} non-projective Gorenstein-projective indecomposables\n")
        for lab, m, s in zip(sq.quiver.vertices, sq.modules, sq.syzygy):
            syz = sq.quiver.vertices[s] if s is not None else "outside bound"
            out.write(f"[{lab}] syzygy {syz}\n" + format_representation(m))
        for a in sq.quiver.arrows:
            out.write(f"arrow {a.source} -> {a.target}\n")
        out.write(f"{len(comps)} components: " + "; ".join(" ".join(c) for c in comps) + "\n")
    return 0


def cmd_validate(args, out) -> int:
    reports = validate_catalogue(args.catalogue)
    if args.format == "json":
        out.write(_emit_json([{"entry": r.name, "passed": r.passed, "problems": r.problems,
                               "checks": r.checks} for r in reports]))
    else:
        for r in reports:
            out.write(f"{r.name}: {'pass' if r.passed else 'FAIL'}"
                      + ("" if r.passed else " - " + "; ".join(r.problems)) + "\n")
        bad = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - bad}/{len(reports)} entries pass\n")
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="arsobstruct",
        description="Obstructions for odd-dimensional ADE and cA_n singularities, with exact quiver tools.",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--catalogue", default=None, help="catalogue directory (default: bundled data)")

    d = sub.add_parser("decide", help="decide a singularity")
    d.add_argument("--ade", help="ADE type such as A3, D5, E8")
    d.add_argument("--dim", type=_positive("--dim", 1, 10**4), help="dimension of the hypersurface")
    d.add_argument("--branches", help="file with one branch polynomial per line")
    d.add_argument("--curves", help="curve-configuration file")
    common(d)
    d.set_defaults(func=cmd_decide)

    ar = sub.add_parser("ar", help="catalogue AR-quivers").add_subparsers(dest="ar_command", required=True)
    show = ar.add_parser("show", help="print a catalogue AR-quiver")
    show.add_argument("type")
    common(show, ("text", "dot", "json"))
    show.set_defaults(func=cmd_ar_show)
    red = ar.add_parser("reduce", help="tau-orbit reduction of D_odd and E types")
    red.add_argument("type")
    common(red, ("text", "json", "dot"))
    red.set_defaults(func=cmd_ar_reduce)

    m = sub.add_parser("mesh", help="mesh algebra of a translation quiver")
    m.add_argument("file")
    m.add_argument("--field", default="Q")
    m.add_argument("--cutoff", type=_positive("--cutoff", 1, 4096), default=DEFAULT_LENGTH_CAP)
    common(m)
    m.set_defaults(func=cmd_mesh)

    alg = sub.add_parser("algebra", help="path algebras").add_subparsers(dest="alg_command", required=True)

    def alg_common(sp, formats=("text", "json")):
        sp.add_argument("file")
        sp.add_argument("--field", default=None, help="override the field of the file (Q, F2, F3, ...)")
        sp.add_argument("--cutoff", type=_positive("--cutoff", 1, 4096), default=DEFAULT_LENGTH_CAP)
        common(sp, formats)

    info = alg.add_parser("info", help="dimension, radical filtration, Gabriel quiver")
    alg_common(info, ("text", "json", "dot"))
    info.set_defaults(func=cmd_algebra_info)
    ext = alg.add_parser("ext", help="dim Ext^k between simples")
    alg_common(ext)
    ext.add_argument("--simples", nargs=2, metavar=("I", "J"), required=True)
    ext.add_argument("--deg", type=_positive("--deg", 0, 64), required=True)
    ext.set_defaults(func=cmd_algebra_ext)
    gp = alg.add_parser("gp", help="Gorenstein-projective modules and the stable quiver")
    alg_common(gp, ("text", "json", "dot"))
    gp.add_argument("--bound", required=True, help="dimension-vector bound, e.g. 2,2,2")
    gp.add_argument("--cap", type=_positive("--cap", 1, 64), default=8)
    gp.set_defaults(func=cmd_algebra_gp)

    v = sub.add_parser("validate-catalogue", help="check every catalogue entry")
    common(v)
    v.set_defaults(func=cmd_validate)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args, out)
    except (ArsError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
