"""Command line interface.

    mfboundary info      (--catalog NAME:PARAMS | FILE) [--json]
    mfboundary boundary  ... [--export-presentation OUT]
    mfboundary cover     --modulus D ...
    mfboundary tower     ...
    mfboundary report    ...
    mfboundary table1    [CORPUS_DIR] [--json] [-j N]

Exit codes: 0 all checks pass or are not applicable, 2 a check failed,
1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import pipeline
from .arrangement import (ArrangementError, assumption_star, b1_milnor_boundary,
                          char_poly_and_betti, double_point_count, l2_flats,
                          multiplicity_tuple, parse_catalog_spec)
from .covers import BadDivisor, ModulusNotPowerOfTwo, h1_cover, tower_stats
from .osalgebra import OddLineCount, alpha0
from .plumbing import Infeasible, boundary_manifold, h1


def _emit(obj, as_json: bool, text: str):
    if as_json:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _load(args):
    if args.catalog and args.file:
        raise ArrangementError("give either --catalog or a file, not both")
    if args.catalog:
        return parse_catalog_spec(args.catalog), {}, "catalog:" + args.catalog
    if not args.file:
        raise ArrangementError("no input: give --catalog NAME:PARAMS or a .arr file")
    return pipeline.load_config(args.file)


def cmd_info(args) -> int:
    config, _, label = _load(args)
    betti = char_poly_and_betti(config)
    obj = {
        "label": label,
        "n": config.n,
        "flats": [list(f.lines) for f in l2_flats(config) if f.multiplicity > 2],
        "double_points": double_point_count(config),
        "multiplicity_tuple": list(multiplicity_tuple(config)),
        "charpoly": list(betti.charpoly),
        "b_M": list(betti.b_M),
        "b_U": list(betti.b_U),
        "chi_U": betti.chi_U,
        "assumption_star": assumption_star(config),
    }
    if config.n >= 3:
        obj["b1_milnor_boundary"] = b1_milnor_boundary(config)
    if config.n >= 3 and config.n % 2 == 0:
        obj["alpha0"] = alpha0(config)
    text = "".join(f"{k:20s} {v}\n" for k, v in obj.items())
    _emit(obj, args.json, text)
    return 0


def cmd_boundary(args) -> int:
    config, _, label = _load(args)
    bd = boundary_manifold(config)
    if args.export_presentation:
        with open(args.export_presentation, "w", encoding="utf-8") as fh:
            fh.write(bd.presentation.to_text())
    g = h1(bd.presentation)
    obj = {
        "label": label,
        "plumbing": bd.graph.summary(),
        "generators": bd.presentation.ngens,
        "relators": len(bd.presentation.relators),
        "simplified_generators": bd.simplified.ngens,
        "simplified_relators": len(bd.simplified.relators),
        "h1": dict(g.to_json(), str=str(g)),
        "character_point_fibers": {
            lab: bd.character.value_of(bd.presentation, lab)
            for lab in bd.presentation.generators if lab.startswith("g[P")},
    }
    text = (f"plumbing  {obj['plumbing']}\n"
            f"pi_1      {obj['generators']} generators, {obj['relators']} relators "
            f"({obj['simplified_generators']}/{obj['simplified_relators']} simplified)\n"
            f"H1(dU)    {g}\n")
    _emit(obj, args.json, text)
    return 0


def cmd_cover(args) -> int:
    config, _, label = _load(args)
    bd = boundary_manifold(config)
    d = args.modulus if args.modulus else config.n
    g = h1_cover(bd.simplified, bd.simplified_character, d)
    obj = {"label": label, "degree": d, "h1": dict(g.to_json(), str=str(g)),
           "even_torsion": g.even_torsion}
    _emit(obj, args.json, f"H1 of the {d}-fold cover: {g}\n")
    return 0


def cmd_tower(args) -> int:
    config, _, label = _load(args)
    bd = boundary_manifold(config)
    ts = tower_stats(bd.simplified, bd.simplified_character)
    obj = dict(ts.to_json(), label=label)
    rows = []
    for k in range(ts.m + 1):
        rows.append([2 ** k, str(ts.levels[k]), ts.b1(k), ts.b1_mod2(k), ts.tau(k),
                     ts.alpha(k) if k < ts.m else "", ts.rho(k) if k < ts.m else ""])
    text = pipeline.format_table(rows, ["degree", "H1", "b1", "b1 mod 2", "tau", "alpha", "rho"])
    _emit(obj, args.json, text)
    return 0


def cmd_report(args) -> int:
    config, notes, label = _load(args)
    rep = pipeline.run(config, label, notes)
    if args.json:
        sys.stdout.write(pipeline.report_json(rep))
    else:
        sys.stdout.write(pipeline.report_text(rep))
    return pipeline.exit_code([rep])


def cmd_table1(args) -> int:
    summary = pipeline.table1_harness(args.corpus, parallelism=args.jobs)
    _emit(summary, args.json, pipeline.table1_text(summary))
    return 0 if summary["all_match"] and summary["all_checks_ok"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfboundary",
        description="Homology of Milnor fiber boundaries of line arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", nargs="?", help=".arr configuration file")
        p.add_argument("--catalog", metavar="NAME:PARAMS",
                       help="generic:N, pencil:N, near_pencil:N, maclane, "
                            "with_concurrencies:N:1,2,3;4,5,6")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    with_input(sub.add_parser("info", help="poset invariants")).set_defaults(func=cmd_info)
    p = with_input(sub.add_parser("boundary", help="plumbing graph and H1 of the boundary manifold"))
    p.add_argument("--export-presentation", metavar="OUT",
                   help="write the pi_1 presentation in gen/rel text format")
    p.set_defaults(func=cmd_boundary)
    p = with_input(sub.add_parser("cover", help="H1 of a cyclic cover"))
    p.add_argument("--modulus", type=int, help="degree of the cover (divides n; default n)")
    p.set_defaults(func=cmd_cover)
    with_input(sub.add_parser("tower", help="tower of double covers (n a power of 2)")
               ).set_defaults(func=cmd_tower)
    with_input(sub.add_parser("report", help="full report with checks")).set_defaults(func=cmd_report)
    p = sub.add_parser("table1", help="regression against the eight-line table")
    p.add_argument("corpus", nargs="?", help="directory of annotated .arr files")
    p.add_argument("--json", action="store_true")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ArrangementError, BadDivisor, ModulusNotPowerOfTwo, OddLineCount,
            Infeasible, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
