"""Command line interface: ``stratos <command> ...``.

Exit status is 0 on success, 2 when an input fails validation (a JSON
diagnostic goes to stderr) and 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .alexandroff import specialization_order, to_space
from .dot import hasse_dot, write_dot
from .errors import InputError, StratosError
from .gottlieb_cat import cat_descents, cat_of_map, evaluation_subgroup_ab, gottlieb_order_check
from .homology import homology_data, im_H
from .homotopy import DEFAULT_BUDGET, default_budget, homotopy_classes, report
from .rational_toy import example_ex1, example_ex1_report, family_report, quotient_classes
from .stratify import is_stratification, star_order

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_USAGE = 64


@dataclass
class Config:
    budget: int = DEFAULT_BUDGET
    coeff: str = "Z"
    output: str | None = None
    dot: str | None = None
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.budget <= 0:
            raise InputError("budget must be positive")
        if self.jobs <= 0:
            raise InputError("jobs must be positive")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _config(args) -> Config:
    return Config(
        budget=default_budget() if args.budget is None else args.budget,
        coeff=getattr(args, "coeff", "Z") or "Z",
        output=args.output,
        dot=getattr(args, "dot", None),
        jobs=args.jobs,
    )


def _emit(cfg: Config, obj) -> None:
    text = obj if isinstance(obj, str) else io.dumps(obj)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def cmd_alex(args, cfg):
    if args.action == "roundtrip":
        p = io.load(args.file, "proset")
        space = to_space(p)
        back = specialization_order(space)
        if back != p:
            raise InputError("specialization order of the Alexandroff space differs from the input")
        if to_space(back) != space:
            raise InputError("Alexandroff space of the specialization order differs")
        _emit(cfg, "OK\n")
    elif args.action == "to-space":
        _emit(cfg, {"schema": "stratos/space@1", **to_space(io.load(args.file, "proset")).to_json()})
    else:  # to-poset
        p = specialization_order(io.load(args.file, "space"))
        if cfg.dot:
            write_dot(cfg.dot, hasse_dot(p))
        _emit(cfg, {"schema": "stratos/poset@1", **p.to_json()})


def cmd_strata(args, cfg):
    d = io.load(args.file, "decomposition")
    rep = is_stratification(d)
    out = {"schema": "stratos/strata@1", **rep.to_json()}
    if rep.disjoint and rep.covering:
        star = star_order(d)
        out["star_order"] = star.to_json()
        if cfg.dot and star.is_partial_order:
            write_dot(cfg.dot, hasse_dot(star, "strata"))
    _emit(cfg, out)


def cmd_homset(args, cfg):
    X = io.load(args.source, "proset")
    Y = io.load(args.target, "proset")
    hs = homotopy_classes(X, Y, cfg.budget)
    out = report(hs, args.flavor)
    if cfg.dot:
        write_dot(cfg.dot, hasse_dot(hs.quotient(args.flavor).poset, f"homset_{args.flavor.upper()}"))
    _emit(cfg, out)


def cmd_homology(args, cfg):
    space = io.load(args.file, "proset")
    data = homology_data(space, args.n, cfg.coeff, cohomology=args.cohomology)
    _emit(
        cfg,
        {
            "schema": "stratos/homology@1",
            "kind": "cohomology" if args.cohomology else "homology",
            "degree": args.n,
            "coefficients": cfg.coeff,
            "group": {**data.group.to_json(), "text": str(data.group)},
            "cycle_representatives": data.lifts,
        },
    )


def cmd_image_order(args, cfg):
    X = io.load(args.source, "proset")
    Y = io.load(args.target, "proset")
    hs = homotopy_classes(X, Y, cfg.budget)
    rep = im_H(hs, args.flavor, args.degree, cfg.coeff)
    if cfg.dot:
        write_dot(cfg.dot, hasse_dot(rep.subgroup_poset(), "subgroups"))
    _emit(cfg, rep.to_json())


def cmd_gottlieb(args, cfg):
    f, base = io.load(args.file, "map")
    base = args.basepoint or base or f.source.elements[0]
    hs = homotopy_classes(f.source, f.target, cfg.budget)
    own = evaluation_subgroup_ab(f, base, hs=hs)
    out = {"map": f.label, "subgroup": own.to_json(), "homotopy_set": gottlieb_order_check(hs, base).to_json()}
    _emit(cfg, out)


def cmd_cat(args, cfg):
    f, _ = io.load(args.file, "map")
    out = {"map": f.label, **cat_of_map(f, cfg.budget).to_json()}
    if args.descents:
        hs = homotopy_classes(f.source, f.target, cfg.budget)
        out["descents"] = cat_descents(hs, jobs=cfg.jobs).to_json()
    _emit(cfg, out)


def _dot_paths(base: str, tags) -> list[Path]:
    p = Path(base)
    suffix = p.suffix or ".dot"
    return [p.with_name(f"{p.stem}.{tag}{suffix}") for tag in tags]


def cmd_rational(args, cfg):
    if args.action == "example-ex1":
        out = example_ex1_report()
        if cfg.dot:
            ex = example_ex1()
            paths = _dot_paths(cfg.dot, ["law1", "law2"])
            for path, key in zip(paths, ["law1", "law2"]):
                write_dot(path, hasse_dot(quotient_classes(ex[key]).poset, key))
            out["dot"] = [str(p) for p in paths]
        _emit(cfg, out)
        return
    if not args.file:
        raise UsageError("rational custom: a family file is required")
    fam = io.load(args.file, "family")
    out = family_report(fam)
    if cfg.dot:
        flavors = ["R"] + (["L"] if fam.left_law is not None else [])
        paths = _dot_paths(cfg.dot, flavors)
        for path, fl in zip(paths, flavors):
            write_dot(path, hasse_dot(quotient_classes(fam, fl).poset, fl))
        out["dot"] = [str(p) for p in paths]
    _emit(cfg, out)


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, help="maximum search size (default: $STRATOS_BUDGET or 10^7)")
    common.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker threads where supported (output is unchanged)")

    parser = _Parser(prog="stratos", description="Ordered homotopy sets of finite spaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("alex", parents=[common], help="finite spaces and prosets")
    p.add_argument("action", choices=["roundtrip", "to-space", "to-poset"])
    p.add_argument("file")
    p.add_argument("--dot")
    p.set_defaults(run=cmd_alex)

    p = sub.add_parser("strata", parents=[common], help="check a decomposition of a finite space")
    p.add_argument("file")
    p.add_argument("--dot")
    p.set_defaults(run=cmd_strata)

    p = sub.add_parser("homset", parents=[common], help="homotopy classes and their quotient poset")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--flavor", choices=["R", "L", "LR"], default="R")
    p.add_argument("--dot")
    p.set_defaults(run=cmd_homset)

    p = sub.add_parser("homology", parents=[common], help="(co)homology of a finite space")
    p.add_argument("file")
    p.add_argument("-n", type=int, required=True, help="degree")
    p.add_argument("--coeff", default="Z", help="Z or a prime field such as F2")
    p.add_argument("--cohomology", action="store_true")
    p.set_defaults(run=cmd_homology)

    p = sub.add_parser("image-order", parents=[common], help="image subgroups of induced maps")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--flavor", choices=["R", "L"], default="R")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--coeff", default="Z")
    p.add_argument("--dot")
    p.set_defaults(run=cmd_image_order)

    p = sub.add_parser("gottlieb", parents=[common], help="evaluation subgroups on H1")
    p.add_argument("file")
    p.add_argument("--basepoint")
    p.set_defaults(run=cmd_gottlieb)

    p = sub.add_parser("cat", parents=[common], help="category of a map")
    p.add_argument("file")
    p.add_argument("--descents", action="store_true", help="also report cat on every class and its descents")
    p.set_defaults(run=cmd_cat)

    p = sub.add_parser("rational", parents=[common], help="rational monomial-law families")
    p.add_argument("action", choices=["example-ex1", "custom"])
    p.add_argument("file", nargs="?")
    p.add_argument("--dot")
    p.set_defaults(run=cmd_rational)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        args.run(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except StratosError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), ensure_ascii=False, sort_keys=True) + "\n")
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
