from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from .bounds import AxiomRegistry, bundled_axioms, complexity_bounds, load_axioms
from .catalog import CATALOG, catalog_names, catalog_run
from .config import Budgets, DEFAULT_BUDGETS, budgets_from_mapping, load_budgets
from .errors import FormatError, KrlabError, ParseError
from .flows import FlowEngine
from .green import depth, green, green_frame
from .hull import in_hull, link_solve, RowMonomial
from .io_formats import (
    format_derivation,
    format_machine,
    parse_generator,
    read_flow,
    read_script,
    read_semigroup,
    write_flow,
)
from .rees import format_lpf
from .rhodes import parse_spc
from .semigroup import SemigroupTable, rlm, tilson_congruence, type_ii
from .states import derivation_script, find_contradiction, replay_derivation, wff_trace
from .verify import search_flow, verify_flow

logger = logging.getLogger("krlab")


# ---- Helpers ----
def _emit(args: argparse.Namespace, items: Sequence[Tuple[str, Any]]) -> None:
    if args.format == "machine":
        print(format_machine(items))
        return
    width = max((len(k) for k, _ in items), default=0)
    for key, value in items:
        print(f"{key.ljust(width)} : {value}")


def _budgets(args: argparse.Namespace) -> Budgets:
    budgets = load_budgets(args.settings) if args.settings else DEFAULT_BUDGETS
    overrides = {}
    for item in args.budget or []:
        if "=" not in item:
            raise FormatError(f"--budget expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    if overrides:
        merged = asdict(budgets)
        merged.update(overrides)
        budgets = budgets_from_mapping(merged)
    return budgets.replace(word_bound=args.word_bound)


def _axioms(args: argparse.Namespace) -> AxiomRegistry:
    return load_axioms(args.axioms) if args.axioms else bundled_axioms()


def _load(args: argparse.Namespace, path: str) -> Tuple[str, SemigroupTable]:
    spec = read_semigroup(path)
    table = spec.build(_budgets(args))
    logger.info("%s: %d elements", spec.name, table.size)
    return spec.name, table


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


# ---- Commands ----
def cmd_build(args: argparse.Namespace) -> int:
    name, table = _load(args, args.file)
    ctx = table.ctx
    _emit(args, [
        ("name", name),
        ("group", ctx.group.label or ctx.group.order),
        ("A", ctx.n_a),
        ("B", ctx.n_b),
        ("gm", _bool(ctx.is_gm)),
        ("elements", table.size),
        ("generators", " ".join(table.generator_names)),
    ])
    return 0


def cmd_green(args: argparse.Namespace) -> int:
    name, table = _load(args, args.file)
    gd = green(table)
    frame = green_frame(table, gd)
    if args.format == "machine":
        _emit(args, [("j_classes", gd.n_j), ("depth", depth(table, gd))])
    else:
        print(frame.to_string(index=False))
    if args.plot:
        from .plots import plot_j_poset

        out = plot_j_poset(table, args.plot, gd=gd, title=name)
        print(f"Saved plot: {out}")
    return 0


def cmd_rlm(args: argparse.Namespace) -> int:
    _, table = _load(args, args.file)
    if not table.ctx.is_gm:
        logger.warning("context is not GM; the right letter mapping is still computed")
    image = rlm(table.ctx, table)
    _emit(args, [
        ("elements", table.size),
        ("rlm_elements", image.table.size),
        ("rlm_depth", depth(image.table)),
    ])
    return 0


def cmd_type2(args: argparse.Namespace) -> int:
    _, table = _load(args, args.file)
    sub = type_ii(table)
    ideal = [sub.name_of(i) for i in range(sub.size) if table.is_ideal(sub.parent_indices[i])]
    classes = tilson_congruence(table.ctx, table)
    group = table.ctx.group
    labels = table.ctx.b_labels
    text = [" ".join(f"({group.name(g)},{labels[b]})" for g, b in sorted(c, key=lambda p: (p[1], p[0]))) for c in classes]
    _emit(args, [("type_ii_elements", sub.size), ("type_ii_ideal", " ".join(ideal))])
    for k, cls in enumerate(text):
        print(f"class {k}: {cls}" if args.format == "text" else f"class_{k}={cls}")
    return 0


def cmd_depth(args: argparse.Namespace) -> int:
    _, table = _load(args, args.file)
    _emit(args, [("depth", depth(table))])
    return 0


def cmd_hull(args: argparse.Namespace) -> int:
    spec = read_semigroup(args.file)
    ctx = spec.ctx
    f = parse_generator(ctx, args.element)
    y = link_solve(ctx, RowMonomial.from_lpf(f))
    items: List[Tuple[str, Any]] = [("element", format_lpf(ctx, f)), ("in_hull", _bool(in_hull(ctx, f)))]
    if y is not None:
        cols = []
        for a, e in enumerate(y.cols):
            cols.append("0" if e is None else f"{ctx.a_labels[e[0]]}:{ctx.group.name(e[1])}")
        items.append(("Y", " ".join(cols)))
    _emit(args, items)
    return 0 if y is not None else 1


def cmd_eval(args: argparse.Namespace) -> int:
    _, table = _load(args, args.file)
    engine = FlowEngine(table, _budgets(args))
    script = read_script(args.script)
    start_text = args.start or script.start
    if start_text is None:
        raise FormatError("No start value: pass --start or put 'start:' in the script")
    d = wff_trace(engine, script.wff, parse_spc(engine.lattice, start_text))
    if args.format == "machine":
        _emit(args, [(f"step_{k}", str(s.result)) for k, s in enumerate(d.steps)] + [("final", str(d.final))])
    else:
        for line in format_derivation(d):
            print(line)
    return 0


def cmd_verify_flow(args: argparse.Namespace) -> int:
    _, table = _load(args, args.semigroup)
    report = verify_flow(table, read_flow(table, args.flow))
    if args.format == "machine":
        _emit(args, [
            ("passed", _bool(report.passed)),
            ("condition", report.condition or ""),
            ("state", report.state or ""),
            ("generator", report.generator or ""),
            ("checks", len(report.checks)),
        ])
    else:
        if args.table:
            print(report.frame().to_string(index=False))
        print(report.summary())
    return report.exit_code


def cmd_search_flow(args: argparse.Namespace) -> int:
    _, table = _load(args, args.semigroup)
    flow = search_flow(table, args.max_states, require_aperiodic=args.aperiodic, budgets=_budgets(args))
    if flow is None:
        print("No flow found in the searched family.")
        return 1
    _emit(args, [("states", len(flow.automaton.states))] + [(f"state_{q}", str(v)) for q, v in flow.assignment.items()])
    if args.out:
        out = write_flow(flow, args.out)
        print(f"Saved flow: {out}")
    return 0


def cmd_contradict(args: argparse.Namespace) -> int:
    name, table = _load(args, args.semigroup)
    engine = FlowEngine(table, _budgets(args))
    d = find_contradiction(engine)
    if d is None:
        print("No derivation of the contradiction: the reachable states are exhausted.")
        return 1
    if args.format == "machine":
        _emit(args, [("found", "true"), ("steps", len(d.steps)), ("wff", " ".join(s.text for s in d.steps))])
    else:
        for line in format_derivation(d):
            print(line)
    if args.out:
        out = Path(args.out).expanduser().resolve()
        out.write_text(derivation_script(d), encoding="utf-8")
        print(f"Saved script: {out}")
    if args.bounds:
        interval = complexity_bounds(table, certificates=[d], axioms=_axioms(args), name=name, budgets=_budgets(args))
        _emit(args, [("complexity", str(interval))])
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    name, table = _load(args, args.semigroup)
    budgets = _budgets(args)
    flows = [read_flow(table, p) for p in args.flow or []]
    certs = []
    if args.script:
        engine = FlowEngine(table, budgets)
        for path in args.script:
            script = read_script(path)
            start = parse_spc(engine.lattice, script.start or "{" + table.ctx.b_labels[0] + "}")
            d = wff_trace(engine, script.wff, start)
            if not (d.reaches_contradiction and replay_derivation(engine, d)):
                logger.warning("%s does not reach the contradiction", path)
            certs.append(d)
    interval = complexity_bounds(
        table, flows=flows, certificates=certs, axioms=_axioms(args),
        name=args.name or name, strict=args.strict, budgets=budgets,
    )
    _emit(args, [("complexity", str(interval)), ("exact", _bool(interval.exact))])
    if args.format == "text":
        for j in interval.justifications:
            print(f"  {j}")
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name in catalog_names():
            print(f"{name:8s} {CATALOG[name].title}")
        return 0
    if not args.all and args.name is None:
        raise FormatError("catalog run needs NAME or --all")
    names = catalog_names() if args.all else [args.name]
    budgets, axioms = _budgets(args), _axioms(args)
    status = 0
    for name in names:
        report = catalog_run(name, budgets=budgets, axioms=axioms, group=args.group)
        if args.format == "machine":
            print(format_machine([(f"{name}.{r.key}", r.ok) for r in report.rows] + [(f"{name}.passed", report.passed)]))
        else:
            for line in report.lines():
                print(line)
        if not report.passed:
            status = 1
    return status


# ---- Parser ----
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krlab", description="Krohn-Rhodes complexity toolkit for GM semigroups.")
    parser.add_argument("--settings", default=None, help="YAML file with budget values.")
    parser.add_argument("--budget", action="append", default=None, metavar="KEY=VALUE", help="Override one budget (repeatable).")
    parser.add_argument("--word-bound", type=int, default=None, help="Longest operator word used by the vacuum.")
    parser.add_argument("--axioms", default=None, help="YAML file of external complexity facts.")
    parser.add_argument("--format", choices=["text", "machine"], default="text", help="Output style.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="Generate a semigroup and summarize it.")
    p.add_argument("file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("green", help="Green's relations, one row per J-class.")
    p.add_argument("file")
    p.add_argument("--plot", default=None, help="Save the J-class diagram to this PNG.")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("rlm", help="Right letter mapping image.")
    p.add_argument("file")
    p.set_defaults(func=cmd_rlm)

    p = sub.add_parser("type2", help="Type II elements and the Tilson congruence.")
    p.add_argument("file")
    p.set_defaults(func=cmd_type2)

    p = sub.add_parser("depth", help="Longest chain of non-aperiodic J-classes.")
    p.add_argument("file")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("hull", help="Translational hull membership of one element.")
    p.add_argument("file")
    p.add_argument("--element", required=True, help="Cycle or arrow notation.")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("eval", help="Evaluate a WFF script from a start value.")
    p.add_argument("file")
    p.add_argument("--start", default=None, help="Start SPC, e.g. \"{1'}\".")
    p.add_argument("--script", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-flow", help="Check a flow certificate (exit 0 pass, 1 fail, 2 malformed).")
    p.add_argument("semigroup")
    p.add_argument("flow")
    p.add_argument("--table", action="store_true", help="Print every check.")
    p.set_defaults(func=cmd_verify_flow)

    p = sub.add_parser("search-flow", help="Search flows over rz(n).")
    p.add_argument("semigroup")
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--aperiodic", action="store_true", default=True, help="Only aperiodic automata (default).")
    p.add_argument("--any", dest="aperiodic", action="store_false", help="Allow any automaton.")
    p.add_argument("--out", default=None, help="Write the certificate found to this YAML file.")
    p.set_defaults(func=cmd_search_flow)

    p = sub.add_parser("contradict", help="Search a derivation of the contradiction.")
    p.add_argument("semigroup")
    p.add_argument("--bounds", action="store_true", help="Also report the complexity interval.")
    p.add_argument("--out", default=None, help="Write the derivation as a WFF script.")
    p.set_defaults(func=cmd_contradict)

    p = sub.add_parser("bounds", help="Complexity interval from checked rules.")
    p.add_argument("semigroup")
    p.add_argument("--flow", action="append", default=None, help="Flow certificate (repeatable).")
    p.add_argument("--script", action="append", default=None, help="Refutation script (repeatable).")
    p.add_argument("--name", default=None, help="Axiom key; defaults to the semigroup name.")
    p.add_argument("--strict", action="store_true", help="Fail unless the interval is exact.")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("catalog", help="Built-in semigroups and their expected bounds.")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--group", default=None, help="Group for T4 and S4, e.g. Z3.")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    level = logging.WARNING if args.verbose == 0 else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FormatError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KrlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
