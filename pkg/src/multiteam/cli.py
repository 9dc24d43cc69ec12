"""Command-line front end: check instances, encode CNF files, run law suites.

Exit codes are a contract: 0 for true / pass, 1 for false / violations,
2 for unusable input of any kind.  Mode flags fall back to the environment
variables MULTITEAM_TEAM_KIND, MULTITEAM_STRICTNESS and MULTITEAM_APPROX
before the built-in multi/lax/ratio defaults.
"""

import argparse
import inspect
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import InputError, ParseError
from .io import dump_multiteam, dump_structure, load_multiteam, load_structure
from .model import Multiteam
from .parser import parse
from .reductions import encode_3sat, encode_maxsat, parse_dimacs
from .semantics import SemanticsConfig, Witness, evaluate, witness
from .suites import SUITES, run_suite

BOUND_FLAGS = ("trials", "max_rows", "max_dom", "max_depth", "max_mult",
               "max_vars", "max_clauses", "max_clauses2", "jobs")


def _cfg_from(args) -> SemanticsConfig:
    env = os.environ
    return SemanticsConfig(
        team_kind=args.team_kind or env.get("MULTITEAM_TEAM_KIND", "multi"),
        strictness=args.strictness or env.get("MULTITEAM_STRICTNESS", "lax"),
        approx_kind=args.approx or env.get("MULTITEAM_APPROX", "ratio"))


def _formula_from(arg: str):
    if os.path.exists(arg):
        return parse(Path(arg).read_text(encoding="utf-8"))
    return parse(arg)


def _team_line(t: Multiteam) -> str:
    rows = [(" ".join(f"{x}={v}" for x, v in zip(t.variables, key)) or "()")
            + (f" *{m}" if m > 1 else "")
            for key, m in t.row_items()]
    return "{" + "; ".join(rows) + "}"


def _print_witness(w: Witness, indent: int = 0) -> None:
    pad = "  " * indent
    line = f"{pad}{w.formula}  on {_team_line(w.team)}"
    if w.choice:
        line += f"  [{w.choice}]"
    print(line)
    for part in w.parts:
        _print_witness(part, indent + 1)


def cmd_check(args) -> int:
    cfg = _cfg_from(args)
    structure = load_structure(Path(args.structure).read_text(encoding="utf-8"))
    if args.team:
        team = load_multiteam(Path(args.team).read_text(encoding="utf-8"))
    else:
        team = Multiteam((), {(): 1})
    f = _formula_from(args.formula)
    if args.witness:
        trace = witness(structure, team, f, cfg)
        verdict = trace.holds
        if verdict:
            _print_witness(trace)
    else:
        verdict = evaluate(structure, team, f, cfg)
    print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_gen(args) -> int:
    phi = parse_dimacs(Path(args.cnf).read_text(encoding="utf-8"))
    if args.kind == "3sat":
        instance = encode_3sat(phi)
    else:
        if args.frac is None:
            raise InputError("max2sat needs --frac, e.g. --frac 7/10")
        try:
            frac = Fraction(args.frac)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad fraction {args.frac!r}: {exc}") from None
        instance = encode_maxsat(phi, frac)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in (("structure.txt", dump_structure(instance.structure)),
                       ("team.csv", dump_multiteam(instance.team)),
                       ("formula.txt", str(instance.formula) + "\n")):
        path = out / name
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    return 0


def cmd_props(args) -> int:
    runner = SUITES.get(args.suite)
    if runner is None:
        raise InputError(f"unknown suite {args.suite!r}")
    accepted = set(inspect.signature(runner).parameters)
    bounds = {name: value for name in BOUND_FLAGS
              if (value := getattr(args, name)) is not None
              and name in accepted}
    report = run_suite(args.suite, seed=args.seed, **bounds)
    print(report.render())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="multiteam",
        description="Exact model checking over team and multiteam semantics.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser(
        "check", help="evaluate a formula over a structure and multiteam")
    c.add_argument("structure", help="structure file")
    c.add_argument("formula",
                   help="formula text, or a path to a file holding it")
    c.add_argument("--team", help="multiteam CSV file; omitted: the "
                                  "one-row team of the empty assignment")
    c.add_argument("--team-kind", choices=("set", "multi"))
    c.add_argument("--strictness", choices=("lax", "strict"))
    c.add_argument("--approx", choices=("ratio", "absolute"))
    c.add_argument("--witness", action="store_true",
                   help="print the first witnessing choices on success")
    c.set_defaults(run=cmd_check)

    g = sub.add_parser("gen", help="encode a CNF file as a checkable instance")
    g.add_argument("kind", choices=("3sat", "max2sat"))
    g.add_argument("cnf", help="DIMACS CNF file")
    g.add_argument("--frac", help="threshold fraction for max2sat, e.g. 7/10")
    g.add_argument("--out", default=".", help="output directory")
    g.set_defaults(run=cmd_gen)

    r = sub.add_parser("props", help="run one law suite")
    r.add_argument("suite", choices=sorted(SUITES))
    r.add_argument("--seed", type=int, default=0)
    for name in BOUND_FLAGS:
        r.add_argument("--" + name.replace("_", "-"), type=int)
    r.set_defaults(run=cmd_props)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InputError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
