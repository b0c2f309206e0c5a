"""Command line front end.

Exit codes: 0 success or pass, 1 property failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import Element, InstanceMismatch, NotApplicable
from .expr import ParseError, evaluate, render
from .icc import (
    MAX_RADIUS,
    WitnessError,
    conjugacy_growth,
    finite_commutant_witness,
    fixed_D_set,
    growth_generators,
    probe_elements,
    sequence_csv,
    verify_central_element,
    verify_central_sequence,
    verify_uniform_commutation,
)
from .props import CHECKS, INAPPLICABLE, run_check
from .registry import CATALOG, build_instance, describe
from .trees import parse_tree

log = logging.getLogger("clonegroups")

PROPERTIES = sorted([*CHECKS, "group-laws"])
EXPERIMENTS = ["conj-growth", "central-element", "uniform-commutation", "commutant-witness", "central-sequence"]


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("instance")
    g.add_argument("-i", "--instance", default="F", help="instance name (see 'instances')")
    g.add_argument("-d", type=int, default=2, help="arity (default 2)")
    g.add_argument("--ring", help="Q or Z[1/p] for matrix instances")
    g.add_argument("--prime", type=int, help="p for Abels groups or Z[1/p]")
    g.add_argument("--base", help="base group for Pi/Psi: Z/m, S3, S4, ZInf")
    g.add_argument("--endos", help="'id' or 'mul:u1,...,ud' for Pi")
    g.add_argument("--describe-instance", action="store_true", help="print claimed flags and grammar, then exit")
    g.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    g.add_argument("--json", dest="json_out", help="write the JSON report here")
    g.add_argument("--csv", dest="csv_out", help="write CSV output here")
    g.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="clonegroups", description="Thompson-like groups from cloning systems.")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    ev.add_argument("expression")

    ck = sub.add_parser("check", parents=[common], help="check an axiom or property")
    ck.add_argument("property", choices=PROPERTIES)
    ck.add_argument("--levels", type=_int_list, default=[1, 2, 3])
    ck.add_argument("--mode", choices=["auto", "exhaustive", "randomized"], default="auto")
    ck.add_argument("--samples", type=_positive)

    ex = sub.add_parser("experiment", parents=[common], help="run an experiment")
    ex.add_argument("name", choices=EXPERIMENTS)
    ex.add_argument("--radius", type=int, default=3)
    ex.add_argument("--probe", help="expression for a single probe element (conj-growth)")
    ex.add_argument("--samples", type=_positive, default=200)
    ex.add_argument("--trials", type=_positive, default=100)
    ex.add_argument("--z", help="central base-group element (central-element)")
    ex.add_argument("--r-minus", default="(((LL)L)L)", help="left tree R- (uniform-commutation)")
    ex.add_argument("--r-plus", default="((L(LL))L)", help="right tree R+ (uniform-commutation)")
    ex.add_argument("--middle", help="middle g of [R-,g,R+]; random if omitted")
    ex.add_argument("--leaf", default="1", help="address v as digits, '' for the root")
    ex.add_argument("--element", action="append", default=[], help="element of E (repeatable)")
    ex.add_argument("--size", type=_positive, default=4, help="size of the default E")
    ex.add_argument("-m", type=int, default=3, help="depth for commutant-witness")
    ex.add_argument("--nmax", type=_positive, default=16)
    ex.add_argument("-k", type=_int_list, default=[1], help="conjugation exponents")

    sub.add_parser("instances", parents=[common], help="list instances")
    return p


def _instance(args):
    return build_instance(args.instance, args.d, args.ring, args.prime, args.base, args.endos)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)


def _cmd_eval(args, s, out) -> int:
    out.append(render(evaluate(s, args.expression)))
    return 0


def _cmd_check(args, s, out) -> int:
    levels = args.levels
    if not levels or min(levels) < 1:
        raise UsageError("levels must be positive")
    log.info("check %s instance=%s seed=%d levels=%s mode=%s", args.property, s.name, args.seed, levels, args.mode)
    rep = run_check(s, args.property, levels, mode=args.mode, seed=args.seed, samples=args.samples)
    out.append(str(rep))
    args._json = rep.to_json()
    return _exit_code(rep)


def _exit_code(rep) -> int:
    if rep.verdict == INAPPLICABLE:
        return 2
    return 0 if rep.ok else 1


def _elements(s, texts) -> list[Element]:
    return [evaluate(s, t) for t in texts]


def _cmd_experiment(args, s, out) -> int:
    name = args.name
    log.info("experiment %s instance=%s seed=%d", name, s.name, args.seed)
    if name == "conj-growth":
        if not 0 <= args.radius <= MAX_RADIUS:
            raise UsageError(f"radius must lie in 0..{MAX_RADIUS}")
        gens = growth_generators(s)
        probes = _elements(s, [args.probe]) if args.probe else probe_elements(s)
        rows = ["probe,radius,count"]
        curves = []
        for j, x in enumerate(probes):
            c = conjugacy_growth(x, gens, args.radius, seed=args.seed)
            curves.append({"probe": str(x), "counts": c.counts, "strictly_increasing": c.strictly_increasing})
            rows += [f"{j},{r},{n}" for r, n in enumerate(c.counts)]
            out.append(f"{x}: {' '.join(map(str, c.counts))}")
        args._csv = "\n".join(rows) + "\n"
        args._json = json.dumps({"instance": s.name, "generators": [str(g) for g in gens], "curves": curves}, indent=2)
        return 0
    if name == "central-element":
        z = None
        if args.z is not None:
            if not hasattr(s, "base"):
                raise UsageError("--z needs a product instance")
            z = s.base.parse(args.z)
        rep = verify_central_element(s, z, samples=args.samples, seed=args.seed)
    elif name == "uniform-commutation":
        rm, rp = parse_tree(args.r_minus, s.d), parse_tree(args.r_plus, s.d)
        n = rp.n_leaves
        g = s.parse_middle(args.middle, n) if args.middle else s.sample(n, random.Random(args.seed))
        v = tuple(int(c) for c in args.leaf)
        rep = verify_uniform_commutation(s, rm, rp, g, v, trials=args.trials, seed=args.seed)
    elif name == "commutant-witness":
        E = _elements(s, args.element) if args.element else fixed_D_set(s, args.size, args.seed)
        c1, c2 = finite_commutant_witness(E, args.m, s)
        out += [f"E[{j}] = {e}" for j, e in enumerate(E)]
        out += [f"c1 = {c1}", f"c2 = {c2}"]
        args._json = json.dumps({"instance": s.name, "m": args.m, "E": [str(e) for e in E], "c1": str(c1), "c2": str(c2)}, indent=2)
        return 0
    else:
        E = _elements(s, args.element) if args.element else fixed_D_set(s, args.size, args.seed)
        rep, rows, onset = verify_central_sequence(E, args.nmax, args.k, s)
        args._csv = sequence_csv(rows)
        out.append(args._csv.rstrip())
    out.append(str(rep))
    args._json = rep.to_json()
    return _exit_code(rep)


def _cmd_instances(args, out) -> int:
    for spec in CATALOG:
        out.append(f"{spec.name:6} {spec.summary} [{spec.params}]")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    args._json = args._csv = None
    out: list[str] = []
    try:
        if args.describe_instance:
            print(json.dumps(describe(_instance(args)), indent=2))
            return 0
        if args.command == "instances":
            code = _cmd_instances(args, out)
        else:
            s = _instance(args)
            code = {"eval": _cmd_eval, "check": _cmd_check, "experiment": _cmd_experiment}[args.command](args, s, out)
    except (ParseError, UsageError, InstanceMismatch, NotApplicable, ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except WitnessError as e:
        print(f"witness failed: {e}", file=sys.stderr)
        return 1
    print("\n".join(out))
    # files are written once, after the run finished
    _write(args.json_out, (args._json or "{}") + "\n")
    _write(args.csv_out, args._csv or "")
    return code


if __name__ == "__main__":
    sys.exit(main())
