"""Command line front end: ``reeskit analyze | probe | verify-paper | strand``.

Exit codes: 0 complete, 2 partial (some verdict Undetermined or a budget ran
out), 1 input, usage or setup failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import analyze
from .complexes import koszul_strand
from .groebner import BudgetExceeded
from .poly import DEFAULT_PRIME, QQ, PrimeField
from .presentation import NAMED, InputError, load_input

EXIT_OK, EXIT_FAIL, EXIT_PARTIAL = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def _field(args, default="GF"):
    kind = args.field or default
    if kind == "QQ":
        return QQ
    try:
        return PrimeField(args.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _budget(args) -> dict:
    out = {}
    if args.budget_spairs is not None:
        out["spairs"] = args.budget_spairs
    if args.budget_seconds is not None:
        out["seconds"] = args.budget_seconds
    return out


def _load(source: str, field):
    if not os.path.exists(source) and source in NAMED:
        return NAMED[source](field)
    return load_input(source, field)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _fmt(v) -> str:
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


# ---------------------------------------------------------------- commands


def _report_table(d: dict) -> str:
    lines = [f"{d['name'] or 'input'} over {d['field']}  (n={d['n']}, degrees={d['degrees']}, "
             f"delta={d['delta']}, seed={d['seed']})"]
    s = d["setup"]
    lines.append(f"setup: {'passed' if s['passed'] else 'FAILED'}  ht I_n = {s['height_max_minors']}")
    if d["strands"]:
        lines.append(f"{'i':>3} {'k':>3}  {'f':<16} {'r':<12} {'s1':>4}  {'shape':<13} {'verdict':<13} generators")
        for r in d["strands"]:
            gens = ", ".join(f"({r['i']},{deg})x{c}" for deg, c in r["generators"]) or "-"
            lines.append(f"{r['i']:>3} {r['k']:>3}  {_fmt(r['f']):<16} {_fmt(r['ranks']):<12} {r['s1']:>4}  "
                         f"{r['shape']:<13} {r['verdict']:<13} {gens}")
    lines.append("bidegree      count")
    for (a, b), c in d["table"]:
        lines.append(f"({a}, {b}){'':<{10 - len(str(a)) - len(str(b))}}{c}")
    lines.append(f"total {d['total']}  certified={d['table_certified']}  complete={d['complete']}")
    if d.get("birationality"):
        b = d["birationality"]
        lines.append(f"birationality: {b['verdict']}  s1+n = {b['fiber_degree_if_birational']}  "
                     f"extension degree = {b['extension_degree']}")
    if d.get("multiplicity"):
        m = d["multiplicity"]
        lines.append(f"multiplicity: formula {m['formula']}  groebner {m['groebner']}  "
                     f"colon=saturation {m['saturation_equal']}")
    if d.get("oracle"):
        o = d["oracle"]
        lines.append(f"oracle: {o['status']}  implicit degree {o['fiber_degree']}  total {o['total']}  "
                     f"matches pipeline {o['matches_pipeline']}")
    if d.get("caveat"):
        lines.append(d["caveat"])
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    inp = _load(args.input, _field(args))
    rep, _ = analyze(inp, seed=args.seed, paranoid=args.paranoid, degree_cap=args.degree_cap,
                     run_oracle=args.oracle, run_multiplicity=not args.no_multiplicity,
                     structure_checks=not args.no_structure_checks, budget=_budget(args))
    d = rep.to_dict()
    print(dumps(d) if args.format == "json" else _report_table(d))
    if not rep.setup["passed"]:
        return EXIT_FAIL
    return EXIT_OK if rep.complete else EXIT_PARTIAL


def cmd_probe(args) -> int:
    from .probe import genericity_probe

    if args.trials < 1:
        raise _UsageError("--trials must be at least 1")
    try:
        type_ = tuple(int(v) for v in args.type.split(","))
    except ValueError:
        raise _UsageError(f"--type must be comma-separated integers, got {args.type!r}") from None
    try:
        PrimeField(args.prime)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    stats = genericity_probe(type_, None, args.trials, args.prime, args.seed,
                             include_known_counterexample=args.include_known_counterexample, family=args.family)
    if args.format == "json":
        print(stats.to_json())
    else:
        print(f"type {list(type_)} family {stats.family} trials {stats.trials} prime {stats.prime} "
              f"seed {stats.seed}")
        for k in sorted(stats.counts):
            print(f"  {k:<26} {stats.counts[k]}")
        if stats.known_counterexample:
            kc = stats.known_counterexample
            print(f"  known counterexample: condition1={kc['condition1']} condition2={kc['condition2']} "
                  f"birational={kc['birational']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import ALIASES, VERIFIERS

    key = ALIASES.get(args.id, args.id)
    if key not in VERIFIERS:
        known = sorted(set(VERIFIERS) | set(ALIASES))
        print(f"unknown id {args.id!r}; known ids: {', '.join(known)}", file=sys.stderr)
        return EXIT_FAIL
    fn = VERIFIERS[key]
    if key == "lemma67":
        claims = fn(args.n)
    elif key == "lemma63":
        claims = fn(args.seed)
    else:
        default = "QQ" if key == "ex44a" else "GF"
        claims = fn(_field(args, default), args.seed)
    if args.format == "json":
        print(dumps({"id": key, "seed": args.seed, "claims": [c.to_dict() for c in claims],
                     "passed": all(c.ok for c in claims)}))
    else:
        for c in claims:
            print(f"[{'PASS' if c.ok else 'FAIL'}] {c.claim}: expected {_fmt(c.expected)}, "
                  f"computed {_fmt(c.computed)} ({c.source})")
    return EXIT_OK if all(c.ok for c in claims) else EXIT_FAIL


def cmd_strand(args) -> int:
    inp = _load(args.input, _field(args))
    if not 0 <= args.index <= inp.delta:
        raise _UsageError(f"--index must lie in 0..{inp.delta}")
    k = inp.delta - args.index
    st = koszul_strand(inp.l_forms(), inp.degrees, k, inp.n, inp.S)
    d = {"i": args.index, "k": k, "f": st.f,
         "maps": [[[e.to_str() for e in row] for row in st.alpha(t).entries] for t in range(1, st.m + 1)]}
    if args.format == "json":
        print(dumps(d))
    else:
        print(f"strand k={k} (A_{args.index}): ranks {st.f}")
        for t, M in enumerate(d["maps"], start=1):
            print(f"alpha_{t}: {len(M)} x {len(M[0]) if M else 0}")
            for row in M:
                print("  [" + ", ".join(row) + "]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["QQ", "GF"], default=None,
                        help="coefficient field: rationals or the prime field (default GF)")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["table", "json"], default="table")
    common.add_argument("--budget-spairs", type=int, default=None)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--paranoid", action="store_true", help="extra rank and consistency checks")

    p = _Parser(prog="reeskit", description="Rees algebras of height-two perfect ideals via Koszul strands.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="full strand analysis of an input matrix")
    a.add_argument("input", help="JSON input file or a named instance")
    a.add_argument("--oracle", action="store_true", help="also run the elimination oracle")
    a.add_argument("--degree-cap", type=int, default=None)
    a.add_argument("--no-multiplicity", action="store_true")
    a.add_argument("--no-structure-checks", action="store_true")
    a.set_defaults(func=cmd_analyze)

    pr = sub.add_parser("probe", parents=[common], help="random genericity probe")
    pr.add_argument("--type", default="1,2,3")
    pr.add_argument("--trials", type=int, default=50)
    pr.add_argument("--family", choices=["general", "symmetric"], default="general")
    pr.add_argument("--include-known-counterexample", action="store_true")
    pr.set_defaults(func=cmd_probe)

    v = sub.add_parser("verify-paper", parents=[common], help="replay a worked example or lemma")
    v.add_argument("id")
    v.add_argument("--n", type=int, default=8, help="largest size for lemma67")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("strand", parents=[common], help="dump the matrices of one strand")
    s.add_argument("input")
    s.add_argument("--index", type=int, required=True, help="i, for the strand K_{delta-i}")
    s.set_defaults(func=cmd_strand)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"reeskit: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
