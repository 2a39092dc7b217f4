"""Command-line front end.

Exit codes: 0 success, 1 a law or check was violated, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import measures as M
from . import operators as O
from .builtin import RUNNING_EXAMPLE
from .errors import OrdMeasError
from .fuzz import MAX_ATOMS, MAX_DIM, fuzz
from .generate import random_instance
from .instance import (
    Instance,
    dump_function,
    dump_measure,
    dump_operator,
    load_instance_file,
    parse_instance,
    parse_set,
)
from .integral import SimpleFunction, integrate, integrate_pos
from .laws import laws_for, merge, run_laws
from .lattice import format_rational
from .measures import PosMeasure, SignedMeasure, evaluate
from .operators import RegularOperator
from .representation import isomorphism_check, measure_to_operator, operator_to_measure


class UsageError(Exception):
    pass


def _seed_default():
    raw = os.environ.get("ORDMEAS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ORDMEAS_SEED must be an integer, got {raw!r}") from None


def _emit(args, value, text: str | None = None) -> None:
    if args.json:
        print(json.dumps(value, indent=2))
    else:
        print(text if text is not None else value)


def _load(args) -> Instance:
    if not args.file:
        raise UsageError("--file is required")
    return load_instance_file(args.file)


def _get(inst: Instance, name: str, *kinds):
    obj = inst.lookup(name)
    if kinds and not isinstance(obj, kinds):
        want = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{name!r} is a {type(obj).__name__}, expected {want}")
    return obj


def _dump(obj) -> dict:
    if isinstance(obj, (PosMeasure, SignedMeasure)):
        return dump_measure(obj, None)
    if isinstance(obj, RegularOperator):
        return dump_operator(obj, None)
    return dump_function(obj, None)


# -- commands ----------------------------------------------------------------

def cmd_eval(args) -> int:
    inst = _load(args)
    mu = _get(inst, args.measure, PosMeasure, SignedMeasure)
    delta = parse_set(args.set, mu.space)
    value = evaluate(mu, delta)
    _emit(args, {"measure": args.measure, "set": args.set, "value": str(value)}, str(value))
    return 0


def cmd_op(args) -> int:
    inst = _load(args)
    a = _get(inst, args.a, PosMeasure, SignedMeasure, RegularOperator)
    if args.name in ("join", "meet"):
        if args.b is None:
            raise UsageError(f"{args.name} needs two operands")
        b = _get(inst, args.b, type(a))
        if isinstance(a, RegularOperator):
            result = (O.join if args.name == "join" else O.meet)(a, b)
        else:
            result = (M.join if args.name == "join" else M.meet)(a, b)
    elif args.name == "abs":
        result = O.modulus(a) if isinstance(a, RegularOperator) else M.abs_measure(a)
    else:
        n = inst.norm
        if isinstance(a, RegularOperator):
            rep = O.nob_report(a, n)
            if not rep.is_nob:
                _emit(args, {"object": args.a, "is_nob": False, "regular_norm": None}, "not norm to order bounded")
                return 0
            value = rep.regular_norm
        else:
            value = M.measure_norm(n, a)
        _emit(args, {"object": args.a, "norm": str(n), "value": format_rational(value)}, format_rational(value))
        return 0
    if args.set is not None:
        if isinstance(result, RegularOperator):
            value = O.apply(result, SimpleFunction.indicator(parse_set(args.set, result.space)))
        else:
            value = evaluate(result, parse_set(args.set, result.space))
        _emit(args, {"result": _dump(result), "set": args.set, "value": str(value)}, str(value))
    else:
        _emit(args, _dump(result), json.dumps(_dump(result)))
    return 0


def cmd_integrate(args) -> int:
    inst = _load(args)
    f = _get(inst, args.function, SimpleFunction)
    mu = _get(inst, args.measure, PosMeasure, SignedMeasure)
    if isinstance(mu, PosMeasure) and f.is_nonnegative():
        value = integrate_pos(f, mu)
    else:
        value = integrate(f, mu)
    _emit(args, {"function": args.function, "measure": args.measure, "value": str(value)}, str(value))
    return 0


def cmd_represent(args) -> int:
    inst = _load(args)
    if args.action == "to-measure":
        t = _get(inst, args.name, RegularOperator)
        mu = operator_to_measure(t)
        _emit(args, _dump(mu), json.dumps(_dump(mu)))
        return 0
    if args.action == "to-operator":
        mu = _get(inst, args.name, PosMeasure, SignedMeasure)
        t = measure_to_operator(mu)
        _emit(args, _dump(t), json.dumps(_dump(t)))
        return 0
    obj = _get(inst, args.name, RegularOperator, SignedMeasure, PosMeasure)
    if isinstance(obj, PosMeasure):
        if not obj.is_finite():
            raise UsageError("the isomorphism check needs a finite measure")
        obj = obj.to_signed()
    other = _get(inst, args.other, RegularOperator, SignedMeasure) if args.other else None
    rep = isomorphism_check(obj, (inst.norm,), other)
    doc = rep.to_dict()
    text = "\n".join(f"{k}: {'PASS' if v else 'FAIL'}" for k, v in doc.items() if k.endswith("_ok"))
    _emit(args, doc, text)
    return 0 if rep.ok else 1


def _format_table(report: dict) -> str:
    width = max(len(k) for k in report["laws"]) if report["laws"] else 10
    lines = []
    for name, row in report["laws"].items():
        mark = "FAIL" if row["failed"] else ("PASS" if row["checked"] else "SKIP")
        lines.append(f"{name:<{width}}  {row['checked']:>7} checked  {row['failed']:>4} failed  {mark}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def builtin_instances(seed, count: int) -> list[Instance]:
    insts = [parse_instance(RUNNING_EXAMPLE)]
    for i in range(count):
        insts.append(random_instance(random.Random(f"ordmeas-builtin:{seed}:{i}")))
    return insts


def cmd_laws(args) -> int:
    laws = laws_for(args.suite)
    seed = args.seed if args.seed is not None else _seed_default()
    if args.builtin:
        insts = builtin_instances(seed, args.cases)
    else:
        insts = [_load(args)]
    results = [(i, run_laws(laws, inst, seed, i)) for i, inst in enumerate(insts)]
    table = merge(results, laws)
    failed = any(r["failed"] for r in table.values())
    report = {
        "source": "builtin" if args.builtin else args.file,
        "suite": args.suite,
        "seed": seed,
        "instances": len(insts),
        "laws": table,
        "status": "fail" if failed else "pass",
    }
    _emit(args, report, _format_table(report))
    return 1 if failed else 0


def cmd_fuzz(args) -> int:
    seed = args.seed if args.seed is not None else _seed_default()
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    if not 1 <= args.dim <= MAX_DIM or not 1 <= args.atoms <= MAX_ATOMS:
        raise UsageError(f"bounds: 1 <= --dim <= {MAX_DIM}, 1 <= --atoms <= {MAX_ATOMS}")
    start = time.perf_counter()
    report = fuzz(seed, args.cases, args.dim, args.atoms, max(1, args.jobs), args.suite)
    elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"seed {seed}, {args.cases} cases, dim <= {args.dim}, atoms <= {args.atoms}")
        print(_format_table(report))
        if "reproducer" in report:
            rep = report["reproducer"]
            print(f"minimized reproducer for {rep['law']} (instance {rep['instance']}):")
            print(json.dumps(rep["instance_file"], indent=2))
    print(f"runtime: {elapsed:.2f}s", file=sys.stderr)
    return 1 if report["status"] == "fail" else 0


def _counterexample_text(report: dict) -> str:
    lines = []
    titles = {
        "infimum_counterexample": "infimum of infinite measures",
        "hahn_counterexample": "Hahn decomposition",
        "finite_twin": "finite-space twin",
    }
    for key, title in titles.items():
        sec = report[key]
        lines.append(f"[{'PASS' if sec['pass'] else 'FAIL'}] {title}")
        for k, v in sec.items():
            if k in ("pass", "partitions"):
                continue
            if isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"  {k} = {v}")
    lines.append(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    return "\n".join(lines)


def cmd_counterexamples(args) -> int:
    report = M.counterexample_report()
    _emit(args, report, _counterexample_text(report))
    return 0 if report["pass"] else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    json_only = argparse.ArgumentParser(add_help=False)
    json_only.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False, parents=[json_only])
    common.add_argument("--file", help="instance file (JSON)")

    p = argparse.ArgumentParser(prog="ordmeas", description="Exact lattice-valued measures, integrals and operators.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="value of a measure on a set")
    e.add_argument("measure")
    e.add_argument("set", help='set expression, e.g. "a1+a3", "cofin:[0,2]", "" for the empty set')
    e.set_defaults(fn=cmd_eval)

    o = sub.add_parser("op", parents=[common], help="join, meet, abs or norm of measures/operators")
    o.add_argument("name", choices=("join", "meet", "abs", "norm"))
    o.add_argument("a")
    o.add_argument("b", nargs="?")
    o.add_argument("--set", help="evaluate the result on this set")
    o.set_defaults(fn=cmd_op)

    i = sub.add_parser("integrate", parents=[common], help="order integral of a function")
    i.add_argument("function")
    i.add_argument("measure")
    i.set_defaults(fn=cmd_integrate)

    r = sub.add_parser("represent", parents=[common], help="operator <-> measure correspondence")
    r.add_argument("action", choices=("to-measure", "to-operator", "check"))
    r.add_argument("name")
    r.add_argument("--other", help="second operator or measure for the lattice homomorphism check")
    r.set_defaults(fn=cmd_represent)

    l = sub.add_parser("laws", parents=[json_only], help="run law suites")
    src = l.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", action="store_true", help="built-in instances instead of a file")
    src.add_argument("--file", help="instance file (JSON)")
    l.add_argument("--suite", default="all", choices=("lattice", "measures", "integral", "operators", "repr", "all"))
    l.add_argument("--seed", type=int, help="seed for law-internal randomness (default $ORDMEAS_SEED or 0)")
    l.add_argument("--cases", type=int, default=50, help="random instances added by --builtin")
    l.set_defaults(fn=cmd_laws)

    f = sub.add_parser("fuzz", parents=[json_only], help="run all laws on seeded random instances")
    f.add_argument("--seed", type=int, help="default $ORDMEAS_SEED or 0")
    f.add_argument("--cases", type=int, default=100)
    f.add_argument("--dim", type=int, default=MAX_DIM, help=f"largest lattice dimension (<= {MAX_DIM})")
    f.add_argument("--atoms", type=int, default=MAX_ATOMS, help=f"largest atom count (<= {MAX_ATOMS})")
    f.add_argument("--jobs", type=int, default=1, help="worker processes")
    f.add_argument("--suite", default="all", choices=("lattice", "measures", "integral", "operators", "repr", "all"))
    f.set_defaults(fn=cmd_fuzz)

    c = sub.add_parser("counterexamples", parents=[json_only], help="reproduce the two counterexamples")
    c.set_defaults(fn=cmd_counterexamples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, OrdMeasError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
