"""Command-line front end.

Exit codes: 0 success, 1 infeasible (or a failed verification), 2 usage or
parse error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import gadgets
from .checks import cross_check
from .dcflow import dc_max_flow
from .errors import InfeasibleError, InstanceError, InstanceParseError, MinMaxDelayError, ResourceError
from .expansion import expand
from .intsolve import NODE_BUDGET, int_gap, int_min_max_delay
from .minmax import min_max_delay
from .model import (as_rational, flow_to_dict, format_rational, path_delay, read_instance,
                    require_valid, write_instance)

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(args):
    if not args.instance:
        raise UsageError("--instance is required")
    try:
        data = Path(args.instance).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.instance}: {exc.strerror}") from None
    instance = read_instance(data)
    if getattr(args, "rate", None):
        try:
            instance = instance.with_rate(as_rational(args.rate))
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"bad --rate {args.rate!r}") from None
    require_valid(instance)
    return instance


def _print_flow(instance, flow, out):
    print(f"total_rate: {format_rational(flow.total_rate)}", file=out)
    print("paths:", file=out)
    for path, rate in flow.entries:
        print(f"  {format_rational(rate):>7}  delay {path_delay(instance, path):>3}  {' '.join(path)}", file=out)


def _emit_json(doc, out):
    print(json.dumps(doc, indent=2, sort_keys=True), file=out)


def cmd_solve(args, out):
    instance = _load(args)
    report = min_max_delay(instance)
    trace = [{"T": T, "r_star": format_rational(r), "branch": b} for T, r, b in report.iterations]
    if args.json:
        doc = {"status": report.status, "max_delay": report.optimal_value,
               "rate": format_rational(instance.rate)}
        if report.solved:
            doc["flow"] = flow_to_dict(instance, report.flow)
        else:
            doc["max_flow"] = format_rational(report.max_flow)
        if args.trace:
            doc["trace"] = trace
        _emit_json(doc, out)
    else:
        if args.trace:
            print(f"{'T':>6}  {'r*(T)':>10}  branch", file=out)
            for row in trace:
                print(f"{row['T']:>6}  {row['r_star']:>10}  {row['branch']}", file=out)
        if report.solved:
            print(f"max_delay: {report.optimal_value}", file=out)
            _print_flow(instance, report.flow, out)
        else:
            print(f"infeasible: max flow {format_rational(report.max_flow)} < rate "
                  f"{format_rational(instance.rate)}", file=out)
    if args.dump_lp and report.solved:
        print(expand(instance, report.optimal_value).lp.dump(), file=out)
    return EXIT_OK if report.solved else EXIT_INFEASIBLE


def cmd_dcmaxflow(args, out):
    instance = _load(args)
    if args.delay_bound is None or args.delay_bound < 0:
        raise UsageError("--delay-bound T >= 0 is required")
    result = dc_max_flow(instance, args.delay_bound)
    if args.json:
        doc = {"delay_bound": args.delay_bound, "value": format_rational(result.value)}
        doc["flow"] = flow_to_dict(instance, result.path_flow)
        _emit_json(doc, out)
    else:
        print(f"delay_bound: {args.delay_bound}", file=out)
        print(f"value: {format_rational(result.value)}", file=out)
        _print_flow(instance, result.path_flow, out)
    if args.dump_lp:
        print(result.problem.lp.dump(), file=out)
    return EXIT_OK


def cmd_intsolve(args, out):
    instance = _load(args)
    result = int_min_max_delay(instance, node_budget=args.budget)
    if args.json:
        doc = {"status": "solved" if result.feasible else "infeasible", "max_delay": result.optimal_value}
        if result.feasible:
            doc["flow"] = flow_to_dict(instance, result.flow)
        _emit_json(doc, out)
    elif result.feasible:
        print(f"max_delay: {result.optimal_value}", file=out)
        _print_flow(instance, result.flow, out)
    else:
        print("infeasible: no integer flow reaches the rate", file=out)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _gap_text(gap):
    return "inf" if gap == math.inf else str(gap)


def cmd_gap(args, out):
    instance = _load(args)
    result = int_gap(instance, node_budget=args.budget)
    if args.json:
        _emit_json({"fractional_max_delay": result.fractional_value, "integer_max_delay": result.optimal_value,
                    "int_gap": _gap_text(result.gap)}, out)
    else:
        print(f"fractional_max_delay: {result.fractional_value}", file=out)
        print(f"integer_max_delay: {result.optimal_value}", file=out)
        print(f"int_gap: {_gap_text(result.gap)}", file=out)
    return EXIT_OK


def _int_list(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(args, out):
    kind = args.kind
    try:
        if kind == "partition":
            instance, _ = gadgets.partition_gadget(args.values or [])
        elif kind == "3partition":
            instance, _ = gadgets.three_partition_gadget(args.values or [])
        elif kind == "block":
            instance = gadgets.building_block(args.n, as_rational(args.rate) if args.rate else 2)
        elif kind == "composite":
            instance = gadgets.gap_composite(args.n)
        else:
            instance = gadgets.random_instance(args.seed, args.nodes, args.edges, args.max_capacity,
                                               args.max_delay, args.max_rate)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    if args.rate and kind != "block":
        instance = instance.with_rate(as_rational(args.rate))
    data = write_instance(instance)
    if args.output in (None, "-"):
        out.write(data.decode())
    else:
        Path(args.output).write_bytes(data)
    return EXIT_OK


def _verify_file(path):
    instance = read_instance(Path(path).read_bytes())
    return str(path), cross_check(instance)


def cmd_verify(args, out):
    if args.dir:
        files = sorted(Path(args.dir).glob("*.json"))
        if not files:
            raise UsageError(f"no *.json instances in {args.dir}")
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_verify_file, files))
        else:
            results = [_verify_file(f) for f in files]
    else:
        instance = _load(args)
        results = [(args.instance, cross_check(instance))]
    all_ok = True
    if args.json:
        _emit_json([{"instance": name, "checks": [{"check": c, "pass": ok, "detail": d} for c, ok, d in rows]}
                    for name, rows in results], out)
        all_ok = all(ok for _, rows in results for _, ok, _ in rows)
    else:
        for name, rows in results:
            print(f"== {name}", file=out)
            for check, ok, detail in rows:
                all_ok &= ok
                print(f"  {'PASS' if ok else 'FAIL'}  {check:<32} {detail}", file=out)
    return EXIT_OK if all_ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minmaxdelay", description="Min-max-delay flow solver")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rate=True):
        p.add_argument("--instance", metavar="PATH")
        if rate:
            p.add_argument("--rate", metavar="p/q", help="override the instance rate")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("solve", help="fractional min-max-delay by binary search")
    common(p)
    p.add_argument("--trace", action="store_true", help="print each (T, r*(T), branch) probe")
    p.add_argument("--dump-lp", action="store_true", help="print the expanded LP at the optimum")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dcmaxflow", help="delay-constrained max flow r*(T)")
    common(p)
    p.add_argument("--delay-bound", type=int, metavar="T")
    p.add_argument("--dump-lp", action="store_true", help="print the expanded LP")
    p.set_defaults(func=cmd_dcmaxflow)

    for name, func, text in (("intsolve", cmd_intsolve, "exact integer min-max-delay"),
                             ("gap", cmd_gap, "integrality gap")):
        p = sub.add_parser(name, help=text)
        common(p)
        p.add_argument("--budget", type=int, default=NODE_BUDGET, metavar="N", help="search node budget")
        p.set_defaults(func=func)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=["partition", "3partition", "block", "composite", "random"])
    p.add_argument("--values", type=_int_list, help="multiset for partition/3partition, e.g. 3,1,2")
    p.add_argument("--n", type=int, default=5, help="block/composite size")
    p.add_argument("--rate", help="rate override, integer or p/q")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--nodes", type=int, default=6)
    p.add_argument("--edges", type=int, default=10)
    p.add_argument("--max-capacity", type=int, default=3)
    p.add_argument("--max-delay", type=int, default=5)
    p.add_argument("--max-rate", type=int, default=3)
    p.add_argument("-o", "--output", metavar="F")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="cross-check solvers against brute force")
    common(p, rate=True)
    p.add_argument("--dir", metavar="D", help="verify every *.json instance in D")
    p.add_argument("--jobs", type=int, default=1, metavar="K")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, InstanceParseError, InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except MinMaxDelayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
