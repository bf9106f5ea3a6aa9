"""Command-line front end: ``burnside-tori {torus,verify,subgroups,marks,count}``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import subgroups
from .checks import SUITES, run_suite
from .gset import natural
from .permgroup import CycleType, Permutation, canonical_permutation, cyclic_from_cycle_type, group_closure, symmetric_group
from .powerseries import MAX_TRUNCATION
from .toruslab import (
    MAX_N,
    point_count,
    restrict_class,
    torus_class_binomial,
    torus_class_lambda,
    torus_point_oracle,
    VerificationError,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_VERIFY_N = 5
MAX_TABLE_N = 7


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    cache_dir: Path | None = None
    truncation: int = MAX_TRUNCATION
    max_n: int = MAX_N
    output_format: str = "text"

    def __post_init__(self):
        if not 0 <= self.truncation <= MAX_TRUNCATION:
            raise UsageError(f"truncation must lie in 0..{MAX_TRUNCATION}")
        if not 0 <= self.max_n <= MAX_N:
            raise UsageError(f"max n must lie in 0..{MAX_N}")
        if self.output_format not in ("text", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")


def _emit(config: CliConfig, payload: dict, text: str) -> None:
    if config.output_format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _check_n(n: int, cap: int = MAX_N) -> None:
    if not 0 <= n <= cap:
        raise UsageError(f"n = {n} is outside the supported range 0..{cap}")


def read_action(path: str, n: int):
    """Subgroup of Σ_n from a JSON file ``{"generators": [[images], ...]}``."""
    try:
        payload = json.loads(Path(path).read_text())
        gens = [Permutation(g) for g in payload["generators"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read action file {path}: {exc}") from exc
    if any(g.degree != n for g in gens):
        raise UsageError(f"every generator must permute {n} points")
    return group_closure(n, gens)


def cmd_torus(args, config: CliConfig) -> int:
    _check_n(args.n)
    try:
        binomial = torus_class_binomial(args.n)
    except VerificationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    lam = torus_class_lambda(natural(symmetric_group(args.n)))
    equal = binomial == lam
    payload = {"n": args.n, "class_binomial": binomial.to_json(), "class_lambda": lam.to_json(), "equal": equal}
    lines = [f"binomial: {binomial.render()}", f"lambda:   {lam.render()}", f"equal: {equal}"]
    if args.action:
        gamma = read_action(args.action, args.n)
        local = restrict_class(binomial, gamma)
        payload["restricted"] = {"group_order": gamma.order, "class": local.to_json()}
        lines.append(f"restricted to a group of order {gamma.order}: {local.render()}")
    if config.output_format == "text" and equal and not args.action:
        lines = [binomial.render()] + lines[2:]
    _emit(config, payload, "\n".join(lines))
    return EXIT_OK if equal else EXIT_FAIL


def cmd_verify(args, config: CliConfig) -> int:
    _check_n(args.max_n, 6)
    if args.max_n == 6 and not (args.full or os.environ.get("BURNSIDE_FULL")):
        raise UsageError("--max-n 6 is slow; pass --full (or set BURNSIDE_FULL=1) to run it")
    start = time.perf_counter()
    results = run_suite(args.suite, args.max_n, args.seed)
    passed = all(r.passed for r in results)
    payload = {
        "suite": args.suite,
        "max_n": args.max_n,
        "seed": args.seed,
        "passed": passed,
        "seconds": round(time.perf_counter() - start, 3),
        "checks": [r.to_json() for r in results],
    }
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)  {r.detail}" for r in results)
    text += f"\n{sum(r.passed for r in results)}/{len(results)} checks passed in {payload['seconds']}s"
    _emit(config, payload, text)
    return EXIT_OK if passed else EXIT_FAIL


def _load_table(n: int):
    _check_n(n, MAX_TABLE_N)
    table = subgroups.symmetric_table(n)
    return table, subgroups.last_table_source.get(n, "memory")


def cmd_subgroups(args, config: CliConfig) -> int:
    table, source = _load_table(args.n)
    rows = [
        {"label": table.label(c), "order": cls.order, "normalizer_order": cls.normalizer_order,
         "generators": [list(g.images) for g in cls.representative.generators]}
        for c, cls in enumerate(table.classes)
    ]
    payload = {"n": args.n, "count": len(table), "source": source, "classes": rows}
    text = [f"Σ_{args.n}: {len(table)} conjugacy classes of subgroups ({_source_note(source)})"]
    text += [f"{r['label']:>10}  order {r['order']:>4}  normalizer {r['normalizer_order']:>4}" for r in rows]
    _emit(config, payload, "\n".join(text))
    return EXIT_OK


def cmd_marks(args, config: CliConfig) -> int:
    table, source = _load_table(args.n)
    marks = table.marks_array.tolist()
    payload = {"n": args.n, "labels": [table.label(c) for c in range(len(table))], "source": source, "marks": marks}
    text = f"{json.dumps(marks)}\n({_source_note(source)})"
    _emit(config, payload, text)
    return EXIT_OK


def _source_note(source: str) -> str:
    return {"disk": "cache hit", "memory": "cache hit (memory)", "computed": "computed"}[source]


def cmd_count(args, config: CliConfig) -> int:
    _check_n(args.n)
    try:
        t = CycleType.parse(args.cycle_type)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if t.n != args.n:
        raise UsageError(f"cycle type {t} does not partition {args.n}")
    if args.q < 2:
        raise UsageError("q must be at least 2")
    local = restrict_class(torus_class_binomial(args.n), cyclic_from_cycle_type(t))
    formula = point_count(local, canonical_permutation(t), args.q)
    oracle = torus_point_oracle(t, args.q)
    ok = formula == oracle
    payload = {"n": args.n, "cycle_type": list(t.partition), "q": args.q,
               "formula_value": formula, "oracle_value": oracle, "pass": ok}
    _emit(config, payload, f"{formula}, {oracle}  {'match' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help="directory for subgroup tables (default: $BURNSIDE_CACHE_DIR)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="burnside-tori", parents=[common],
                                     description="Burnside-ring classes of quasi-split tori.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torus", parents=[common], help="class of the universal rank-n torus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--action", help='JSON file {"generators": [[...], ...]} naming a subgroup to restrict to')
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--max-n", type=int, default=DEFAULT_VERIFY_N)
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--full", action="store_true", help="allow --max-n 6")
    p.set_defaults(func=cmd_verify)

    for name, func, what in (("subgroups", cmd_subgroups, "subgroup classes of Σ_n"),
                             ("marks", cmd_marks, "table of marks of Σ_n")):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("count", parents=[common], help="point count over F_q against the closed form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cycle-type", required=True, help="e.g. 2,1")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        config = CliConfig(cache_dir=getattr(args, "cache_dir", None) or os.environ.get("BURNSIDE_CACHE_DIR"),
                           output_format=getattr(args, "format", "text"))
        subgroups.set_cache_dir(config.cache_dir)
        return args.func(args, config)
    except UsageError as exc:
        print(f"burnside-tori: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
