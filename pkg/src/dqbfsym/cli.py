"""Command-line interface: ``dqbfsym detect|break|solve|stats|gen``.

Exit codes: 0 success, 1 parse/IO error, 2 usage error, 10/20 for a true/false
formula in ``solve``, 30 when a search budget is exhausted.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import breaker, dqdimacs, generators, oracle
from .dqdimacs import DimacsError, SourceFormat
from .errors import BudgetExceeded
from .formula import topological_sort
from .symmetry import contributes, detect, filter_eligible

EXIT_OK, EXIT_PARSE, EXIT_USAGE = 0, 1, 2
EXIT_TRUE, EXIT_FALSE, EXIT_BUDGET = 10, 20, 30

BUCKETS = (1, 10, 100, 1000)


def format_order(order: int) -> str:
    """Exact below one million, otherwise like ``8.58e9``."""
    if order < 10**6:
        return str(order)
    mantissa, exp = f"{order:.2e}".split("e")
    return f"{mantissa}e{int(exp)}"


def bucket_label(order: int) -> str:
    for b in BUCKETS:
        if order <= b:
            return f"<={b}"
    return f">{BUCKETS[-1]}"


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    @contextmanager
    def phase(self, name: str):
        start = time.perf_counter()
        yield
        if self.enabled:
            print(f"time {name} {time.perf_counter() - start:.3f}s", file=sys.stderr)


def _search_options(args) -> dict:
    return {"node_limit": args.node_limit}


def cmd_detect(args, timer: _Timer) -> int:
    with timer.phase("parse"):
        dqbf, _ = dqdimacs.read_file(args.file)
    with timer.phase("detect"):
        det = detect(dqbf, **_search_options(args))
    sorted_prefix, _ = topological_sort(dqbf.prefix)
    with timer.phase("filter"):
        verdicts = [filter_eligible(sorted_prefix, p) for p in det.permutations]
    eligible = sum(v.eligible for v in verdicts)
    contributing = sum(
        v.eligible and contributes(sorted_prefix, p) for p, v in zip(det.permutations, verdicts)
    )
    var_orbits = []
    for orbit in det.report.orbits:
        if len(orbit) > 1 and orbit[0] < dqbf.num_vars:
            var_orbits.append(tuple(v + 1 for v in orbit))
    if args.report:
        print(f"generators={len(det.permutations)}")
        print(f"eligible={eligible}")
        print(f"contributing={contributing}")
        print(f"order={format_order(det.report.order)}")
        print(f"orbits={len(var_orbits)}")
        for p, v in zip(det.permutations, verdicts):
            status = "eligible" if v.eligible else f"{v.violated_condition}:{v.witness}"
            print(f"generator={p} {status}")
    else:
        print(f"{dqbf.prefix.n} universals, {dqbf.prefix.k} existentials, {len(dqbf.matrix)} clauses")
        print(f"generators: {eligible}/{len(det.permutations)} eligible")
        print(f"group order: {format_order(det.report.order)}")
        print("variable orbits: " + (" ".join("{" + ",".join(map(str, o)) + "}" for o in var_orbits) or "none"))
    return EXIT_OK


def cmd_break(args, timer: _Timer) -> int:
    with timer.phase("parse"):
        dqbf, fmt = dqdimacs.read_file(args.file)
    with timer.phase("break"):
        result = breaker.break_symmetries(
            dqbf, max_generators=args.max_generators, **_search_options(args)
        )
    out = result.formula
    if args.format == "qdimacs":
        fmt = SourceFormat.QDIMACS
    elif args.format == "dqdimacs":
        fmt = SourceFormat.DQDIMACS
    elif fmt is SourceFormat.QDIMACS and not dqdimacs.is_linearizable(out.prefix):
        fmt = SourceFormat.DQDIMACS
    with timer.phase("write"):
        dqdimacs.write_file(args.output, out, fmt)
    added_vars = out.num_vars - dqbf.num_vars
    added_clauses = len(out.matrix) - len(dqbf.matrix)
    print(f"generators used: {len(result.artifact.used_generators)}")
    print(f"added variables: {added_vars}")
    print(f"added clauses: {added_clauses}")
    return EXIT_OK


def cmd_solve(args, timer: _Timer) -> int:
    with timer.phase("parse"):
        dqbf, _ = dqdimacs.read_file(args.file)
    with timer.phase("solve"):
        value, _ = oracle.brute_truth(dqbf, node_limit=args.node_limit, method=args.method)
    print("true" if value else "false")
    return EXIT_TRUE if value else EXIT_FALSE


def _stats_one(path: str, node_limit: int) -> tuple[str, str, int | None]:
    try:
        dqbf, _ = dqdimacs.read_file(path)
        order = detect(dqbf, node_limit=node_limit).report.order
    except (DimacsError, ValueError, OSError) as exc:
        return path, f"error: {exc}", None
    except BudgetExceeded:
        return path, "budget", None
    return path, "ok", order


def cmd_stats(args, timer: _Timer) -> int:
    if not os.path.isdir(args.directory):
        print(f"error: {args.directory} is not a directory", file=sys.stderr)
        return EXIT_PARSE
    paths = sorted(
        os.path.join(args.directory, name)
        for name in os.listdir(args.directory)
        if name.endswith((".qdimacs", ".dqdimacs", ".cnf"))
    )
    with timer.phase("stats"):
        if args.workers == 1 or len(paths) < 2:
            results = [_stats_one(p, args.node_limit) for p in paths]
        else:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                results = list(pool.map(_stats_one, paths, [args.node_limit] * len(paths)))
    hist = {bucket_label(b): 0 for b in BUCKETS}
    hist[f">{BUCKETS[-1]}"] = 0
    failed = False
    for path, status, order in results:
        name = os.path.basename(path)
        if order is None:
            failed = failed or status.startswith("error")
            print(f"{name} {status}")
            continue
        print(f"{name} order={format_order(order)}")
        hist[bucket_label(order)] += 1
    for label, count in hist.items():
        print(f"bucket {label} {count}")
    return EXIT_PARSE if failed else EXIT_OK


def cmd_gen(args, timer: _Timer) -> int:
    if args.family == "kbkf":
        dqbf = generators.kbkf(args.N)
    elif args.family == "parity":
        dqbf = generators.parity(args.N)
    else:
        try:
            dqbf = generators.random_dqbf(
                args.seed,
                n=args.n,
                k=args.k,
                max_dep=args.max_dep,
                clause_count=args.clauses,
                clause_len=args.clause_len,
                plant=args.plant,
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    fmt = SourceFormat.QDIMACS if dqdimacs.is_linearizable(dqbf.prefix) else SourceFormat.DQDIMACS
    if args.format == "dqdimacs":
        fmt = SourceFormat.DQDIMACS
    dqdimacs.write_file(args.output, dqbf, fmt)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqbfsym", description="Symmetry detection and breaking for DQBFs.")
    parser.add_argument("--verbose", action="store_true", help="print per-phase timings to stderr")
    parser.add_argument("--node-limit", type=_positive, default=1_000_000, help="search node budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect symmetries of a formula")
    p.add_argument("file")
    p.add_argument("--report", action="store_true", help="key=value output")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("break", help="write the formula with symmetry breakers added")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--max-generators", type=int, default=None)
    p.add_argument("--format", choices=("auto", "qdimacs", "dqdimacs"), default="auto")
    p.set_defaults(func=cmd_break)

    p = sub.add_parser("solve", help="decide a small formula by brute force")
    p.add_argument("file")
    p.add_argument(
        "--method",
        choices=("auto", "enumerate", "search"),
        default="auto",
        help="enumerate interpretations or search over Skolem table entries",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stats", help="group orders of every formula in a directory")
    p.add_argument("directory")
    p.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="generate a formula")
    fam = p.add_subparsers(dest="family", required=True)
    for name in ("kbkf", "parity"):
        q = fam.add_parser(name)
        q.add_argument("N", type=_positive)
        q.add_argument("-o", "--output", required=True)
        q.add_argument("--format", choices=("auto", "dqdimacs"), default="auto")
    q = fam.add_parser("random")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--max-dep", type=int, default=2)
    q.add_argument("--clauses", type=int, default=6)
    q.add_argument("--clause-len", type=_positive, default=3)
    q.add_argument("--plant", action=argparse.BooleanOptionalAction, default=None)
    q.add_argument("-o", "--output", required=True)
    q.add_argument("--format", choices=("auto", "dqdimacs"), default="auto")
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    if args.command == "break" and args.max_generators is not None and args.max_generators < 0:
        print("error: --max-generators must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, _Timer(args.verbose))
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DimacsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        # invalid prefixes (e.g. dependencies on unknown variables) surface here
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
