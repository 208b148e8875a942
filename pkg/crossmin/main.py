#!/usr/bin/env python3
"""
crossmin command line

    crossmin run --instances complete:6 petersen:7x2 --configs fix-none mim-both-srm --perms 50 --out results.csv
    crossmin gen --family random_regular:30x4x7 --out g.txt
    crossmin aggregate results.csv --out agg.csv
"""

import argparse
import logging
import sys
from pathlib import Path

from .bench import aggregate, best_overall, emit_csv, read_records, run_matrix
from .config import get_settings
from .errors import CrossminError
from .instances import build, preprocess, write_graph
from .models import AGGREGATE_COLUMNS, HeuristicConfig, InstanceSpec

logger = logging.getLogger(__name__)


def _parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="crossmin", description="Heuristic crossing minimization benchmarks")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an instance x config x permutation matrix")
    run.add_argument("--instances", nargs="+", required=True, help="instance specs (family:AxB) or edge-list files")
    run.add_argument("--configs", nargs="+", required=True, help="heuristic configs, e.g. fix-all mim-both-srm")
    run.add_argument("--perms", type=int, default=50, help="permutations per (instance, config)")
    run.add_argument("--out", required=True, help="run records CSV")
    run.add_argument("--aggregate-out", help="also write aggregate statistics here")
    run.add_argument("--master-seed", type=int, default=settings.master_seed)
    run.add_argument("--jobs", type=int, default=settings.jobs, help="parallel workers (CROSSMIN_JOBS)")
    run.add_argument("--preprocess", action="store_true", help="split inputs into non-planar biconnected components")

    gen = commands.add_parser("gen", help="write a generated instance in the edge-list format")
    gen.add_argument("--family", required=True, help="instance spec, e.g. petersen:7x2")
    gen.add_argument("--out", required=True)

    agg = commands.add_parser("aggregate", help="aggregate a run records CSV")
    agg.add_argument("records")
    agg.add_argument("--out", required=True)
    return parser


def _setup_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _load_instances(texts: list[str], split: bool):
    instances = []
    for text in texts:
        spec = InstanceSpec.parse(text)
        g = build(spec)
        if not split:
            instances.append((spec.id, g))
            continue
        parts = preprocess(g)
        print(f"🧩 {spec.id}: {len(parts)} non-planar component(s)")
        instances.extend((f"{spec.id}#{k}", part) for k, part in enumerate(parts))
    return instances


def cmd_run(args) -> bool:
    configs = [HeuristicConfig.parse(text) for text in args.configs]
    instances = _load_instances(args.instances, args.preprocess)
    print(f"🚀 {len(instances)} instance(s) x {len(configs)} config(s) x {args.perms} permutation(s)")

    records = run_matrix(instances, configs, args.perms, parallelism=args.jobs, master_seed=args.master_seed)
    emit_csv(records, args.out)
    print(f"📝 Run records written to {args.out}")
    if args.aggregate_out:
        emit_csv(aggregate(records), args.aggregate_out, columns=AGGREGATE_COLUMNS)
        print(f"📝 Aggregates written to {args.aggregate_out}")

    for name, best in best_overall(records).items():
        print(f"   {name}: BEST {best}")
    failures = [r for r in records if not r.ok]
    if failures:
        print(f"❌ {len(failures)} of {len(records)} runs failed")
        for record in failures[:5]:
            print(f"   {record.instance} {record.config} seed={record.seed}: {record.error}")
        return False
    print(f"✅ {len(records)} runs finished")
    return True


def cmd_gen(args) -> bool:
    spec = InstanceSpec.parse(args.family)
    g = build(spec)
    write_graph(g, args.out)
    print(f"✅ {spec.id}: {g.number_of_vertices()} vertices, {g.number_of_edges()} edges -> {args.out}")
    return True


def cmd_aggregate(args) -> bool:
    records = read_records(args.records)
    rows = aggregate(records)
    emit_csv(rows, args.out, columns=AGGREGATE_COLUMNS)
    print(f"✅ {len(rows)} aggregate row(s) from {len(records)} record(s) -> {args.out}")
    return True


def main(argv: list[str] | None = None) -> bool:
    args = _parser().parse_args(argv)
    _setup_logging(args.verbose)
    handler = {"run": cmd_run, "gen": cmd_gen, "aggregate": cmd_aggregate}[args.command]
    try:
        return handler(args)
    except (CrossminError, OSError) as exc:
        print(f"❌ {exc}")
        logger.debug("command failed", exc_info=True)
        return False


def cli() -> None:
    sys.exit(0 if main() else 1)


if __name__ == "__main__":
    cli()
