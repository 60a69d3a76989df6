"""Command-line front end.

Subcommands: build-table, scramble, solve, bench, export-dataset.
Exit codes: 0 success, 1 solve or resource failure, 2 bad usage or config.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import (
    CorpusExhausted,
    export_dataset,
    format_report_table,
    load_bench_config,
    run_bench,
)
from .cube import (
    apply_moves,
    canonical_key,
    format_moves,
    parse_moves,
    scramble,
    solved_state,
    state_from_key,
)
from .distance import (
    DEFAULT_TABLE_DEPTH,
    ResourceLimitError,
    TableDistance,
    build_distance_table,
    load_distance_table,
    save_distance_table,
)
from .mlp import load_mlp
from .policy import (
    DEFAULT_TEMPERATURE,
    BoltzmannPolicy,
    UniformPolicy,
    policy_from_mlp,
)
from .solver import SearchLimitExceeded, SearchLimits, astar_solve
from .wcd import WcdParams


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcdcube",
        description="Rubik's cube solving with convolution-refined distance heuristics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-table", help="BFS a distance table and save it")
    p.add_argument("--depth", type=int, default=DEFAULT_TABLE_DEPTH,
                   help="ball radius in quarter turns (default %(default)s)")
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--entry-budget", type=int, default=4_000_000,
                   help="abort if the table would exceed this many states")

    p = sub.add_parser("scramble", help="print a deterministic scramble")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("solve", help="A* solve a scrambled state")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--moves", help='scramble sequence, e.g. "R u f"')
    src.add_argument("--state", help="26-hex-digit canonical state key")
    p.add_argument("--heuristic", choices=("exact", "wcd"), default="wcd")
    p.add_argument("--k", type=int, default=1, help="convolution layers (wcd)")
    p.add_argument("--mu", type=float, default=0.5, help="self-weight (wcd)")
    p.add_argument("--policy", default="boltzmann",
                   help="uniform | boltzmann | mlp:PATH (wcd)")
    p.add_argument("--temperature", type=float, default=DEFAULT_TEMPERATURE)
    p.add_argument("--table", help="load a saved distance table")
    p.add_argument("--build-depth", type=int,
                   help="BFS depth when no table file is given "
                        "(default: min(6, max(1, scramble length)))")
    p.add_argument("--max-nodes", type=int, default=1_000_000)
    p.add_argument("--max-time", type=float, default=600.0)

    p = sub.add_parser("bench", help="run a benchmark config")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out-csv", help="override the config's CSV output path")
    p.add_argument("--out-json", help="override the config's JSON output path")

    p = sub.add_parser("export-dataset", help="write the optimal-action dataset")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--table", help="reuse a saved distance table")
    return parser


def _cmd_build_table(args) -> int:
    table = build_distance_table(args.depth, entry_budget=args.entry_budget)
    save_distance_table(table, args.out)
    counts = table.layer_counts()
    print(f"depth {table.max_depth}, {len(table)} states -> {args.out}")
    print("layers: " + " ".join(f"{d}:{n}" for d, n in enumerate(counts)))
    return 0


def _cmd_scramble(args) -> int:
    state, moves = scramble(args.seed, args.depth)
    print(f"moves: {format_moves(moves)}")
    print(f"state: {canonical_key(state).hex()}")
    return 0


def _cmd_solve(args) -> int:
    if args.moves is not None:
        moves = parse_moves(args.moves)
        state = apply_moves(solved_state(), moves)
        default_depth = min(DEFAULT_TABLE_DEPTH, max(1, len(moves)))
    else:
        # state_from_key rejects keys that decode to unsolvable states.
        state = state_from_key(bytes.fromhex(args.state))
        default_depth = DEFAULT_TABLE_DEPTH

    if args.table:
        table = load_distance_table(args.table)
    else:
        table = build_distance_table(args.build_depth or default_depth)
    f_d = TableDistance(table, out_of_range="clamp")
    if args.heuristic == "exact":
        params = WcdParams(mu=0.5, k=0)
        f_p = UniformPolicy()
    else:
        params = WcdParams(mu=args.mu, k=args.k)
        if args.policy == "uniform":
            f_p = UniformPolicy()
        elif args.policy == "boltzmann":
            f_p = BoltzmannPolicy(f_d, args.temperature)
        elif args.policy.startswith("mlp:"):
            with open(args.policy.split(":", 1)[1], "rb") as fh:
                f_p = policy_from_mlp(load_mlp(fh))
        else:
            raise ValueError(f"unknown policy {args.policy!r}")

    limits = SearchLimits(max_closed_nodes=args.max_nodes, max_time=args.max_time)
    solution = astar_solve(state, params, f_d, f_p, limits)
    print(f"solution: {format_moves(solution.moves) or '(already solved)'}")
    print(f"length: {solution.length}")
    print(f"searched_nodes: {solution.searched_nodes}")
    print(f"time_s: {solution.elapsed:.4f}")
    print(f"heuristic: {solution.heuristic}")
    return 0


def _cmd_bench(args) -> int:
    cfg = load_bench_config(args.config)
    if args.out_csv:
        cfg.out_csv = args.out_csv
    if args.out_json:
        cfg.out_json = args.out_json
    report = run_bench(cfg)
    print(format_report_table(report))
    failed = sum(s.failed for s in report.summaries)
    if failed:
        print(f"{failed} sample solve(s) hit a search limit", file=sys.stderr)
        return 1
    return 0


def _cmd_export_dataset(args) -> int:
    table = load_distance_table(args.table) if args.table else None
    count = export_dataset(args.depth, args.seed, args.out, table=table)
    print(f"{count} records -> {args.out}")
    return 0


_COMMANDS = {
    "build-table": _cmd_build_table,
    "scramble": _cmd_scramble,
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "export-dataset": _cmd_export_dataset,
}


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SearchLimitExceeded as exc:
        print(f"search aborted: {exc}", file=sys.stderr)
        return 1
    except (ResourceLimitError, CorpusExhausted) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
