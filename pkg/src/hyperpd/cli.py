"""Command line front end.

Subcommands: ``sweep`` (run the temptation sweep and write CSV), ``table``
(print the 125-profile payoff table), ``check`` (equilibrium analysis of
one profile), ``netgen`` (write a network edge list). Exit codes: 0 on
success, 1 on configuration errors, 2 on runtime errors.
"""

import argparse
import itertools
import sys

from .dynamics import (
    HUB_Q,
    HUB_SIGMA,
    WEIGHTED_FIVE,
    WEIGHTED_FOUR,
    EvolutionConfig,
    InitScheme,
)
from .errors import ConfigError
from .game import (
    STRATEGY_ORDER,
    PayoffParams,
    build_payoff_table,
    is_nash,
    is_pareto_optimal,
)
from .networks import RANDOM, SCALE_FREE, NetworkSpec, generate_network, write_edge_list
from .sweep import SweepConfig, emit_csv, run_sweep


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so we own the exit codes."""

    def error(self, message):
        raise ConfigError(message)


def _add_network_flags(parser):
    parser.add_argument("--network", choices=[RANDOM, SCALE_FREE], default=RANDOM,
                        help="network type (default: random)")
    parser.add_argument("--nodes", type=int, default=2500, help="number of agents")
    parser.add_argument("--edges", type=int, default=None,
                        help="hyperedge count (random networks; default 10000)")
    parser.add_argument("--m0", type=int, default=None,
                        help="scale-free seed size (must be 3)")
    parser.add_argument("--m", type=int, default=None,
                        help="scale-free edges per arriving node (default 2)")
    parser.add_argument("--seed", type=int, default=0, help="master seed")


def _network_spec(args) -> NetworkSpec:
    if args.network == RANDOM:
        if args.m0 is not None:
            raise ConfigError("--m0 only applies to --network sf")
        if args.m is not None:
            raise ConfigError("--m only applies to --network sf")
        edges = 10000 if args.edges is None else args.edges
        return NetworkSpec(kind=RANDOM, nodes=args.nodes, edge_count=edges, seed=args.seed)
    if args.edges is not None:
        raise ConfigError("--edges only applies to --network random")
    return NetworkSpec(
        kind=SCALE_FREE,
        nodes=args.nodes,
        m0=3 if args.m0 is None else args.m0,
        m=2 if args.m is None else args.m,
        seed=args.seed,
    )


_SCHEME_MODES = {
    (4, "random"): WEIGHTED_FOUR,
    (5, "random"): WEIGHTED_FIVE,
    (4, "hub"): HUB_Q,
    (5, "hub"): HUB_SIGMA,
}


def _parse_profile(text) -> tuple:
    tags = tuple(part.strip() for part in text.split(","))
    if len(tags) != 3:
        raise ConfigError(f"--profile: expected three comma-separated strategies, got {text!r}")
    for tag in tags:
        if tag not in STRATEGY_ORDER:
            raise ConfigError(
                f"--profile: unknown strategy {tag!r}; choose from {', '.join(STRATEGY_ORDER)}"
            )
    return tags


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperpd",
                     description="Three-player quantum prisoner's dilemma on hypergraph networks.")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="run a temptation sweep and write CSV")
    _add_network_flags(sweep)
    sweep.add_argument("--strategies", type=int, choices=[4, 5], default=4,
                       help="size of the strategy set (default: 4)")
    sweep.add_argument("--assignment", choices=["random", "hub"], default="random",
                       help="initial assignment: weighted random, or the quantum "
                            "invader on the highest-degree node (default: random)")
    sweep.add_argument("--t-start", type=float, default=5.0)
    sweep.add_argument("--t-end", type=float, default=9.0)
    sweep.add_argument("--t-step", type=float, default=0.05)
    sweep.add_argument("--generations", type=int, default=10000)
    sweep.add_argument("--window", type=int, default=1000,
                       help="trailing generations averaged into the result")
    sweep.add_argument("--patience", type=int, default=500,
                       help="generations without change that count as equilibrium")
    sweep.add_argument("--replicas", type=int, default=1, help="replicas per T value")
    sweep.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    sweep.add_argument("--out", default="sweep.csv", help="output CSV path")

    table = commands.add_parser("table", help="print the 125-profile payoff table")
    table.add_argument("--temptation", type=float, default=9.0)

    check = commands.add_parser("check", help="Nash/Pareto analysis of one profile")
    check.add_argument("--profile", required=True,
                       help="three comma-separated strategies, e.g. Sigma,Sigma,Sigma")
    check.add_argument("--temptation", type=float, default=9.0)

    netgen = commands.add_parser("netgen", help="generate a network edge list")
    _add_network_flags(netgen)
    netgen.add_argument("--out", default=None, help="output path (default: stdout)")

    return parser


def _cmd_sweep(args) -> int:
    config = SweepConfig(
        network=_network_spec(args),
        scheme=InitScheme(mode=_SCHEME_MODES[(args.strategies, args.assignment)]),
        evolution=EvolutionConfig(
            max_generations=args.generations,
            window=args.window,
            equilibrium_patience=args.patience,
        ),
        t_start=args.t_start,
        t_end=args.t_end,
        t_step=args.t_step,
        replicas_per_t=args.replicas,
        master_seed=args.seed,
        output_path=args.out,
        workers=args.workers,
    )
    result = run_sweep(config)
    emit_csv(result, config.output_path)
    print(f"wrote {config.output_path} ({len(result.rows)} rows)")
    return 0


def _cmd_table(args) -> int:
    table = build_payoff_table(PayoffParams(temptation=args.temptation))
    print("A,B,C,payoff_A,payoff_B,payoff_C")
    for profile in itertools.product(STRATEGY_ORDER, repeat=3):
        pay = table.lookup(*profile)
        print(",".join(profile) + "," + ",".join(f"{value:.6f}" for value in pay))
    return 0


def _cmd_check(args) -> int:
    profile = _parse_profile(args.profile)
    table = build_payoff_table(PayoffParams(temptation=args.temptation))
    pay = table.lookup(*profile)
    print(f"profile: {','.join(profile)}")
    print(f"temptation: {args.temptation:.4f}")
    print("payoffs: (" + ", ".join(f"{value:.6f}" for value in pay) + ")")
    print(f"Nash: {'true' if is_nash(profile, table) else 'false'}")
    print(f"Pareto: {'true' if is_pareto_optimal(profile, table) else 'false'}")
    return 0


def _cmd_netgen(args) -> int:
    graph = generate_network(_network_spec(args))
    if args.out is None:
        write_edge_list(graph, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as stream:
            write_edge_list(graph, stream)
        print(f"wrote {args.out} ({graph.edge_count} edges)")
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "table": _cmd_table,
    "check": _cmd_check,
    "netgen": _cmd_netgen,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
