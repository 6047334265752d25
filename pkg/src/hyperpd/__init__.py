"""Quantum three-player prisoner's dilemma on hypergraph networks.

A deterministic, seedable simulator: an entangled-circuit payoff engine
over five fixed strategies, random and scale-free-like 3-uniform
hypergraph generators, synchronous imitation dynamics, and a temptation
sweep harness with CSV output and a CLI.
"""

from .dynamics import (
    HUB_Q,
    HUB_SIGMA,
    INIT_MODES,
    WEIGHTED_FIVE,
    WEIGHTED_FOUR,
    EvolutionConfig,
    InitScheme,
    Population,
    Trajectory,
    accumulate_payoffs,
    imitation_probability,
    init_population,
    run,
    step_generation,
)
from .errors import ConfigError
from .game import (
    CLASSICAL_ORDER,
    STRATEGIES,
    STRATEGY_CODES,
    STRATEGY_ORDER,
    PayoffParams,
    PayoffTable,
    Strategy,
    build_payoff_table,
    entangler,
    final_state,
    is_nash,
    is_pareto_optimal,
    kron3,
    outcome_probabilities,
    payoffs,
    strategy,
)
from .networks import (
    RANDOM,
    SCALE_FREE,
    Hypergraph,
    NetworkSpec,
    generate_network,
    generate_random,
    generate_scale_free,
    load_edge_list,
    save_edge_list,
    write_edge_list,
)
from .sweep import (
    CSV_HEADER,
    SweepConfig,
    SweepResult,
    SweepRow,
    derive_seed,
    emit_csv,
    parse_csv,
    run_cell,
    run_sweep,
    splitmix64,
    temptation_grid,
)

__version__ = "0.1.0"
