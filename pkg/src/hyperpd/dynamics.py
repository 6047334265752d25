"""Generational imitation dynamics on a hypergraph population.

Every generation is synchronous: each agent's accumulated payoff is the
sum of its game payoffs over all incident hyperedges, then every
non-isolated agent picks one neighbor uniformly and copies that
neighbor's current strategy with probability proportional to the payoff
gap, normalized by the larger degree times the largest table entry. All
adoptions read the pre-update strategies and are applied at once.

Randomness per generation is drawn from the run's single stream in two
blocks, both in node-id order over the non-isolated agents: first the
neighbor-choice uniforms, then the adoption uniforms. This fixed draw
order is what makes runs bit-reproducible.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .game import STRATEGY_CODES, STRATEGY_ORDER, PayoffTable
from .networks import Hypergraph

WEIGHTED_FOUR = "weighted4"
WEIGHTED_FIVE = "weighted5"
HUB_Q = "hub-q"
HUB_SIGMA = "hub-sigma"

INIT_MODES = (WEIGHTED_FOUR, WEIGHTED_FIVE, HUB_Q, HUB_SIGMA)

# Initial weight of each strategy, in STRATEGY_ORDER, for the weighted modes.
_WEIGHTS = {
    WEIGHTED_FOUR: (0.49, 0.49, 0.01, 0.01, 0.0),
    WEIGHTED_FIVE: (0.48, 0.48, 0.02, 0.01, 0.01),
}

# Hub modes: the special strategy goes to the highest-degree node, the rest
# of the population draws uniformly from the remaining strategies.
_HUB_SPECIAL = {HUB_Q: "Q", HUB_SIGMA: "Sigma"}
_HUB_REST = {HUB_Q: ("C", "D", "H"), HUB_SIGMA: ("C", "D", "H", "Q")}


@dataclass(frozen=True)
class InitScheme:
    """How the initial strategies are assigned, plus the seed doing it."""

    mode: str
    seed: int = 0

    def validate(self) -> None:
        if self.mode not in INIT_MODES:
            raise ConfigError(f"mode: expected one of {INIT_MODES}, got {self.mode!r}")

    @property
    def active_tags(self) -> tuple:
        """Strategies that can appear at generation zero."""
        if self.mode in (WEIGHTED_FOUR, HUB_Q):
            return ("C", "D", "H", "Q")
        return STRATEGY_ORDER


@dataclass
class Population:
    """Per-node strategy codes (indices into STRATEGY_ORDER) at one generation."""

    codes: np.ndarray
    generation: int = 0

    def frequencies(self) -> np.ndarray:
        """Fraction of agents on each strategy, in STRATEGY_ORDER."""
        counts = np.bincount(self.codes, minlength=len(STRATEGY_ORDER))
        return counts / self.codes.size

    def tags(self) -> list:
        return [STRATEGY_ORDER[code] for code in self.codes]


@dataclass(frozen=True)
class EvolutionConfig:
    """Run length, trailing window, and equilibrium patience.

    The imitation normalizer is not configured here: it is always the
    largest entry of the active payoff table, max(6, T).
    """

    max_generations: int = 10000
    window: int = 1000
    equilibrium_patience: int = 500
    seed: int = 0

    def validate(self) -> None:
        if self.max_generations < 1:
            raise ConfigError(f"max_generations: must be positive, got {self.max_generations}")
        if not 1 <= self.window <= self.max_generations:
            raise ConfigError(
                f"window: need 1 <= window <= max_generations, got {self.window}"
            )
        if self.equilibrium_patience < 1:
            raise ConfigError(
                f"equilibrium_patience: must be positive, got {self.equilibrium_patience}"
            )


@dataclass
class Trajectory:
    """Frequency history of one run, plus its trailing-window average.

    ``frequencies`` has one row per completed generation. When the
    population froze for the configured patience, ``averaged_frequencies``
    is the constant equilibrium state; otherwise it is the mean of the
    last ``window`` rows (or all rows, if fewer).
    """

    initial_frequencies: np.ndarray
    frequencies: np.ndarray
    averaged_frequencies: np.ndarray
    equilibrium_generation: int | None = None

    @property
    def generations_run(self) -> int:
        return self.frequencies.shape[0]

    @property
    def equilibrium_reached(self) -> bool:
        return self.equilibrium_generation is not None


def _sample_weighted(rng, weights, size) -> np.ndarray:
    cumulative = np.cumsum(np.asarray(weights, dtype=np.float64))
    draws = rng.random(size) * cumulative[-1]
    picks = np.searchsorted(cumulative, draws, side="right")
    return np.minimum(picks, len(cumulative) - 1)


def init_population(graph: Hypergraph, scheme: InitScheme) -> Population:
    """Assign generation-zero strategies per the scheme, seeded by it."""
    scheme.validate()
    rng = np.random.default_rng(scheme.seed)
    n = graph.node_count
    if scheme.mode in _WEIGHTS:
        codes = _sample_weighted(rng, _WEIGHTS[scheme.mode], n).astype(np.int8)
    else:
        rest = np.array([STRATEGY_CODES[tag] for tag in _HUB_REST[scheme.mode]], dtype=np.int8)
        codes = rest[_sample_weighted(rng, np.ones(rest.size), n)]
        codes[graph.highest_degree_node()] = STRATEGY_CODES[_HUB_SPECIAL[scheme.mode]]
    return Population(codes=codes, generation=0)


def accumulate_payoffs(graph: Hypergraph, pop: Population, table: PayoffTable) -> np.ndarray:
    """Per-node total payoff over all incident hyperedges (0 for isolated nodes)."""
    totals = np.zeros(graph.node_count)
    edges = graph.edge_array()
    if edges.size:
        members = pop.codes[edges]
        per_edge = table.values[members[:, 0], members[:, 1], members[:, 2]]
        np.add.at(totals, edges.ravel(), per_edge.ravel())
    return totals


def imitation_probability(payoff_i, payoff_j, degree_i, degree_j, alpha):
    """Probability that agent i copies agent j; accepts scalars or arrays.

    Zero unless j outperforms i; otherwise the payoff gap over
    alpha * max(degree_i, degree_j), which caps it at 1 whenever payoffs
    are bounded by alpha per game.
    """
    gain = np.subtract(payoff_j, payoff_i)
    scale = np.multiply(alpha, np.maximum(degree_i, degree_j))
    prob = np.where(gain > 0.0, gain / scale, 0.0)
    return float(prob) if prob.ndim == 0 else prob


def step_generation(graph: Hypergraph, pop: Population, table: PayoffTable,
                    config: EvolutionConfig, rng) -> Population:
    """One synchronous generation; adoptions read only pre-update strategies."""
    totals = accumulate_payoffs(graph, pop, table)
    degrees = graph.degrees
    active = np.nonzero(degrees > 0)[0]
    flat, offsets = graph.neighbor_arrays()

    counts = offsets[active + 1] - offsets[active]
    choice = rng.random(active.size)
    accept = rng.random(active.size)
    picks = offsets[active] + np.minimum((choice * counts).astype(np.int64), counts - 1)
    partners = flat[picks]

    prob = imitation_probability(
        totals[active], totals[partners], degrees[active], degrees[partners],
        table.params.max_entry,
    )
    adopting = accept < prob
    new_codes = pop.codes.copy()
    new_codes[active[adopting]] = pop.codes[partners[adopting]]
    return Population(codes=new_codes, generation=pop.generation + 1)


def run(graph: Hypergraph, scheme: InitScheme, config: EvolutionConfig,
        table: PayoffTable, initial: Population | None = None) -> Trajectory:
    """Run the dynamics until max_generations or a frozen population.

    The run stops early once the strategy vector has been bit-identical
    for ``equilibrium_patience`` consecutive generations, recording the
    generation at which that happened. ``initial`` overrides the scheme's
    assignment, for driving the dynamics from a prepared population.
    """
    config.validate()
    pop = init_population(graph, scheme) if initial is None else initial
    rng = np.random.default_rng(config.seed)
    start_frequencies = pop.frequencies()
    history = np.empty((config.max_generations, len(STRATEGY_ORDER)))
    done = 0
    unchanged = 0
    equilibrium_generation = None
    for _ in range(config.max_generations):
        successor = step_generation(graph, pop, table, config, rng)
        history[done] = successor.frequencies()
        done += 1
        unchanged = unchanged + 1 if np.array_equal(successor.codes, pop.codes) else 0
        pop = successor
        if unchanged >= config.equilibrium_patience:
            equilibrium_generation = pop.generation
            break
    frequencies = history[:done].copy()
    if equilibrium_generation is not None:
        averaged = frequencies[-1].copy()
    else:
        averaged = frequencies[-min(config.window, done):].mean(axis=0)
    return Trajectory(
        initial_frequencies=start_frequencies,
        frequencies=frequencies,
        averaged_frequencies=averaged,
        equilibrium_generation=equilibrium_generation,
    )
