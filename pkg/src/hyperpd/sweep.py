"""Temptation-sweep harness: seeded replicas over a T grid, emitted as CSV.

Every (T, replica) cell is an independent task. Its seeds are pure
functions of the master seed, derived by chaining splitmix64 over a
stream tag and the cell indices:

    derive_seed(master, *path):
        s = master & (2**64 - 1)
        for ix in path:
            s = splitmix64(s XOR (ix & (2**64 - 1)))
        return s

    splitmix64(x):
        x = (x + 0x9E3779B97F4A7C15) mod 2**64
        x = ((x XOR (x >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
        x = ((x XOR (x >> 27)) * 0x94D049BB133111EB) mod 2**64
        return x XOR (x >> 31)

Stream tags: network = 1 with path (tag, replica), so one topology is
shared across the whole T grid within a replica; population init = 2 and
evolution = 3 with path (tag, T index, replica). Results are assembled
in (T index, replica) order regardless of worker count, so a fixed
config always yields byte-identical CSV.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import EvolutionConfig, InitScheme, run
from .errors import ConfigError
from .game import PayoffParams, build_payoff_table
from .networks import NetworkSpec, generate_network

_MASK64 = (1 << 64) - 1

NETWORK_STREAM = 1
INIT_STREAM = 2
EVOLUTION_STREAM = 3

CSV_HEADER = "T,freq_C,freq_D,freq_H,freq_Q,freq_Sigma,generations,equilibrium,replica"


def splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    state = ((state ^ (state >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    state = ((state ^ (state >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state ^ (state >> 31)


def derive_seed(master_seed: int, *path: int) -> int:
    """Mix the master seed with a path of indices; see the module docstring."""
    state = master_seed & _MASK64
    for index in path:
        state = splitmix64(state ^ (index & _MASK64))
    return state


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a network recipe, an init scheme, run settings, and a T grid.

    The seed fields inside ``network``, ``scheme`` and ``evolution`` are
    ignored; per-cell seeds are derived from ``master_seed``.
    """

    network: NetworkSpec
    scheme: InitScheme
    evolution: EvolutionConfig
    t_start: float = 5.0
    t_end: float = 9.0
    t_step: float = 0.05
    replicas_per_t: int = 1
    master_seed: int = 0
    output_path: str = "sweep.csv"
    workers: int = 1

    def validate(self) -> None:
        self.network.validate()
        self.scheme.validate()
        self.evolution.validate()
        if self.t_start > self.t_end:
            raise ConfigError(f"t_start: must not exceed t_end, got {self.t_start} > {self.t_end}")
        if self.t_step <= 0:
            raise ConfigError(f"t_step: must be positive, got {self.t_step}")
        if self.replicas_per_t < 1:
            raise ConfigError(f"replicas_per_t: must be positive, got {self.replicas_per_t}")
        if self.workers < 1:
            raise ConfigError(f"workers: must be positive, got {self.workers}")


def temptation_grid(t_start: float, t_end: float, t_step: float) -> list:
    """Inclusive grid t_start, t_start + t_step, ...; the endpoint is kept
    when it sits within one part in 10^6 of a step multiple."""
    points = int((t_end - t_start) / t_step + 1e-6) + 1
    return [t_start + index * t_step for index in range(points)]


@dataclass(frozen=True)
class SweepRow:
    """One result row; replica None marks a per-T mean over replicas."""

    temptation: float
    frequencies: tuple
    generations: int
    equilibrium: bool
    equilibrium_generation: int | None = None
    replica: int | None = 0


@dataclass
class SweepResult:
    rows: list


def run_cell(config: SweepConfig, t_index: int, temptation: float, replica: int) -> SweepRow:
    """Run one (T, replica) cell from scratch; deterministic given the config."""
    network = replace(
        config.network, seed=derive_seed(config.master_seed, NETWORK_STREAM, replica)
    )
    graph = generate_network(network)
    table = build_payoff_table(PayoffParams(temptation))
    scheme = replace(
        config.scheme, seed=derive_seed(config.master_seed, INIT_STREAM, t_index, replica)
    )
    evolution = replace(
        config.evolution, seed=derive_seed(config.master_seed, EVOLUTION_STREAM, t_index, replica)
    )
    trajectory = run(graph, scheme, evolution, table)
    return SweepRow(
        temptation=temptation,
        frequencies=tuple(float(f) for f in trajectory.averaged_frequencies),
        generations=trajectory.generations_run,
        equilibrium=trajectory.equilibrium_reached,
        equilibrium_generation=trajectory.equilibrium_generation,
        replica=replica,
    )


def _mean_row(temptation: float, rows: list) -> SweepRow:
    stacked = np.array([row.frequencies for row in rows])
    return SweepRow(
        temptation=temptation,
        frequencies=tuple(float(f) for f in stacked.mean(axis=0)),
        generations=round(sum(row.generations for row in rows) / len(rows)),
        equilibrium=all(row.equilibrium for row in rows),
        equilibrium_generation=None,
        replica=None,
    )


def run_sweep(config: SweepConfig) -> SweepResult:
    """All cells of the grid, optionally on a process pool, in stable order."""
    config.validate()
    grid = temptation_grid(config.t_start, config.t_end, config.t_step)
    cells = [
        (t_index, temptation, replica)
        for (t_index, temptation), replica in itertools.product(
            enumerate(grid), range(config.replicas_per_t)
        )
    ]
    if config.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            cell_rows = list(
                pool.map(
                    run_cell,
                    itertools.repeat(config),
                    *zip(*cells),
                )
            )
    else:
        cell_rows = [run_cell(config, *cell) for cell in cells]

    rows = []
    per_t = config.replicas_per_t
    for t_index, temptation in enumerate(grid):
        group = cell_rows[t_index * per_t:(t_index + 1) * per_t]
        rows.extend(group)
        if per_t > 1:
            rows.append(_mean_row(temptation, group))
    return SweepResult(rows=rows)


def format_row(row: SweepRow) -> str:
    frequencies = ",".join(f"{value:.6f}" for value in row.frequencies)
    equilibrium = "true" if row.equilibrium else "false"
    replica = "mean" if row.replica is None else str(row.replica)
    return f"{row.temptation:.4f},{frequencies},{row.generations},{equilibrium},{replica}"


def emit_csv(result: SweepResult, path) -> None:
    """UTF-8 CSV with a fixed header; always carries all five strategy columns."""
    lines = [CSV_HEADER] + [format_row(row) for row in result.rows]
    with open(path, "w", encoding="utf-8", newline="") as stream:
        stream.write("\n".join(lines) + "\n")


def parse_csv(path) -> SweepResult:
    """Inverse of emit_csv up to the columns the CSV carries."""
    with open(path, "r", encoding="utf-8") as stream:
        header = stream.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = []
        for line in stream:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 9:
                raise ValueError(f"{path}: expected 9 fields, got {len(parts)}: {line!r}")
            if parts[7] not in ("true", "false"):
                raise ValueError(f"{path}: bad equilibrium flag {parts[7]!r}")
            rows.append(
                SweepRow(
                    temptation=float(parts[0]),
                    frequencies=tuple(float(part) for part in parts[1:6]),
                    generations=int(parts[6]),
                    equilibrium=parts[7] == "true",
                    equilibrium_generation=None,
                    replica=None if parts[8] == "mean" else int(parts[8]),
                )
            )
    return SweepResult(rows=rows)


__all__ = [
    "CSV_HEADER",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "derive_seed",
    "emit_csv",
    "format_row",
    "parse_csv",
    "run_cell",
    "run_sweep",
    "splitmix64",
    "temptation_grid",
]
