"""Entangled three-player prisoner's dilemma engine.

Each player holds one qubit of a shared entangled triple and plays one of
five fixed 2x2 unitaries. The circuit entangles |000>, applies the three
local moves, disentangles, and measures; a player's payoff is the expected
value of the classical outcome table under the resulting distribution.

All 8x8 matrices are built once at import time. Everything downstream of
the 125-entry payoff table is plain float arithmetic, so the evolutionary
hot path never touches linear algebra.
"""

import itertools
from dataclasses import dataclass

import numpy as np

#: Canonical move order used for codes, tables and CSV columns.
STRATEGY_ORDER = ("C", "D", "H", "Q", "Sigma")

#: The two classical moves (cooperate / defect).
CLASSICAL_ORDER = ("C", "D")

_SQRT_HALF = 2.0 ** -0.5


def _fixed(entries) -> np.ndarray:
    out = np.array(entries, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Strategy:
    """A named move: the 2x2 unitary applied to the owner's qubit."""

    tag: str
    matrix: np.ndarray


STRATEGIES = {
    "C": Strategy("C", _fixed([[1, 0], [0, 1]])),
    "D": Strategy("D", _fixed([[0, 1], [1, 0]])),
    "H": Strategy("H", _fixed([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]])),
    "Q": Strategy("Q", _fixed([[1j, 0], [0, -1j]])),
    "Sigma": Strategy("Sigma", _fixed([[0, 1], [-1, 0]])),
}

STRATEGY_CODES = {tag: code for code, tag in enumerate(STRATEGY_ORDER)}


def strategy(move) -> Strategy:
    """Coerce a tag or Strategy to a Strategy; unknown tags raise ValueError."""
    if isinstance(move, Strategy):
        return move
    try:
        return STRATEGIES[move]
    except KeyError:
        raise ValueError(
            f"unknown strategy {move!r}; expected one of {', '.join(STRATEGY_ORDER)}"
        ) from None


def kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Kronecker product of three 2x2 matrices, first factor most significant."""
    return np.kron(np.kron(a, b), c)


def entangler() -> np.ndarray:
    """The entangling gate (identity + i * triple bit-flip) / sqrt(2)."""
    flip = STRATEGIES["D"].matrix
    return (np.eye(8, dtype=complex) + 1j * kron3(flip, flip, flip)) * _SQRT_HALF


# Built once per process; the hot path only reads the cached payoff table.
_ENTANGLER = entangler()
_DISENTANGLER = _ENTANGLER.conj().T
_INITIAL = _ENTANGLER[:, 0].copy()  # entangler applied to |000>


def final_state(move_a, move_b, move_c) -> np.ndarray:
    """State vector after entangle, local moves, disentangle, from |000>."""
    local = kron3(
        strategy(move_a).matrix, strategy(move_b).matrix, strategy(move_c).matrix
    )
    return _DISENTANGLER @ (local @ _INITIAL)


def outcome_probabilities(move_a, move_b, move_c) -> np.ndarray:
    """Measurement distribution over the 8 classical outcomes."""
    return np.abs(final_state(move_a, move_b, move_c)) ** 2


@dataclass(frozen=True)
class PayoffParams:
    """Classical outcome payoffs, parameterized by the temptation value.

    A player's payoff in an outcome depends only on their own move and on
    how many of the other two defected: full cooperation pays 6, a lone
    defector collects the temptation, and so on down to 1 for mutual
    defection. The game is a genuine prisoner's dilemma only above
    temptation 6.
    """

    temptation: float = 9.0

    def outcome_payoff(self, defects: bool, other_defectors: int) -> float:
        if defects:
            return (self.temptation, 5.0, 1.0)[other_defectors]
        return (6.0, 3.0, 0.0)[other_defectors]

    @property
    def is_prisoners_dilemma(self) -> bool:
        return self.temptation > 6.0

    @property
    def max_entry(self) -> float:
        """Largest outcome payoff; the imitation-rule normalizer."""
        return max(6.0, self.temptation)

    def outcome_matrix(self) -> np.ndarray:
        """(8, 3) array: payoff of each player in each measured outcome."""
        cells = np.empty((8, 3))
        for index in range(8):
            bits = ((index >> 2) & 1, (index >> 1) & 1, index & 1)
            defectors = sum(bits)
            for player in range(3):
                cells[index, player] = self.outcome_payoff(
                    bool(bits[player]), defectors - bits[player]
                )
        return cells


def payoffs(move_a, move_b, move_c, params: PayoffParams) -> tuple[float, float, float]:
    """Expected payoff triple for one ordered profile."""
    probs = outcome_probabilities(move_a, move_b, move_c)
    triple = probs @ params.outcome_matrix()
    return (float(triple[0]), float(triple[1]), float(triple[2]))


@dataclass(frozen=True)
class PayoffTable:
    """Payoff triples for all 125 ordered profiles of the five moves.

    ``values[a, b, c]`` is the payoff triple for the profile whose moves
    have codes a, b, c in STRATEGY_ORDER.
    """

    params: PayoffParams
    values: np.ndarray

    def lookup(self, move_a, move_b, move_c) -> tuple[float, float, float]:
        triple = self.values[
            STRATEGY_CODES[strategy(move_a).tag],
            STRATEGY_CODES[strategy(move_b).tag],
            STRATEGY_CODES[strategy(move_c).tag],
        ]
        return (float(triple[0]), float(triple[1]), float(triple[2]))


def build_payoff_table(params: PayoffParams) -> PayoffTable:
    """Evaluate the circuit for every ordered profile and cache the results."""
    cells = params.outcome_matrix()
    values = np.empty((5, 5, 5, 3))
    for (a, ta), (b, tb), (c, tc) in itertools.product(
        enumerate(STRATEGY_ORDER), repeat=3
    ):
        probs = np.abs(final_state(ta, tb, tc)) ** 2
        values[a, b, c] = probs @ cells
    values.setflags(write=False)
    return PayoffTable(params=params, values=values)


def is_nash(profile, table: PayoffTable, tol: float = 1e-9,
            moves=STRATEGY_ORDER) -> bool:
    """True when no player gains more than tol by a unilateral switch.

    ``moves`` restricts the deviations considered, e.g. the classical pair
    ("C", "D") for the unquantized sub-game.
    """
    tags = tuple(strategy(move).tag for move in profile)
    own = table.lookup(*tags)
    for player in range(3):
        for alternative in moves:
            if alternative == tags[player]:
                continue
            deviated = list(tags)
            deviated[player] = alternative
            if table.lookup(*deviated)[player] > own[player] + tol:
                return False
    return True


def is_pareto_optimal(profile, table: PayoffTable, tol: float = 1e-9,
                      moves=STRATEGY_ORDER) -> bool:
    """True when no profile over ``moves`` weakly improves all three payoffs
    with at least one improvement exceeding tol (weakness judged within tol)."""
    tags = tuple(strategy(move).tag for move in profile)
    own = table.lookup(*tags)
    for other in itertools.product(moves, repeat=3):
        if other == tags:
            continue
        pay = table.lookup(*other)
        if all(pay[p] >= own[p] - tol for p in range(3)) and any(
            pay[p] > own[p] + tol for p in range(3)
        ):
            return False
    return True
