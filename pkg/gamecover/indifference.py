from __future__ import annotations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from loguru import logger

from . import exceptions
from .core import GameMatrix, MixedStrategy, mat_vec
from .lp import Feasible, LinearSystem, Optimal, Sense, maximize, solve_feasibility
from .utils import format_matrix, format_rational, format_rationals


class TwoByTwoType(Enum):
    COORDINATION = 1
    HAWK_DOVE = 2
    ROW1_DOMINATES = 3
    ROW2_DOMINATES = 4
    DEGENERATE = 5


class GameType2x2(Enum):
    NONE = 0
    COORDINATION = 1
    HAWK_DOVE = 2
    MATCHING_PENNIES = 3


@dataclass(frozen=True)
class DifferenceMatrix:
    """
    Differences of consecutive payoff rows: row k is (row k of A) minus
    (row k+1 of A).

    Attributes:
        rows (Tuple[Tuple[Fraction, ...], ...]): the n-1 difference rows
        source_shape (Tuple[int, int]): (n, m) of the payoff matrix
    """

    rows: Tuple[Tuple[Fraction, ...], ...]
    source_shape: Tuple[int, int]

    def __post_init__(self):
        n, m = self.source_shape
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if len(rows) != n - 1 or any(len(row) != m for row in rows):
            raise exceptions.DimensionMismatchException(
                f"a difference matrix of a {n}x{m} game has {n - 1} rows of length {m}")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return self.source_shape[1]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def to_json(self) -> Dict[str, Any]:
        return {'D': format_matrix(self.rows), 'source_shape': list(self.source_shape)}


@dataclass(frozen=True)
class AugmentedSystem:
    """
    The equal-payoff system Dbar x = b: D stacked over a row of ones, with
    b = (0, ..., 0, 1).
    """

    Dbar: Tuple[Tuple[Fraction, ...], ...]
    b: Tuple[Fraction, ...]

    def to_linear_system(self) -> LinearSystem:
        return LinearSystem.build(self.Dbar, self.b)


@dataclass(frozen=True)
class Indifferent:
    """
    An opponent strategy x with A x = (c, ..., c).
    """

    x: MixedStrategy
    c: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {'status': 'indifferent', 'x': self.x.to_json(), 'c': format_rational(self.c)}


@dataclass(frozen=True)
class NotPossible:
    """
    A witness w with wᵀD > 0 in every column: no opponent strategy makes
    the player indifferent.
    """

    w: Tuple[Fraction, ...]

    def to_json(self) -> Dict[str, Any]:
        return {'status': 'not_possible', 'w': format_rationals(self.w)}


IndifferenceOutcome = Union[Indifferent, NotPossible]


@dataclass(frozen=True)
class CoverReport:
    covered: bool
    witness: Optional[Tuple[Fraction, ...]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            'covered': self.covered,
            'witness': None if self.witness is None else format_rationals(self.witness),
        }


@dataclass(frozen=True)
class PositiveIndifference:
    """
    A strictly positive indifference-inducing strategy.

    Attributes:
        x (MixedStrategy): the strategy, maximizing its smallest weight
        t (Fraction): that smallest weight
    """

    x: MixedStrategy
    t: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {'x': self.x.to_json(), 't': format_rational(self.t)}


@dataclass(frozen=True)
class NecessaryConditionReport:
    player1: bool
    player2: bool

    def to_json(self) -> Dict[str, Any]:
        return {'player1': self.player1, 'player2': self.player2}


def _normalize_witness(w: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    # positive scaling only, so the first nonzero entry becomes +1 or -1
    lead = next((v for v in w if v != 0), None)
    if lead is None:
        return tuple(w)
    return tuple(v / abs(lead) for v in w)


def _strictly_positive_combination(w: Sequence[Fraction], D: DifferenceMatrix) -> bool:
    return all(
        sum((wk * dk for wk, dk in zip(w, D.column(j))), Fraction(0)) > 0
        for j in range(D.m)
    )


def difference_matrix(A: GameMatrix) -> DifferenceMatrix:
    if A.n < 2:
        logger.error("difference matrix needs at least two rows, got {}", A.n)
        raise exceptions.DimensionMismatchException(
            f"difference matrix needs at least two rows, got {A.n}")
    rows = tuple(
        tuple(a - b for a, b in zip(A.row(k), A.row(k + 1)))
        for k in range(A.n - 1)
    )
    return DifferenceMatrix(rows, A.shape)


def _differences(A: GameMatrix) -> DifferenceMatrix:
    # a single-strategy player has an empty difference matrix
    if A.n == 1:
        return DifferenceMatrix((), A.shape)
    return difference_matrix(A)


def augment(D: DifferenceMatrix) -> AugmentedSystem:
    ones = (Fraction(1),) * D.m
    Dbar = D.rows + (ones,)
    b = (Fraction(0),) * len(D.rows) + (Fraction(1),)
    return AugmentedSystem(Dbar, b)


def solve_indifference(A: GameMatrix) -> IndifferenceOutcome:
    """
    Find an opponent strategy that makes the row player indifferent between
    all pure strategies, or a witness that none exists.

    A one-row player is always indifferent; the returned strategy is then
    the solver's first vertex, the first pure opponent strategy.
    """
    D = _differences(A)
    outcome = solve_feasibility(augment(D).to_linear_system())
    if isinstance(outcome, Feasible):
        x = MixedStrategy(outcome.x)
        payoffs = mat_vec(A, x)
        if any(p != payoffs[0] for p in payoffs):
            raise exceptions.VerificationException(f"payoffs {payoffs} are not equal at {x}")
        logger.debug("indifference at {} with common payoff {}", x, payoffs[0])
        return Indifferent(x, payoffs[0])
    # yᵀDbar <= 0 and y_n > 0 give (-y_head)ᵀD >= y_n > 0
    w = _normalize_witness([-v for v in outcome.certificate[:-1]])
    if not _strictly_positive_combination(w, D):
        raise exceptions.VerificationException(f"witness {w} does not separate {D}")
    logger.debug("indifference impossible, witness {}", w)
    return NotPossible(w)


def half_space_cover(D: DifferenceMatrix) -> CoverReport:
    """
    Decide whether the half spaces {v : vᵀd <= 0} of the columns d of D
    cover the whole space, i.e. whether no w has wᵀD > 0.

    Strictness is homogenized: wᵀD > 0 is solvable iff wᵀD >= 1 is. Zero
    columns lie in every half space and need no special case.
    """
    k = len(D.rows)
    system = LinearSystem(
        tuple(D.column(j) for j in range(D.m)),
        (Fraction(1),) * D.m,
        (False,) * k,
        (Sense.GE,) * D.m,
    )
    outcome = solve_feasibility(system)
    if not isinstance(outcome, Feasible):
        return CoverReport(True)
    w = _normalize_witness(outcome.x)
    if not _strictly_positive_combination(w, D):
        raise exceptions.VerificationException(f"witness {w} does not separate {D}")
    return CoverReport(False, w)


def positive_indifference(A: GameMatrix) -> Optional[PositiveIndifference]:
    """
    Maximize t subject to D x = 0, sum(x) = 1, x_i >= t and return the
    optimum when t > 0. Ties between optimal strategies follow the pivot
    rule; only t and strict positivity are meaningful.
    """
    D = _differences(A)
    m = A.m
    matrix: List[Tuple[Fraction, ...]] = []
    rhs: List[Fraction] = []
    senses: List[Sense] = []
    for row in D.rows:
        matrix.append(row + (Fraction(0),))
        rhs.append(Fraction(0))
        senses.append(Sense.EQ)
    matrix.append((Fraction(1),) * m + (Fraction(0),))
    rhs.append(Fraction(1))
    senses.append(Sense.EQ)
    for i in range(m):
        matrix.append(tuple(Fraction(int(i == j)) for j in range(m)) + (Fraction(-1),))
        rhs.append(Fraction(0))
        senses.append(Sense.GE)
    system = LinearSystem(tuple(matrix), tuple(rhs), (True,) * m + (False,), tuple(senses))
    outcome = maximize((0,) * m + (1,), system)
    if not isinstance(outcome, Optimal) or outcome.value <= 0:
        logger.debug("no strictly positive indifference point for {}", A)
        return None
    x = MixedStrategy(outcome.x[:m])
    payoffs = mat_vec(A, x)
    if any(p != payoffs[0] for p in payoffs):
        raise exceptions.VerificationException(f"payoffs {payoffs} are not equal at {x}")
    return PositiveIndifference(x, outcome.value)


def _check_bimatrix(A1: GameMatrix, A2: GameMatrix) -> None:
    if A1.n != A2.m or A1.m != A2.n:
        logger.error("player matrices {}x{} and {}x{} do not fit together", A1.n, A1.m, A2.n, A2.m)
        raise exceptions.DimensionMismatchException(
            f"player matrices {A1.n}x{A1.m} and {A2.n}x{A2.m} do not fit together")


def necessary_condition(A1: GameMatrix, A2: GameMatrix) -> NecessaryConditionReport:
    """
    Per player, whether the half spaces of its difference columns cover the
    space; a completely mixed equilibrium needs both.
    """
    _check_bimatrix(A1, A2)
    return NecessaryConditionReport(
        half_space_cover(_differences(A1)).covered,
        half_space_cover(_differences(A2)).covered,
    )


def completely_mixed_equilibrium(A1: GameMatrix, A2: GameMatrix) -> Optional[Tuple[MixedStrategy, MixedStrategy]]:
    """
    A Nash equilibrium (x, y) in which both players mix over all pure
    strategies and are indifferent between them, or None.

    A1 holds player 1's payoffs (n1 x n2); A2 holds player 2's payoffs with
    player 2's strategies as rows (n2 x n1).
    """
    _check_bimatrix(A1, A2)
    for_player1 = positive_indifference(A1)
    for_player2 = positive_indifference(A2)
    if for_player1 is None or for_player2 is None:
        return None
    x, y = for_player2.x, for_player1.x
    from .oracle import best_reply_check
    if not best_reply_check(A1, A2, x, y):
        raise exceptions.VerificationException(f"({x}, {y}) is not an equilibrium")
    return x, y


def two_by_two_type(A: GameMatrix) -> TwoByTwoType:
    """
    Sign pattern of the single difference row (a-c, b-d) of a 2x2 payoff
    matrix [[a, b], [c, d]].
    """
    if A.shape != (2, 2):
        raise exceptions.DimensionMismatchException(f"expected a 2x2 matrix, got {A.n}x{A.m}")
    first, second = difference_matrix(A).rows[0]
    if first > 0 and second < 0:
        return TwoByTwoType.COORDINATION
    if first < 0 and second > 0:
        return TwoByTwoType.HAWK_DOVE
    if first > 0 and second > 0:
        return TwoByTwoType.ROW1_DOMINATES
    if first < 0 and second < 0:
        return TwoByTwoType.ROW2_DOMINATES
    return TwoByTwoType.DEGENERATE


def game_type_2x2(A1: GameMatrix, A2: GameMatrix) -> GameType2x2:
    _check_bimatrix(A1, A2)
    types = {two_by_two_type(A1), two_by_two_type(A2)}
    if types == {TwoByTwoType.COORDINATION}:
        return GameType2x2.COORDINATION
    if types == {TwoByTwoType.HAWK_DOVE}:
        return GameType2x2.HAWK_DOVE
    if types == {TwoByTwoType.COORDINATION, TwoByTwoType.HAWK_DOVE}:
        return GameType2x2.MATCHING_PENNIES
    return GameType2x2.NONE
