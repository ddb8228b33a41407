"""
Brute-force ground truth for small games: strict dominance by mixtures and
Nash equilibria by support enumeration.
"""
from __future__ import annotations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from fractions import Fraction
import itertools

from loguru import logger

from . import config, exceptions
from .core import GameMatrix, MixedStrategy, expected_payoff, mat_vec
from .indifference import augment, positive_indifference, _check_bimatrix, _differences
from .lp import LinearSystem, Optimal, Sense, maximize
from .utils import format_rational


@dataclass(frozen=True)
class DominanceResult:
    """
    Row `dominated` earns strictly less than the mixture `dominator` against
    every opponent pure strategy, by at least `margin`.

    Attributes:
        dominated (int): 0-based index of the dominated strategy
        dominator (MixedStrategy): mixture over the other strategies (zero weight at `dominated`)
        margin (Fraction): the largest uniform payoff gap, positive
    """

    dominated: int
    dominator: MixedStrategy
    margin: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {
            'dominated': self.dominated + 1,
            'dominator': self.dominator.to_json(),
            'margin': format_rational(self.margin),
        }


@dataclass(frozen=True)
class Equilibrium:
    """
    One equilibrium profile: a single strategy for a symmetric equilibrium
    (both players use it), otherwise one per player.
    """

    supports: Tuple[Tuple[int, ...], ...]
    profile: Tuple[MixedStrategy, ...]
    completely_mixed: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            'supports': [[i + 1 for i in support] for support in self.supports],
            'profile': [x.to_json() for x in self.profile],
            'completely_mixed': self.completely_mixed,
        }


@dataclass(frozen=True)
class EquilibriumSet:
    """
    Equilibria in support enumeration order (by support size, then
    lexicographically). When `degenerate` is set the list may be partial
    and uniqueness must not be concluded from it.
    """

    equilibria: Tuple[Equilibrium, ...]
    degenerate: bool

    @property
    def completely_mixed(self) -> Tuple[Equilibrium, ...]:
        return tuple(e for e in self.equilibria if e.completely_mixed)

    @property
    def unique_completely_mixed(self) -> bool:
        return len(self.equilibria) == 1 and self.equilibria[0].completely_mixed

    def __len__(self) -> int:
        return len(self.equilibria)

    def to_json(self) -> Dict[str, Any]:
        return {
            'equilibria': [e.to_json() for e in self.equilibria],
            'count': len(self.equilibria),
            'degenerate': self.degenerate,
        }


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    matrix = [list(row) for row in rows]
    rank = 0
    width = len(matrix[0]) if matrix else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for r in range(rank + 1, len(matrix)):
            factor = matrix[r][col] / matrix[rank][col]
            if factor:
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


def _embed(x: MixedStrategy, support: Sequence[int], size: int) -> MixedStrategy:
    weights = [Fraction(0)] * size
    for i, w in zip(support, x):
        weights[i] = w
    return MixedStrategy(tuple(weights))


def _supports(size: int) -> Iterator[Tuple[int, ...]]:
    for k in range(1, size + 1):
        yield from itertools.combinations(range(size), k)


def _singular(sub: GameMatrix) -> bool:
    # the within-support system has a unique solution iff Dbar has full column rank
    return _rank(augment(_differences(sub)).Dbar) < sub.m


def _best_replies(payoffs: Sequence[Fraction]) -> Tuple[int, ...]:
    top = max(payoffs)
    return tuple(i for i, p in enumerate(payoffs) if p == top)


def _check_cap(*sizes: int) -> None:
    cap = config.get_oracle_max_strategies()
    if max(sizes) > cap:
        logger.error("support enumeration is limited to {} strategies, got {}", cap, max(sizes))
        raise exceptions.OracleLimitException(
            f"support enumeration is limited to {cap} strategies, got {max(sizes)}")


def strictly_dominated(A: GameMatrix, i: int) -> Optional[DominanceResult]:
    """
    Look for a mixture of the other rows that beats row i against every
    column. The margin variable e is maximized subject to
    sum_k l_k A[k][j] - e >= A[i][j]; the row is dominated iff e* > 0.
    """
    if A.n < 2:
        raise exceptions.DimensionMismatchException("dominance needs at least two strategies")
    if not 0 <= i < A.n:
        logger.error("strategy index {} out of range for {} strategies", i, A.n)
        raise IndexError(f"strategy index {i} out of range for {A.n} strategies")
    others = [k for k in range(A.n) if k != i]
    matrix = [tuple(A.entries[k][j] for k in others) + (Fraction(-1),) for j in range(A.m)]
    rhs = [A.entries[i][j] for j in range(A.m)]
    senses = [Sense.GE] * A.m
    matrix.append((Fraction(1),) * len(others) + (Fraction(0),))
    rhs.append(Fraction(1))
    senses.append(Sense.EQ)
    system = LinearSystem(tuple(matrix), tuple(rhs), (True,) * len(others) + (False,), tuple(senses))
    outcome = maximize((0,) * len(others) + (1,), system)
    if not isinstance(outcome, Optimal) or outcome.value <= 0:
        return None
    dominator = _embed(MixedStrategy(outcome.x[:-1]), others, A.n)
    for j in range(A.m):
        mixed = sum((w * A.entries[k][j] for k, w in enumerate(dominator)), Fraction(0))
        if mixed < A.entries[i][j] + outcome.value:
            raise exceptions.VerificationException(f"mixture {dominator} does not dominate row {i}")
    logger.debug("row {} dominated by {} with margin {}", i, dominator, outcome.value)
    return DominanceResult(i, dominator, outcome.value)


def best_reply_check(A1: GameMatrix, A2: GameMatrix, x: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    """
    True iff neither player gains by a pure deviation from (x, y).

    A1 is player 1's payoff matrix (n1 x n2); A2 is player 2's, rows being
    player 2's own strategies (n2 x n1).
    """
    _check_bimatrix(A1, A2)
    x, y = list(x), list(y)
    if len(x) != A1.n or len(y) != A1.m:
        logger.error("profile sizes {} and {} do not fit a {}x{} game", len(x), len(y), A1.n, A1.m)
        raise exceptions.DimensionMismatchException(
            f"profile sizes {len(x)} and {len(y)} do not fit a {A1.n}x{A1.m} game")
    value1 = expected_payoff(A1, x, y)
    value2 = expected_payoff(A2, y, x)
    return max(mat_vec(A1, y)) <= value1 and max(mat_vec(A2, x)) <= value2


def symmetric_equilibria(A: GameMatrix) -> EquilibriumSet:
    """
    All symmetric equilibria (x, x) of a symmetric game by support
    enumeration.

    For each support S the equal-payoff system restricted to S is solved for
    a strictly positive point; it is kept when no strategy outside S earns
    more. The game is flagged degenerate when a solved support system is
    singular or a kept point has more pure best replies than its support size.
    """
    if not A.symmetric:
        logger.error("symmetric equilibria need a symmetric game, got {}", A)
        raise exceptions.NotSymmetricException("symmetric equilibria need a symmetric game")
    _check_cap(A.n)
    found: List[Equilibrium] = []
    degenerate = False
    for support in _supports(A.n):
        sub = A.submatrix(support, support)
        solution = positive_indifference(sub)
        if solution is None:
            continue
        x = _embed(solution.x, support, A.n)
        if _singular(sub):
            # other points of the solution set may be equilibria too
            logger.warning("degenerate game: support {} has a continuum of indifference points", support)
            degenerate = True
        payoffs = mat_vec(A, x)
        value = payoffs[support[0]]
        if any(payoffs[i] > value for i in range(A.n) if i not in support):
            continue
        if len(_best_replies(payoffs)) > len(support):
            logger.warning("degenerate game: support {} at {}", support, x)
            degenerate = True
        if not best_reply_check(A, A, x, x):
            raise exceptions.VerificationException(f"{x} is not a symmetric equilibrium")
        logger.debug("symmetric equilibrium {} on support {}", x, support)
        found.append(Equilibrium((support,), (x,), x.is_completely_mixed))
    return EquilibriumSet(tuple(found), degenerate)


def bimatrix_equilibria(A1: GameMatrix, A2: GameMatrix) -> EquilibriumSet:
    """
    All equilibria (x, y) found by enumerating support pairs, ordered by
    player 1's support (size, then lexicographically) and then player 2's.
    """
    _check_bimatrix(A1, A2)
    _check_cap(A1.n, A1.m)
    found: List[Equilibrium] = []
    degenerate = False
    for rows in _supports(A1.n):
        for cols in _supports(A1.m):
            sub1 = A1.submatrix(rows, cols)
            sub2 = A2.submatrix(cols, rows)
            for_player1 = positive_indifference(sub1)
            if for_player1 is None:
                continue
            for_player2 = positive_indifference(sub2)
            if for_player2 is None:
                continue
            y = _embed(for_player1.x, cols, A1.m)
            x = _embed(for_player2.x, rows, A1.n)
            if _singular(sub1) or _singular(sub2):
                logger.warning("degenerate game: supports {} and {} have a continuum of indifference points",
                               rows, cols)
                degenerate = True
            payoffs1, payoffs2 = mat_vec(A1, y), mat_vec(A2, x)
            if max(payoffs1) > payoffs1[rows[0]] or max(payoffs2) > payoffs2[cols[0]]:
                continue
            if len(_best_replies(payoffs1)) > len(cols) or len(_best_replies(payoffs2)) > len(rows):
                logger.warning("degenerate game: supports {} and {}", rows, cols)
                degenerate = True
            if not best_reply_check(A1, A2, x, y):
                raise exceptions.VerificationException(f"({x}, {y}) is not an equilibrium")
            logger.debug("equilibrium ({}, {}) on supports {} and {}", x, y, rows, cols)
            found.append(Equilibrium((rows, cols), (x, y),
                                     x.is_completely_mixed and y.is_completely_mixed))
    return EquilibriumSet(tuple(found), degenerate)
