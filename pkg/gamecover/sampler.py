"""
Seeded and exhaustive streams of small games, and the cross-checks run over
them by the `sample` command.
"""
from __future__ import annotations
from typing import Any, Dict, Iterator, List, Optional
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import random

from loguru import logger

from . import config, exceptions
from .classify3x3 import RejectionReason, classify
from .core import GameMatrix
from .indifference import Indifferent, augment, difference_matrix, half_space_cover, solve_indifference
from .lp import solve_feasibility, verify_certificate
from .oracle import symmetric_equilibria
from .utils import format_matrix, odometer


@dataclass(frozen=True)
class SamplerConfig:
    """
    Attributes:
        n (int): strategies of the row player
        count (int): number of games; in exhaustive mode an upper bound
        seed (int): master seed, each game gets its own 64-bit sub-seed from it
        denominator (int): entries are p/q with |p| <= denominator and 1 <= q <= denominator
        cols (Optional[int]): opponent strategies, n when omitted
        exhaustive (bool): enumerate all games with entries from the exhaustive alphabet instead
    """

    n: int
    count: int = config.sampler_default_count
    seed: int = config.sampler_default_seed
    denominator: int = config.sampler_default_denominator
    cols: Optional[int] = None
    exhaustive: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise exceptions.InputException(f"sampled games need at least two rows, got {self.n}")
        if self.count < 1:
            raise exceptions.InputException(f"count must be at least 1, got {self.count}")
        if self.denominator < 1:
            raise exceptions.InputException(f"denominator bound must be at least 1, got {self.denominator}")
        if self.cols is not None and self.cols < 1:
            raise exceptions.InputException(f"cols must be at least 1, got {self.cols}")

    @property
    def m(self) -> int:
        return self.n if self.cols is None else self.cols

    def to_json(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'cols': self.m,
            'count': self.count,
            'seed': self.seed,
            'denominator': self.denominator,
            'exhaustive': self.exhaustive,
        }


@dataclass(frozen=True)
class Mismatch:
    index: int
    check: str
    game: GameMatrix

    def to_json(self) -> Dict[str, Any]:
        return {'index': self.index, 'check': self.check, 'A': format_matrix(self.game.entries)}


@dataclass
class SampleSummary:
    games: int = 0
    indifferent: int = 0
    not_possible: int = 0
    outcomes: Dict[str, int] = field(default_factory=dict)
    skipped_non_generic: int = 0
    skipped_degenerate: int = 0
    no_matching_pattern: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            'games': self.games,
            'indifferent': self.indifferent,
            'not_possible': self.not_possible,
            'outcomes': dict(sorted(self.outcomes.items())),
            'skipped': {'non_generic': self.skipped_non_generic, 'degenerate': self.skipped_degenerate},
            'no_matching_pattern': self.no_matching_pattern,
            'mismatch_count': len(self.mismatches),
            'mismatches': [m.to_json() for m in self.mismatches],
        }


def _random_game(rng: random.Random, n: int, m: int, bound: int) -> GameMatrix:
    return GameMatrix(
        tuple(
            tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(m))
            for _ in range(n)
        ),
        symmetric=n == m,
    )


def game_stream(sampler_config: SamplerConfig) -> Iterator[GameMatrix]:
    """
    Games in a reproducible order. Square games carry the symmetric flag.
    """
    n, m = sampler_config.n, sampler_config.m
    if sampler_config.exhaustive:
        words = odometer(config.get_exhaustive_entries(), n * m)
        for word in itertools.islice(words, sampler_config.count):
            yield GameMatrix(tuple(tuple(word[i * m:(i + 1) * m]) for i in range(n)), symmetric=n == m)
        return
    master = random.Random(sampler_config.seed)
    for _ in range(sampler_config.count):
        rng = random.Random(master.getrandbits(64))
        yield _random_game(rng, n, m, sampler_config.denominator)


def _count(outcomes: Dict[str, int], key: str) -> None:
    outcomes[key] = outcomes.get(key, 0) + 1


def _cross_check_classifier(index: int, A: GameMatrix, summary: SampleSummary) -> None:
    report = classify(A, allow_non_generic=True)
    if report.reason == RejectionReason.NON_GENERIC:
        summary.skipped_non_generic += 1
        return
    equilibria = symmetric_equilibria(A)
    if equilibria.degenerate:
        summary.skipped_degenerate += 1
        return
    _count(summary.outcomes, report.class_id.value if report.class_id else report.reason.value)
    if report.reason == RejectionReason.NO_MATCHING_PATTERN:
        summary.no_matching_pattern += 1
    if (report.class_id is not None) != equilibria.unique_completely_mixed:
        logger.warning("game {}: classifier says {} but the oracle found {} equilibria",
                       index, report.outcome, len(equilibria))
        summary.mismatches.append(Mismatch(index, "classifier", A))


def run_sample(sampler_config: SamplerConfig) -> SampleSummary:
    """
    For every game: the cover test must agree with indifference feasibility
    and the solver's Farkas arm must pass its exact re-check. Symmetric 3x3
    games are also classified and compared against support enumeration;
    non-generic and degenerate games are skipped for that comparison.
    """
    summary = SampleSummary()
    for index, A in enumerate(game_stream(sampler_config)):
        summary.games += 1
        D = difference_matrix(A)
        indifference = solve_indifference(A)
        covered = half_space_cover(D).covered
        if isinstance(indifference, Indifferent):
            summary.indifferent += 1
        else:
            summary.not_possible += 1
        if covered != isinstance(indifference, Indifferent):
            logger.warning("game {}: cover says {} but indifference says {}", index, covered, indifference)
            summary.mismatches.append(Mismatch(index, "cover", A))
        system = augment(D).to_linear_system()
        if not verify_certificate(system, solve_feasibility(system)):
            summary.mismatches.append(Mismatch(index, "certificate", A))
        if A.shape == (3, 3) and A.symmetric:
            _cross_check_classifier(index, A, summary)
    logger.info("sampled {} games, {} mismatches", summary.games, len(summary.mismatches))
    return summary
