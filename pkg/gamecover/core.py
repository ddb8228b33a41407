from __future__ import annotations
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union
from dataclasses import dataclass, field
from fractions import Fraction
import re

from loguru import logger

from . import exceptions
from .utils import format_matrix, format_rationals


Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: RationalLike) -> Fraction:
    """
    Parse an integer or a "p/q" literal into an exact, reduced Fraction.

    Integers and Fractions are passed through, so JSON numbers work too.
    Decimal and exponent notation are rejected.
    """
    if isinstance(text, bool):
        raise exceptions.MalformedRationalException(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise exceptions.MalformedRationalException(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        logger.error("malformed rational literal {!r}", text)
        raise exceptions.MalformedRationalException(f"malformed rational literal {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        logger.error("zero denominator in {!r}", text)
        raise exceptions.MalformedRationalException(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


@dataclass(frozen=True)
class GameMatrix:
    """
    The payoff matrix of one player: rows are the player's own pure
    strategies, columns the opponent's.

    Attributes:
        entries (Tuple[Tuple[Fraction, ...], ...]): n rows of m exact payoffs
        symmetric (bool): the matrix describes a symmetric game (requires n == m)
    """

    entries: Tuple[Tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(parse_rational(e) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise exceptions.DimensionMismatchException("a game matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise exceptions.InputException("game matrix rows have different lengths")
        if self.symmetric and len(rows) != width:
            raise exceptions.NotSymmetricException(
                f"a symmetric game needs a square matrix, got {len(rows)}x{width}")
        object.__setattr__(self, "entries", rows)

    @staticmethod
    def from_rows(rows: Iterable[Iterable[RationalLike]], symmetric: bool = False) -> GameMatrix:
        return GameMatrix(tuple(tuple(row) for row in rows), symmetric)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n, self.m

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> GameMatrix:
        return GameMatrix(tuple(zip(*self.entries)), self.symmetric)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> GameMatrix:
        """
        Restriction to the given own strategies (rows) and opponent strategies
        (cols); the symmetric flag survives only when both index lists agree.
        """
        return GameMatrix(
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            self.symmetric and list(rows) == list(cols),
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            'A': format_matrix(self.entries),
            'symmetric': self.symmetric,
        }

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"GameMatrix {self.n}x{self.m} [{body}]"

    def __repr__(self) -> str:
        return str(self)


@dataclass(frozen=True)
class MixedStrategy:
    """
    A probability vector over pure strategies.

    Attributes:
        weights (Tuple[Fraction, ...]): non-negative weights summing to exactly 1
    """

    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(parse_rational(w) for w in self.weights)
        if not weights:
            raise exceptions.DimensionMismatchException("a mixed strategy needs at least one weight")
        if any(w < 0 for w in weights):
            logger.error("negative weight in mixed strategy {}", weights)
            raise exceptions.DomainException(f"negative weight in mixed strategy {format_rationals(weights)}")
        if sum(weights) != 1:
            logger.error("mixed strategy weights sum to {}, not 1", sum(weights))
            raise exceptions.DomainException(f"mixed strategy weights sum to {sum(weights)}, not 1")
        object.__setattr__(self, "weights", weights)

    @staticmethod
    def pure(size: int, index: int) -> MixedStrategy:
        return MixedStrategy(tuple(Fraction(int(i == index)) for i in range(size)))

    @staticmethod
    def uniform(size: int) -> MixedStrategy:
        return MixedStrategy((Fraction(1, size),) * size)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    @property
    def is_completely_mixed(self) -> bool:
        return all(w > 0 for w in self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, index: int) -> Fraction:
        return self.weights[index]

    def __iter__(self):
        return iter(self.weights)

    def to_json(self) -> List[str]:
        return format_rationals(self.weights)

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"

    def __repr__(self) -> str:
        return f"MixedStrategy{self}"


@dataclass(frozen=True)
class Permutation:
    """
    A relabeling of k strategies. `images[i]` is the new (0-based) label of
    old strategy i, so a 1-based cycle such as 3 -> 1 -> 2 -> 3 is
    `Permutation.from_mapping({3: 1, 1: 2, 2: 3})`.

    Permutations order lexicographically by their image tuples.
    """

    images: Tuple[int, ...]
    _inverse: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            logger.error("not a permutation of 0..{}: {}", len(images) - 1, images)
            raise exceptions.DomainException(f"not a permutation: {images}")
        inverse = [0] * len(images)
        for source, target in enumerate(images):
            inverse[target] = source
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_inverse", tuple(inverse))

    @staticmethod
    def identity(size: int) -> Permutation:
        return Permutation(tuple(range(size)))

    @staticmethod
    def from_mapping(mapping: Dict[int, int]) -> Permutation:
        """
        Build from a 1-based mapping; unmentioned labels are fixed points.
        """
        size = max(list(mapping.keys()) + list(mapping.values()))
        images = [mapping.get(i + 1, i + 1) - 1 for i in range(size)]
        return Permutation(tuple(images))

    @staticmethod
    def swap(size: int, first: int, second: int) -> Permutation:
        """
        The transposition of two 1-based labels.
        """
        images = list(range(size))
        images[first - 1], images[second - 1] = images[second - 1], images[first - 1]
        return Permutation(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, index: int) -> int:
        return self.images[index]

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def compose(self, other: Permutation) -> Permutation:
        """
        self after other: i -> self(other(i)).
        """
        if len(self) != len(other):
            raise exceptions.DimensionMismatchException(
                f"cannot compose permutations of sizes {len(self)} and {len(other)}")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        return Permutation(self._inverse)

    def apply(self, values: Sequence[Any]) -> Tuple[Any, ...]:
        """
        Move the value at old position i to position self(i).
        """
        if len(values) != len(self):
            raise exceptions.DimensionMismatchException(
                f"permutation of size {len(self)} applied to {len(values)} values")
        return tuple(values[j] for j in self._inverse)

    def to_json(self) -> List[int]:
        return [i + 1 for i in self.images]

    def __str__(self) -> str:
        return "(" + " ".join(str(i + 1) for i in self.images) + ")"


def mat_vec(A: GameMatrix, x: Union[MixedStrategy, Sequence[Fraction]]) -> List[Fraction]:
    """
    Exact product A x. Entry j is the expected payoff of own pure strategy j
    against the opponent mix x.
    """
    weights = list(x)
    if len(weights) != A.m:
        logger.error("matrix has {} columns but the vector has {} entries", A.m, len(weights))
        raise exceptions.DimensionMismatchException(
            f"matrix has {A.m} columns but the vector has {len(weights)} entries")
    return [sum((a * w for a, w in zip(row, weights)), Fraction(0)) for row in A.entries]


def expected_payoff(A: GameMatrix, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """
    xᵀ A y for own mix x and opponent mix y.
    """
    return sum((w * p for w, p in zip(x, mat_vec(A, y))), Fraction(0))


def relabel(A: GameMatrix, sigma: Permutation) -> GameMatrix:
    """
    Rename the strategies of a symmetric game: old strategy i becomes
    sigma(i) for rows and columns alike.
    """
    if not A.symmetric:
        logger.error("relabel needs a symmetric game, got {}", A)
        raise exceptions.NotSymmetricException("relabel needs a symmetric game")
    if len(sigma) != A.n:
        logger.error("permutation of size {} does not fit a {}x{} game", len(sigma), A.n, A.m)
        raise exceptions.DimensionMismatchException(
            f"permutation of size {len(sigma)} does not fit a {A.n}x{A.m} game")
    back = sigma.inverse()
    return GameMatrix(
        tuple(tuple(A.entries[back(i)][back(j)] for j in range(A.n)) for i in range(A.n)),
        symmetric=True,
    )
