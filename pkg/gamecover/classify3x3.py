"""
Classification of generic symmetric 3x3 games whose unique symmetric
equilibrium is completely mixed.

After a per-column affine normalization every column holds one 0 and one 1,
and a game of interest is, up to relabeling, one of six parameter patterns
(below, `a1`, `a2`, `a3` are the parameters; parameter k sits in column k):

    A1  [[0, 1, a3], [a1, 0, 1], [1, a2, 0]]
    A2  [[0, 1, 1], [a1, 0, a3], [1, a2, 0]]    a1 + a3 > 1
    A3  [[a1, 1, 0], [0, a2, 1], [1, 0, a3]]
    A4  [[0, 1, 1], [1, 0, 0], [a1, a2, a3]]    a3 < 1 - a1 < a2
    A5  [[0, a2, 1], [1, 0, 0], [a1, 1, a3]]    a1 + a3 < 1
    A6  [[0, 1, 0], [a1, a2, 1], [1, 0, a3]]    a1 + a2 < 1
"""
from __future__ import annotations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import itertools

from loguru import logger

from . import config, exceptions
from .core import GameMatrix, MixedStrategy, Permutation, relabel
from .oracle import strictly_dominated
from .utils import format_matrix, format_rational, format_rationals, grid


class ClassId(Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"


class RejectionReason(Enum):
    NON_GENERIC = "NonGeneric"
    PURE_SYMMETRIC_EQUILIBRIUM = "PureSymmetricEquilibrium"
    DOMINATED_STRATEGY = "DominatedStrategy"
    CONDITION_VIOLATED = "ConditionViolated"
    NO_MATCHING_PATTERN = "NoMatchingPattern"


# a cell is a literal payoff or the 0-based index of a parameter
_Cell = Union[Fraction, int]
_ZERO, _ONE = Fraction(0), Fraction(1)

_PATTERNS: Dict[ClassId, Tuple[Tuple[_Cell, ...], ...]] = {
    ClassId.A1: ((_ZERO, _ONE, 2), (0, _ZERO, _ONE), (_ONE, 1, _ZERO)),
    ClassId.A2: ((_ZERO, _ONE, _ONE), (0, _ZERO, 2), (_ONE, 1, _ZERO)),
    ClassId.A3: ((0, _ONE, _ZERO), (_ZERO, 1, _ONE), (_ONE, _ZERO, 2)),
    ClassId.A4: ((_ZERO, _ONE, _ONE), (_ONE, _ZERO, _ZERO), (0, 1, 2)),
    ClassId.A5: ((_ZERO, 1, _ONE), (_ONE, _ZERO, _ZERO), (0, _ONE, 2)),
    ClassId.A6: ((_ZERO, _ONE, _ZERO), (0, 1, _ONE), (_ONE, _ZERO, 2)),
}

Params = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ColumnTransform:
    """
    The map e -> (e - shift) / scale applied to one payoff column.
    """

    shift: Fraction
    scale: Fraction

    def __post_init__(self):
        if self.scale <= 0:
            raise exceptions.DomainException(f"column scale must be positive, got {self.scale}")

    def apply(self, value: Fraction) -> Fraction:
        return (value - self.shift) / self.scale

    def to_json(self) -> Dict[str, Any]:
        return {'shift': format_rational(self.shift), 'scale': format_rational(self.scale)}


@dataclass(frozen=True)
class NormalizedMatrix:
    """
    A payoff matrix whose columns each have minimum 0 and maximum 1, with the
    transforms that produced it from the original columns.
    """

    matrix: GameMatrix
    transforms: Tuple[ColumnTransform, ...]

    @property
    def entries(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self.matrix.entries

    def to_json(self) -> Dict[str, Any]:
        return {
            'N': format_matrix(self.matrix.entries),
            'transforms': [t.to_json() for t in self.transforms],
        }


@dataclass(frozen=True)
class Classified:
    """
    relabel(normalized matrix, sigma) equals the class pattern at params.
    """

    class_id: ClassId
    sigma: Permutation
    params: Params

    def to_json(self) -> Dict[str, Any]:
        return {
            'status': 'classified',
            'class': self.class_id.value,
            'sigma': self.sigma.to_json(),
            'params': format_rationals(self.params),
        }


@dataclass(frozen=True)
class Rejected:
    """
    Why a game is not one of the six classes.

    Attributes:
        reason (RejectionReason): the screen that rejected the game
        candidates (Tuple[ClassId, ...]): classes whose pattern matched but whose condition failed
        columns (Tuple[int, ...]): 0-based non-generic columns
        strategy (Optional[int]): the pure equilibrium strategy or the dominated one
        dominator (Optional[MixedStrategy]): mixture dominating `strategy`
    """

    reason: RejectionReason
    candidates: Tuple[ClassId, ...] = ()
    columns: Tuple[int, ...] = ()
    strategy: Optional[int] = None
    dominator: Optional[MixedStrategy] = None

    def to_json(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {'status': 'rejected', 'reason': self.reason.value}
        if self.candidates:
            result['candidates'] = [c.value for c in self.candidates]
        if self.columns:
            result['columns'] = [j + 1 for j in self.columns]
        if self.strategy is not None:
            result['strategy'] = self.strategy + 1
        if self.dominator is not None:
            result['dominator'] = self.dominator.to_json()
        return result


@dataclass(frozen=True)
class ClassificationReport:
    outcome: Union[Classified, Rejected]
    normalized: Optional[NormalizedMatrix] = None

    @property
    def class_id(self) -> Optional[ClassId]:
        if isinstance(self.outcome, Classified):
            return self.outcome.class_id
        return None

    @property
    def reason(self) -> Optional[RejectionReason]:
        if isinstance(self.outcome, Rejected):
            return self.outcome.reason
        return None

    def to_json(self) -> Dict[str, Any]:
        return {
            'outcome': self.outcome.to_json(),
            'normalized': None if self.normalized is None else self.normalized.to_json(),
        }


@dataclass(frozen=True)
class AdjacencyEdge:
    """
    Two classes whose closures meet.

    Attributes:
        pair (Tuple[ClassId, ClassId]): the classes, lower index first
        witness (GameMatrix): a matrix in both closures
        contact (int): generic columns of the witness (2 face, 1 edge, 0 vertex)
    """

    pair: Tuple[ClassId, ClassId]
    witness: GameMatrix
    contact: int

    def to_json(self) -> Dict[str, Any]:
        return {
            'pair': [c.value for c in self.pair],
            'witness': format_matrix(self.witness.entries),
            'contact': self.contact,
        }


@dataclass(frozen=True)
class AdjacencyGraph:
    edges: Tuple[AdjacencyEdge, ...]
    resolution: Fraction

    @property
    def pairs(self) -> List[Tuple[str, str]]:
        return [(e.pair[0].value, e.pair[1].value) for e in self.edges]

    def edge(self, first: ClassId, second: ClassId) -> Optional[AdjacencyEdge]:
        wanted = {first, second}
        return next((e for e in self.edges if set(e.pair) == wanted), None)

    def to_json(self) -> Dict[str, Any]:
        return {
            'resolution': format_rational(self.resolution),
            'edges': [e.to_json() for e in self.edges],
        }


def _check_shape(A: GameMatrix) -> None:
    if A.shape != (3, 3):
        logger.error("expected a 3x3 game, got {}x{}", A.n, A.m)
        raise exceptions.DimensionMismatchException(f"expected a 3x3 game, got {A.n}x{A.m}")
    if not A.symmetric:
        logger.error("expected a symmetric game, got {}", A)
        raise exceptions.NotSymmetricException("expected a symmetric game")


def _non_generic_columns(A: GameMatrix) -> Tuple[int, ...]:
    return tuple(j for j in range(A.m) if len(set(A.column(j))) != A.n)


def check_generic(A: GameMatrix) -> bool:
    _check_shape(A)
    return not _non_generic_columns(A)


def normalize(A: GameMatrix) -> NormalizedMatrix:
    """
    Map every column affinely onto [0, 1]: e -> (e - min) / (max - min).
    """
    flat = tuple(j for j in range(A.m) if min(A.column(j)) == max(A.column(j)))
    if flat:
        logger.error("columns {} are constant", [j + 1 for j in flat])
        raise exceptions.NonGenericException(
            f"columns {[j + 1 for j in flat]} are constant", [j + 1 for j in flat])
    transforms = tuple(
        ColumnTransform(min(A.column(j)), max(A.column(j)) - min(A.column(j)))
        for j in range(A.m)
    )
    entries = tuple(
        tuple(transforms[j].apply(row[j]) for j in range(A.m))
        for row in A.entries
    )
    return NormalizedMatrix(GameMatrix(entries, A.symmetric), transforms)


def class_pattern(class_id: ClassId, params: Sequence[Fraction]) -> GameMatrix:
    """
    The canonical symmetric matrix of a class at the given parameters.
    """
    if len(params) != 3:
        raise exceptions.DimensionMismatchException(f"expected three parameters, got {len(params)}")
    values = [Fraction(p) for p in params]
    return GameMatrix(
        tuple(
            tuple(values[cell] if isinstance(cell, int) else cell for cell in row)
            for row in _PATTERNS[class_id]
        ),
        symmetric=True,
    )


def _condition_holds(class_id: ClassId, params: Params, strict: bool) -> bool:
    a1, a2, a3 = params

    def less(left: Fraction, right: Fraction) -> bool:
        return left < right if strict else left <= right

    if class_id == ClassId.A2:
        return less(1, a1 + a3)
    if class_id == ClassId.A4:
        return less(a3, 1 - a1) and less(1 - a1, a2)
    if class_id == ClassId.A5:
        return less(a1 + a3, 1)
    if class_id == ClassId.A6:
        return less(a1 + a2, 1)
    return True


def _match(N: GameMatrix, class_id: ClassId, sigma: Permutation, closed: bool) -> Optional[Params]:
    # structural match only: literal cells equal, parameter cells in range
    B = relabel(N, sigma)
    params: List[Fraction] = [_ZERO] * 3
    for row, pattern_row in zip(B.entries, _PATTERNS[class_id]):
        for value, cell in zip(row, pattern_row):
            if not isinstance(cell, int):
                if value != cell:
                    return None
                continue
            inside = 0 <= value <= 1 if closed else 0 < value < 1
            if not inside:
                return None
            params[cell] = value
    return params[0], params[1], params[2]


def _permutations() -> List[Permutation]:
    return [Permutation(images) for images in itertools.permutations(range(3))]


def in_class(N: GameMatrix, class_id: ClassId, closed: bool = False) -> Optional[Tuple[Permutation, Params]]:
    """
    Membership of a normalized matrix in a class, or in its closure when
    `closed` is set (parameters in [0, 1], non-strict condition). Returns
    the lexicographically smallest fitting permutation with its parameters.
    """
    _check_shape(N)
    for sigma in _permutations():
        params = _match(N, class_id, sigma, closed)
        if params is not None and _condition_holds(class_id, params, strict=not closed):
            return sigma, params
    return None


def classify(A: GameMatrix, allow_non_generic: bool = False) -> ClassificationReport:
    """
    Screen a symmetric 3x3 game in order: genericity, pure symmetric
    equilibrium on the diagonal, pattern search over all classes and
    relabelings, dominance by a mixture. Classified results are canonical:
    lowest class first, then the lexicographically smallest permutation.
    """
    _check_shape(A)
    columns = _non_generic_columns(A)
    if columns:
        if allow_non_generic:
            return ClassificationReport(Rejected(RejectionReason.NON_GENERIC, columns=columns))
        logger.error("columns {} repeat an entry", [j + 1 for j in columns])
        raise exceptions.NonGenericException(
            f"columns {[j + 1 for j in columns]} repeat an entry", [j + 1 for j in columns])
    normalized = normalize(A)
    N = normalized.matrix
    for i in range(3):
        if N.entries[i][i] == 1:
            logger.debug("strategy {} is a symmetric pure equilibrium", i + 1)
            return ClassificationReport(
                Rejected(RejectionReason.PURE_SYMMETRIC_EQUILIBRIUM, strategy=i), normalized)
    candidates: List[ClassId] = []
    for class_id in ClassId:
        for sigma in _permutations():
            params = _match(N, class_id, sigma, closed=False)
            if params is None:
                continue
            if _condition_holds(class_id, params, strict=True):
                logger.debug("classified as {} under {} with {}", class_id.value, sigma, params)
                return ClassificationReport(Classified(class_id, sigma, params), normalized)
            if class_id not in candidates:
                candidates.append(class_id)
    if candidates:
        return ClassificationReport(
            Rejected(RejectionReason.CONDITION_VIOLATED, candidates=tuple(candidates)), normalized)
    for i in range(3):
        dominance = strictly_dominated(N, i)
        if dominance is not None:
            return ClassificationReport(
                Rejected(RejectionReason.DOMINATED_STRATEGY, strategy=i, dominator=dominance.dominator),
                normalized)
    return ClassificationReport(Rejected(RejectionReason.NO_MATCHING_PATTERN), normalized)


def _generic_column_count(A: GameMatrix) -> int:
    return A.m - len(_non_generic_columns(A))


def _on_boundary(params: Params) -> bool:
    return any(p == 0 or p == 1 for p in params)


def adjacency(resolution: Optional[Fraction] = None) -> AdjacencyGraph:
    """
    Grid-search the pattern boundaries for matrices lying in the closures of
    two classes at once.

    Interior patterns are generic and belong to one class only, so only
    parameter triples with some entry equal to 0 or 1 are tried. For each
    pair the witness with the most generic columns is kept.
    """
    if resolution is None:
        resolution = config.get_adjacency_resolution()
    points = grid(Fraction(resolution))
    triples = [t for t in itertools.product(points, repeat=3) if _on_boundary(t)]
    edges: List[AdjacencyEdge] = []
    for first, second in itertools.combinations(list(ClassId), 2):
        best: Optional[AdjacencyEdge] = None
        for params in triples:
            if not _condition_holds(first, params, strict=False):
                continue
            candidate = class_pattern(first, params)
            if in_class(candidate, second, closed=True) is None:
                continue
            contact = _generic_column_count(candidate)
            if best is None or contact > best.contact:
                best = AdjacencyEdge((first, second), candidate, contact)
            # a shared matrix always has a non-generic column
            if contact == 2:
                break
        if best is not None:
            logger.debug("{} and {} meet at {}", first.value, second.value, best.witness)
            edges.append(best)
    return AdjacencyGraph(tuple(edges), Fraction(resolution))
