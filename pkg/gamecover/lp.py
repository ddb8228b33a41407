"""
Exact rational linear feasibility and optimization.

A two-phase tableau simplex over Fractions with Bland's least-index rule.
Infeasible systems come back with a Farkas certificate read off the final
phase-I duals; every outcome can be re-checked by `verify_certificate`
without touching solver internals.
"""
from __future__ import annotations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from loguru import logger

from . import exceptions
from .utils import format_rationals


class Sense(Enum):
    EQ = "="
    LE = "<="
    GE = ">="


@dataclass(frozen=True)
class LinearSystem:
    """
    Rows `matrix[i] . x (sense[i]) rhs[i]` over variables x, where x_j >= 0
    whenever nonneg[j].

    Attributes:
        matrix (Tuple[Tuple[Fraction, ...], ...]): r rows of c coefficients
        rhs (Tuple[Fraction, ...]): r right-hand sides
        nonneg (Tuple[bool, ...]): c sign flags, its length fixes c
        senses (Tuple[Sense, ...]): r row relations, all equalities if empty
    """

    matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    nonneg: Tuple[bool, ...]
    senses: Tuple[Sense, ...] = ()

    def __post_init__(self):
        matrix = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        rhs = tuple(Fraction(v) for v in self.rhs)
        nonneg = tuple(bool(flag) for flag in self.nonneg)
        senses = tuple(Sense(s) for s in self.senses) if self.senses else (Sense.EQ,) * len(matrix)
        if len(rhs) != len(matrix) or len(senses) != len(matrix):
            logger.error("system has {} rows, {} right-hand sides and {} senses",
                         len(matrix), len(rhs), len(senses))
            raise exceptions.DimensionMismatchException(
                f"system has {len(matrix)} rows, {len(rhs)} right-hand sides and {len(senses)} senses")
        if any(len(row) != len(nonneg) for row in matrix):
            logger.error("system rows do not all have {} coefficients", len(nonneg))
            raise exceptions.DimensionMismatchException(
                f"system rows do not all have {len(nonneg)} coefficients")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "nonneg", nonneg)
        object.__setattr__(self, "senses", senses)

    @staticmethod
    def build(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any],
              nonneg: Optional[Sequence[bool]] = None,
              senses: Optional[Sequence[Union[Sense, str]]] = None) -> LinearSystem:
        """
        Convenience constructor: variables default to non-negative.
        """
        if nonneg is None:
            if not matrix:
                raise exceptions.DimensionMismatchException(
                    "cannot infer the variable count of a system without rows")
            nonneg = [True] * len(matrix[0])
        return LinearSystem(
            tuple(tuple(row) for row in matrix),
            tuple(rhs),
            tuple(nonneg),
            tuple(Sense(s) for s in senses) if senses else (),
        )

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.nonneg)

    def to_json(self) -> Dict[str, Any]:
        return {
            'matrix': [format_rationals(row) for row in self.matrix],
            'rhs': format_rationals(self.rhs),
            'nonneg': list(self.nonneg),
            'senses': [s.value for s in self.senses],
        }


@dataclass(frozen=True)
class Feasible:
    """
    A point satisfying every row and sign constraint.

    Attributes:
        x (Tuple[Fraction, ...]): the point
        basis (Tuple[int, ...]): indices of the variables basic at the point
    """

    x: Tuple[Fraction, ...]
    basis: Tuple[int, ...]

    def to_json(self) -> Dict[str, Any]:
        return {'status': 'feasible', 'x': format_rationals(self.x), 'basis': list(self.basis)}


@dataclass(frozen=True)
class Infeasible:
    """
    A Farkas certificate y: yᵀM <= 0 on non-negative columns, yᵀM = 0 on
    free columns, y_i >= 0 on `>=` rows, y_i <= 0 on `<=` rows and
    yᵀrhs > 0.
    """

    certificate: Tuple[Fraction, ...]

    def to_json(self) -> Dict[str, Any]:
        return {'status': 'infeasible', 'certificate': format_rationals(self.certificate)}


@dataclass(frozen=True)
class Optimal:
    x: Tuple[Fraction, ...]
    value: Fraction
    basis: Tuple[int, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            'status': 'optimal',
            'x': format_rationals(self.x),
            'value': format_rationals([self.value])[0],
            'basis': list(self.basis),
        }


@dataclass(frozen=True)
class Unbounded:
    """
    The objective grows without bound along a feasible ray.

    Attributes:
        variable (int): the variable whose increase is unbounded
    """

    variable: int

    def to_json(self) -> Dict[str, Any]:
        return {'status': 'unbounded', 'variable': self.variable}


FeasibilityOutcome = Union[Feasible, Infeasible]
OptimizationOutcome = Union[Optimal, Unbounded, Infeasible]


class _Tableau:
    """
    Standard form `T z = b, z >= 0, b >= 0` of a LinearSystem.

    Column layout: structural columns (free variables split in two), then
    one slack per inequality row, then artificials. Artificials are only
    added for rows whose slack cannot start the basis: rows violated at the
    origin and equality rows.
    """

    def __init__(self, system: LinearSystem) -> None:
        self.system = system
        # (variable, sign) for every structural column
        self.origin: List[Tuple[int, int]] = []
        for j, flag in enumerate(system.nonneg):
            self.origin.append((j, 1))
            if not flag:
                self.origin.append((j, -1))
        self.structural = len(self.origin)

        rows = system.rows
        slack_of: Dict[int, int] = {}
        columns = self.structural
        for i, sense in enumerate(system.senses):
            if sense is not Sense.EQ:
                slack_of[i] = columns
                columns += 1
        self.slack_end = columns

        self.row_sign: List[int] = []
        needs_artificial: List[int] = []
        for i in range(rows):
            sense, rhs = system.senses[i], system.rhs[i]
            if sense is Sense.LE and rhs >= 0:
                self.row_sign.append(1)
            elif sense is Sense.GE and rhs <= 0:
                self.row_sign.append(-1)
            else:
                self.row_sign.append(-1 if rhs < 0 else 1)
                needs_artificial.append(i)
        self.artificial_of = {i: self.slack_end + k for k, i in enumerate(needs_artificial)}
        width = self.slack_end + len(needs_artificial)

        self.T: List[List[Fraction]] = []
        self.b: List[Fraction] = []
        self.basis: List[int] = []
        self.initial: List[int] = []
        for i in range(rows):
            sign = self.row_sign[i]
            row = [Fraction(0)] * width
            for c, (j, var_sign) in enumerate(self.origin):
                row[c] = sign * var_sign * system.matrix[i][j]
            if i in slack_of:
                slack_sign = 1 if system.senses[i] is Sense.LE else -1
                row[slack_of[i]] = Fraction(sign * slack_sign)
            if i in self.artificial_of:
                row[self.artificial_of[i]] = Fraction(1)
                start = self.artificial_of[i]
            else:
                start = slack_of[i]
            self.T.append(row)
            self.b.append(sign * system.rhs[i])
            self.basis.append(start)
            self.initial.append(start)
        self.width = width

    def is_artificial(self, column: int) -> bool:
        return column >= self.slack_end

    def reduced_costs(self, cost: Sequence[Fraction]) -> List[Fraction]:
        rc = list(cost)
        for k, basic in enumerate(self.basis):
            cb = cost[basic]
            if cb:
                row = self.T[k]
                for j in range(self.width):
                    if row[j]:
                        rc[j] -= cb * row[j]
        return rc

    def pivot(self, row: int, col: int) -> None:
        logger.trace("pivot row {} column {}", row, col)
        pivot_row = self.T[row]
        p = pivot_row[col]
        pivot_row[:] = [v / p for v in pivot_row]
        self.b[row] /= p
        for k in range(len(self.T)):
            if k == row:
                continue
            f = self.T[k][col]
            if f:
                self.T[k] = [a - f * c for a, c in zip(self.T[k], pivot_row)]
                self.b[k] -= f * self.b[row]
        self.basis[row] = col

    def run(self, cost: Sequence[Fraction]) -> Optional[int]:
        """
        Minimize cost·z with Bland's rule. Returns None at an optimum, or the
        entering column of an unbounded ray.
        """
        while True:
            rc = self.reduced_costs(cost)
            entering = next((j for j in range(self.width)
                             if not self.is_artificial(j) and rc[j] < 0), None)
            if entering is None:
                return None
            candidates = [(self.b[k] / self.T[k][entering], self.basis[k], k)
                          for k in range(len(self.T)) if self.T[k][entering] > 0]
            if not candidates:
                return entering
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[basic] * self.b[k] for k, basic in enumerate(self.basis)), Fraction(0))

    def duals(self, cost: Sequence[Fraction]) -> List[Fraction]:
        # columns that started as the identity now hold the basis inverse
        return [
            sum((cost[basic] * self.T[k][start] for k, basic in enumerate(self.basis)), Fraction(0))
            for start in self.initial
        ]

    def drop_artificials(self) -> None:
        """
        Pivot zero-level artificials out of the basis; rows where that is
        impossible are redundant and are removed.
        """
        k = 0
        while k < len(self.T):
            if not self.is_artificial(self.basis[k]):
                k += 1
                continue
            col = next((j for j in range(self.slack_end) if self.T[k][j] != 0), None)
            if col is None:
                logger.debug("dropping redundant row {}", k)
                del self.T[k]
                del self.b[k]
                del self.basis[k]
                del self.initial[k]
                continue
            self.pivot(k, col)
            k += 1

    def point(self) -> Tuple[Fraction, ...]:
        z = [Fraction(0)] * self.width
        for k, basic in enumerate(self.basis):
            z[basic] = self.b[k]
        x = [Fraction(0)] * self.system.cols
        for c, (j, sign) in enumerate(self.origin):
            x[j] += sign * z[c]
        return tuple(x)

    def basic_variables(self) -> Tuple[int, ...]:
        return tuple(sorted({self.origin[c][0] for c in self.basis if c < self.structural}))

    def phase_one(self) -> Optional[Infeasible]:
        cost = [Fraction(int(self.is_artificial(j))) for j in range(self.width)]
        self.run(cost)
        infeasibility = self.objective(cost)
        if infeasibility > 0:
            pi = self.duals(cost)
            certificate = tuple(sign * y for sign, y in zip(self.row_sign, pi))
            logger.debug("phase I ended at {}, system infeasible", infeasibility)
            return Infeasible(certificate)
        logger.debug("phase I found a feasible basis")
        return None


def solve_feasibility(system: LinearSystem) -> FeasibilityOutcome:
    """
    Decide feasibility of a LinearSystem.

    Exactly one of a feasible point or a Farkas certificate is returned, and
    the same input always yields the same output.
    """
    tableau = _Tableau(system)
    infeasible = tableau.phase_one()
    if infeasible is not None:
        return infeasible
    return Feasible(tableau.point(), tableau.basic_variables())


def maximize(objective: Sequence[Any], system: LinearSystem) -> OptimizationOutcome:
    """
    Maximize objective·x over a LinearSystem with a two-phase simplex.
    """
    objective = [Fraction(v) for v in objective]
    if len(objective) != system.cols:
        logger.error("objective has {} entries but the system has {} variables",
                     len(objective), system.cols)
        raise exceptions.DimensionMismatchException(
            f"objective has {len(objective)} entries but the system has {system.cols} variables")
    tableau = _Tableau(system)
    infeasible = tableau.phase_one()
    if infeasible is not None:
        return infeasible
    tableau.drop_artificials()
    cost = [Fraction(0)] * tableau.width
    for c, (j, sign) in enumerate(tableau.origin):
        cost[c] = -sign * objective[j]
    ray = tableau.run(cost)
    if ray is not None:
        variable = tableau.origin[ray][0] if ray < tableau.structural else -1
        logger.debug("objective unbounded along column {}", ray)
        return Unbounded(variable)
    x = tableau.point()
    value = sum((c * v for c, v in zip(objective, x)), Fraction(0))
    return Optimal(x, value, tableau.basic_variables())


def _row_holds(sense: Sense, lhs: Fraction, rhs: Fraction) -> bool:
    if sense is Sense.EQ:
        return lhs == rhs
    if sense is Sense.LE:
        return lhs <= rhs
    return lhs >= rhs


def verify_certificate(system: LinearSystem, outcome: Union[FeasibilityOutcome, Optimal]) -> bool:
    """
    Re-check an outcome by direct exact arithmetic.
    """
    if isinstance(outcome, (Feasible, Optimal)):
        x = outcome.x
        if len(x) != system.cols:
            return False
        if any(flag and v < 0 for flag, v in zip(system.nonneg, x)):
            return False
        return all(
            _row_holds(sense, sum((a * v for a, v in zip(row, x)), Fraction(0)), rhs)
            for row, rhs, sense in zip(system.matrix, system.rhs, system.senses)
        )
    if isinstance(outcome, Infeasible):
        y = outcome.certificate
        if len(y) != system.rows:
            return False
        for yi, sense in zip(y, system.senses):
            if (sense is Sense.GE and yi < 0) or (sense is Sense.LE and yi > 0):
                return False
        for j, flag in enumerate(system.nonneg):
            combined = sum((yi * row[j] for yi, row in zip(y, system.matrix)), Fraction(0))
            if combined > 0 or (not flag and combined != 0):
                return False
        return sum((yi * r for yi, r in zip(y, system.rhs)), Fraction(0)) > 0
    return False


def certificate_system(system: LinearSystem) -> LinearSystem:
    """
    The alternative system whose solutions are exactly the Farkas
    certificates of `system`, homogenized so that yᵀrhs >= 1.

    Variable i stands for y_i, or for -y_i on `<=` rows, so that sign
    restrictions become plain non-negativity.
    """
    signs = [-1 if s is Sense.LE else 1 for s in system.senses]
    nonneg = [s is not Sense.EQ for s in system.senses]
    matrix = []
    senses = []
    for j, flag in enumerate(system.nonneg):
        matrix.append([sign * row[j] for sign, row in zip(signs, system.matrix)])
        senses.append(Sense.LE if flag else Sense.EQ)
    matrix.append([sign * r for sign, r in zip(signs, system.rhs)])
    senses.append(Sense.GE)
    rhs = [Fraction(0)] * system.cols + [Fraction(1)]
    return LinearSystem(tuple(tuple(row) for row in matrix), tuple(rhs), tuple(nonneg), tuple(senses))
