from typing import Sequence


class InputException(ValueError):
    """
    Raised when a game file, flag or rational literal is malformed.
    """
    pass

class MalformedRationalException(InputException):
    """
    Raised when text is not an integer or a "p/q" fraction with q != 0.
    """
    pass

class DomainException(ValueError):
    """
    Raised when well-formed input violates a precondition of an operation.
    """
    pass

class DimensionMismatchException(DomainException):
    """
    Raised when matrix, vector or permutation sizes do not fit together.
    """

class NotSymmetricException(DomainException):
    """
    Raised when an operation needs a symmetric game and gets something else.
    """

class NonGenericException(DomainException):
    """
    Raised when some payoff column repeats an entry.

    Attributes:
        columns (List[int]): 1-based indices of the offending columns
    """

    def __init__(self, message: str, columns: Sequence[int]) -> None:
        super().__init__(message)
        self.columns = list(columns)

class OracleLimitException(DomainException):
    """
    Raised when a game is too large for support enumeration.
    """

class VerificationException(Exception):
    """
    Raised when a computed result fails its exact re-check.
    """
