from fractions import Fraction
from typing import Iterator, List, Sequence

from . import config


def format_rational(value: Fraction) -> str:
    """
    Render a rational as "p/q" in lowest terms, integers included ("3/1").
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_rationals(values: Sequence[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def format_matrix(rows: Sequence[Sequence[Fraction]]) -> List[List[str]]:
    return [format_rationals(row) for row in rows]


def _terminating_places(denominator: int) -> int:
    # number of decimal places needed, or -1 if the expansion does not end
    places = 0
    while denominator % 10 == 0:
        denominator //= 10
        places += 1
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return -1
    return places + max(twos, fives)


def format_decimal(value: Fraction, places: int = -1) -> str:
    """
    Render a rational in fixed decimal notation.

    Terminating expansions are printed exactly; anything else is rounded
    half-to-even at `places` digits (config decimal_places by default).
    Trailing zeros and a bare trailing point are dropped.
    """
    value = Fraction(value)
    if places < 0:
        places = config.get_decimal_places()
    exact = _terminating_places(value.denominator)
    if exact >= 0:
        places = exact
    scaled = round(value * 10 ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    whole, frac = digits[:-places], digits[-places:].rstrip("0")
    if not frac:
        return sign + whole
    return f"{sign}{whole}.{frac}"


def grid(resolution: Fraction) -> List[Fraction]:
    """
    Points 0, resolution, 2*resolution, ... up to and including 1.
    """
    resolution = Fraction(resolution)
    if resolution <= 0 or resolution > 1:
        raise ValueError(f"grid resolution must lie in (0, 1], got {resolution}")
    steps = int(1 / resolution)
    points = [resolution * k for k in range(steps + 1)]
    if points[-1] != 1:
        points.append(Fraction(1))
    return points


def odometer(alphabet: Sequence[int], length: int) -> Iterator[List[int]]:
    """
    All words of the given length over the alphabet, last position fastest.
    """
    word = [0] * length
    while True:
        yield [alphabet[i] for i in word]
        position = length - 1
        while position >= 0 and word[position] == len(alphabet) - 1:
            word[position] = 0
            position -= 1
        if position < 0:
            return
        word[position] += 1
