from fractions import Fraction

import pytest

from gamecover import config
from gamecover.utils import format_decimal, format_matrix, format_rational, grid, odometer


@pytest.mark.parametrize(
    "value,expected",
    [(Fraction(3), "3/1"), (Fraction(-6, 8), "-3/4"), (0, "0/1")],
    ids=["integer", "reduced", "zero"],
)
def test_format_rational(value, expected):
    assert format_rational(value) == expected


def test_format_matrix():
    assert format_matrix([[Fraction(1, 2), 1], [0, -2]]) == [["1/2", "1/1"], ["0/1", "-2/1"]]


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(1, 2), "0.5"),
        (Fraction(175), "175"),
        (Fraction(10), "10"),
        (Fraction(0), "0"),
        (Fraction(-1, 4), "-0.25"),
        (Fraction(1, 20), "0.05"),
        (Fraction(1, 3), "0.333333"),
        (Fraction(2, 3), "0.666667"),
        (Fraction(-1, 3), "-0.333333"),
        (Fraction(-1, 10 ** 9 * 3), "0"),
    ],
    ids=["half", "integer", "ten", "zero", "negative", "twentieth", "third", "two_thirds",
         "negative_third", "rounds_to_zero"],
)
def test_format_decimal(value, expected):
    assert format_decimal(value) == expected


def test_format_decimal_places(mocker):
    assert format_decimal(Fraction(1, 3), places=2) == "0.33"
    mocker.patch.object(config, "decimal_places", 3)
    assert format_decimal(Fraction(2, 3)) == "0.667"


def test_grid():
    assert grid(Fraction(1, 4)) == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
    assert grid(Fraction(2, 5)) == [0, Fraction(2, 5), Fraction(4, 5), 1]
    assert grid(Fraction(1)) == [0, 1]


@pytest.mark.parametrize("resolution", [Fraction(0), Fraction(-1, 2), Fraction(3, 2)])
def test_grid_rejects(resolution):
    with pytest.raises(ValueError, match="grid resolution"):
        grid(resolution)


def test_odometer():
    assert list(odometer([0, 1], 2)) == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert sum(1 for _ in odometer([0, 1, 2], 4)) == 81
