from fractions import Fraction

import pytest

from gamecover import exceptions, sampler
from gamecover.classify3x3 import ClassificationReport, Rejected, RejectionReason
from gamecover.sampler import SamplerConfig, game_stream, run_sample


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=1, count=5),
        dict(n=3, count=0),
        dict(n=3, count=5, denominator=0),
        dict(n=2, count=5, cols=0),
    ],
    ids=["rows", "count", "denominator", "cols"],
)
def test_config_validation(kwargs):
    with pytest.raises(exceptions.InputException):
        SamplerConfig(**kwargs)


def test_config_to_json():
    actual = SamplerConfig(n=2, count=5, cols=3).to_json()
    assert actual == {'n': 2, 'cols': 3, 'count': 5, 'seed': 0, 'denominator': 4, 'exhaustive': False}


class TestGameStream:
    def test_random_games_are_reproducible(self):
        sampler_config = SamplerConfig(n=3, count=5, seed=11)
        first = list(game_stream(sampler_config))
        assert first == list(game_stream(sampler_config))
        assert first != list(game_stream(SamplerConfig(n=3, count=5, seed=12)))

    def test_random_entries_respect_the_bound(self):
        for A in game_stream(SamplerConfig(n=2, count=20, cols=3, denominator=3)):
            assert A.shape == (2, 3)
            assert not A.symmetric
            for row in A.entries:
                for value in row:
                    assert abs(value) <= 3
                    assert 1 <= value.denominator <= 3

    def test_square_games_are_symmetric(self):
        assert all(A.symmetric for A in game_stream(SamplerConfig(n=3, count=3)))

    def test_exhaustive_order(self):
        games = list(game_stream(SamplerConfig(n=2, count=81, exhaustive=True)))
        assert len(games) == 81
        assert len(set(games)) == 81
        assert games[0].entries == ((0, 0), (0, 0))
        assert games[1].entries == ((0, 0), (0, 1))
        assert games[-1].entries == ((2, 2), (2, 2))

    def test_exhaustive_count_truncates(self):
        assert len(list(game_stream(SamplerConfig(n=2, count=10, exhaustive=True)))) == 10


def test_exhaustive_2x2_sample():
    summary = run_sample(SamplerConfig(n=2, count=81, exhaustive=True))
    assert summary.games == 81
    assert summary.not_possible == 18
    assert summary.indifferent == 63
    assert summary.mismatches == []
    assert summary.outcomes == {}


def test_random_3x3_sample():
    summary = run_sample(SamplerConfig(n=3, count=30, seed=7))
    assert summary.games == 30
    assert summary.mismatches == []
    checked = sum(summary.outcomes.values())
    assert checked + summary.skipped_non_generic + summary.skipped_degenerate == 30


def test_sample_is_deterministic():
    sampler_config = SamplerConfig(n=3, count=8, seed=3)
    assert run_sample(sampler_config).to_json() == run_sample(sampler_config).to_json()


def test_summary_to_json():
    actual = run_sample(SamplerConfig(n=2, count=4, cols=3, denominator=2)).to_json()
    assert set(actual.keys()) == {
        'games', 'indifferent', 'not_possible', 'outcomes', 'skipped', 'no_matching_pattern',
        'mismatch_count', 'mismatches',
    }
    assert actual['skipped'] == {'non_generic': 0, 'degenerate': 0}
    assert actual['no_matching_pattern'] == 0
    assert actual['mismatch_count'] == 0
    assert actual['games'] == 4
    assert Fraction(actual['indifferent'] + actual['not_possible']) == 4


def test_no_matching_pattern_is_counted(mocker):
    rejected = ClassificationReport(Rejected(RejectionReason.NO_MATCHING_PATTERN))
    mocker.patch.object(sampler, "classify", return_value=rejected)
    summary = run_sample(SamplerConfig(n=3, count=12, seed=5))
    assert summary.no_matching_pattern + summary.skipped_degenerate == 12
    assert summary.no_matching_pattern > 0
    assert summary.outcomes == {'NoMatchingPattern': summary.no_matching_pattern}
    assert summary.to_json()['mismatch_count'] == len(summary.mismatches)
