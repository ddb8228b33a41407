import json
from pathlib import Path

import pytest

from gamecover import cli, config
from gamecover.cli import GameFile, main
from gamecover.core import GameMatrix
from gamecover.indifference import difference_matrix
from gamecover.sampler import Mismatch, SampleSummary
from gamecover.svg import half_space_diagram

RPS = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def game_file(tmp_path):
    def write(document, name="game.json"):
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


class TestAnalyze:
    def test_coordination(self, capsys, game_file):
        code, report = run(capsys, "analyze", game_file({"A": [[2, 0], [0, 1]]}))
        assert code == 0
        assert report['version'] == "1.0"
        assert report['command'] == "analyze"
        player = report['result']['players']['1']
        assert player['indifference'] == {'status': 'indifferent', 'x': ["1/3", "2/3"], 'c': "2/3"}
        assert player['cover'] == {'covered': True, 'witness': None}
        assert player['two_by_two_type'] == "COORDINATION"
        assert set(report['result'].keys()) == {'players'}

    def test_dominance(self, capsys, game_file):
        code, report = run(capsys, "analyze", game_file({"A": [[1, 1], [0, 0]]}))
        assert code == 0
        player = report['result']['players']['1']
        assert player['indifference'] == {'status': 'not_possible', 'w': ["1/1"]}
        assert player['cover'] == {'covered': False, 'witness': ["1/1"]}
        assert player['positive_indifference'] is None

    def test_single_strategy(self, capsys, game_file):
        code, report = run(capsys, "analyze", game_file({"A": [[1, 2]]}))
        assert code == 0
        player = report['result']['players']['1']
        assert player['indifference']['status'] == 'indifferent'
        assert player['cover'] == {'covered': True, 'witness': None}
        assert player['positive_indifference'] is not None
        assert 'two_by_two_type' not in player

    def test_single_strategy_opponent(self, capsys, game_file):
        code, report = run(capsys, "analyze", game_file({"A": [[1], [0]], "B": [[1, 0]]}))
        assert code == 0
        result = report['result']
        assert result['players']['1']['indifference'] == {'status': 'not_possible', 'w': ["1/1"]}
        assert result['players']['2']['cover'] == {'covered': True, 'witness': None}
        assert result['players']['2']['indifference']['status'] == 'indifferent'
        assert result['necessary_condition'] == {'player1': False, 'player2': True}
        assert result['completely_mixed_equilibrium'] is None

    def test_matching_pennies(self, capsys, game_file):
        path = game_file({"A": [[1, -1], [-1, 1]], "B": [[-1, 1], [1, -1]]})
        code, report = run(capsys, "analyze", path)
        assert code == 0
        result = report['result']
        assert set(result['players'].keys()) == {'1', '2'}
        assert result['necessary_condition'] == {'player1': True, 'player2': True}
        assert result['completely_mixed_equilibrium'] == [["1/2", "1/2"], ["1/2", "1/2"]]
        assert result['game_type_2x2'] == "MATCHING_PENNIES"

    def test_single_player(self, capsys, game_file):
        path = game_file({"A": RPS, "symmetric": True})
        code, report = run(capsys, "analyze", "--player", "2", path)
        assert code == 0
        assert list(report['result']['players'].keys()) == ['2']

    def test_input_is_echoed(self, capsys, game_file):
        path = game_file({"A": [["1/2", 0], [2, "-3/4"]], "B": [[1, 1], [0, 0]]})
        _, report = run(capsys, "analyze", path)
        echoed = GameFile.parse(report['input'])
        assert echoed == GameFile.load(path)


class TestClassify:
    def test_rps(self, capsys, game_file):
        code, report = run(capsys, "classify", game_file({"A": RPS, "symmetric": True}))
        assert code == 0
        outcome = report['result']['outcome']
        assert outcome == {'status': 'classified', 'class': 'A3', 'sigma': [1, 3, 2],
                           'params': ["1/2", "1/2", "1/2"]}

    def test_canonical_class_a1(self, capsys, game_file):
        third = "1/3"
        path = game_file({"A": [[0, 1, third], [third, 0, 1], [1, third, 0]], "symmetric": True})
        code, report = run(capsys, "classify", path)
        assert code == 0
        outcome = report['result']['outcome']
        assert outcome['class'] == "A1"
        assert outcome['sigma'] == [1, 2, 3]
        assert outcome['params'] == [third] * 3

    def test_pure_symmetric_equilibrium(self, capsys, game_file):
        path = game_file({"A": [[1, 0, 0], [0, 0, 1], [0, 1, 0]], "symmetric": True})
        code, report = run(capsys, "classify", path)
        assert code == 0
        assert report['result']['outcome'] == {'status': 'rejected', 'reason': 'PureSymmetricEquilibrium'}

    def test_non_generic(self, capsys, game_file):
        path = game_file({"A": [[1, 0, 0], [1, 2, 0], [1, 0, 3]], "symmetric": True})
        code, report = run(capsys, "classify", path)
        assert code == 2
        assert report['error']['type'] == "NonGenericException"
        assert report['error']['columns'] == [1]

    def test_needs_symmetric_file(self, capsys, game_file):
        code, report = run(capsys, "classify", game_file({"A": RPS}))
        assert code == 2
        assert report['error']['type'] == "NotSymmetricException"


class TestEquilibria:
    def test_rps(self, capsys, game_file):
        code, report = run(capsys, "equilibria", game_file({"A": RPS, "symmetric": True}))
        assert code == 0
        assert report['result']['count'] == 1
        assert report['result']['equilibria'][0]['profile'] == [["1/3", "1/3", "1/3"]]

    def test_class_a5_game(self, capsys, game_file):
        path = game_file({"A": [[0, "1/2", 1], [1, 0, 0], ["1/4", 1, "1/4"]], "symmetric": True})
        code, report = run(capsys, "equilibria", path)
        assert code == 0
        assert report['result']['count'] == 1
        assert report['result']['equilibria'][0]['profile'] == [["7/16", "1/4", "5/16"]]

    def test_bimatrix(self, capsys, game_file):
        path = game_file({"A": [[2, 0], [0, 1]], "B": [[1, 0], [0, 2]]})
        code, report = run(capsys, "equilibria", path)
        assert code == 0
        assert report['result']['count'] == 3

    def test_degenerate(self, capsys, game_file):
        code, report = run(capsys, "equilibria", game_file({"A": [[1, 1], [1, 1]], "symmetric": True}))
        assert code == 2
        assert report['result']['degenerate'] is True

    def test_too_large(self, capsys, game_file):
        path = game_file({"A": [[0] * 5 for _ in range(5)], "symmetric": True})
        code, report = run(capsys, "equilibria", path)
        assert code == 2
        assert report['error']['type'] == "OracleLimitException"

    def test_needs_opponent(self, capsys, game_file):
        code, report = run(capsys, "equilibria", game_file({"A": [[1, 0], [0, 1]]}))
        assert code == 1
        assert report['command'] == "equilibria"


@pytest.mark.parametrize(
    "document",
    [
        "{not json",
        {"B": [[1]]},
        {"A": [["1.5", 0], [0, 1]]},
        {"A": [[1, 0], [0]]},
        {"A": [[1, 0], [0, 1]], "symmetric": "yes"},
        {"A": [[1, 0]], "symmetric": True},
        {"A": []},
    ],
    ids=["json", "missing_a", "decimal", "ragged", "flag", "not_square", "empty"],
)
def test_malformed_input(capsys, game_file, document):
    code, report = run(capsys, "analyze", game_file(document))
    assert code == 1
    assert set(report['error'].keys()) == {'type', 'message'}


def test_missing_file(capsys, tmp_path):
    code, report = run(capsys, "analyze", str(tmp_path / "absent.json"))
    assert code == 1
    assert report['error']['type'] == "FileNotFoundError"


def test_b_shape_mismatch(capsys, game_file):
    code, report = run(capsys, "analyze", game_file({"A": [[1, 0, 2], [0, 1, 1]], "B": [[1, 0], [0, 1]]}))
    assert code == 2
    assert report['error']['type'] == "DimensionMismatchException"


@pytest.mark.parametrize(
    "argv",
    [["frobnicate"], ["analyze"], ["sample", "--count", "many"], ["render", "x.json", "--player", "3"]],
    ids=["command", "file", "count", "player"],
)
def test_bad_arguments(capsys, argv):
    code, report = run(capsys, *argv)
    assert code == 1
    assert report['error']['type'] == "InputException"


class TestRender:
    def test_output_file(self, capsys, game_file, tmp_path):
        path = game_file({"A": RPS, "symmetric": True})
        output = tmp_path / "rps.svg"
        code, report = run(capsys, "render", path, "--output", str(output))
        assert code == 0
        assert report['result'] == {'output': str(output)}
        expected = half_space_diagram(difference_matrix(GameMatrix.from_rows(RPS)))
        assert output.read_text(encoding='utf-8') == expected

    @pytest.mark.parametrize(
        "rows,golden",
        [
            ([[0, 1, "1/2"], ["1/2", 0, 1], [1, "1/2", 0]], "class_a1_half.svg"),
            (RPS, "rps.svg"),
            ([[0, 1, 1], ["1/4", 0, "1/4"], [1, "1/2", 0]], "class_a2_gap.svg"),
        ],
        ids=["class_a1", "rps", "class_a2_gap"],
    )
    def test_golden_files(self, capsys, game_file, tmp_path, rows, golden):
        path = game_file({"A": rows, "symmetric": True})
        expected = (GOLDEN / golden).read_bytes()
        for attempt in ("first.svg", "second.svg"):
            output = tmp_path / attempt
            code, _ = run(capsys, "render", path, "--output", str(output))
            assert code == 0
            assert output.read_bytes() == expected

    def test_stdout(self, capsys, game_file):
        path = game_file({"A": RPS, "symmetric": True})
        assert main(["render", path]) == 0
        first = capsys.readouterr().out
        assert main(["render", path]) == 0
        assert capsys.readouterr().out == first
        assert first.startswith('<?xml')

    def test_uncovered_gap(self, capsys, game_file):
        quarter = "1/4"
        path = game_file({"A": [[0, 1, 1], [quarter, 0, quarter], [1, "1/2", 0]], "symmetric": True})
        _, report = run(capsys, "analyze", "--player", "1", path)
        assert report['result']['players']['1']['cover']['covered'] is False
        assert main(["render", path]) == 0
        assert capsys.readouterr().out.count('<polygon ') == 3

    def test_unwritable(self, capsys, game_file, tmp_path):
        path = game_file({"A": RPS, "symmetric": True})
        code, _ = run(capsys, "render", path, "--output", str(tmp_path / "missing" / "rps.svg"))
        assert code == 1

    def test_needs_three_strategies(self, capsys, game_file):
        code, _ = run(capsys, "render", game_file({"A": [[1, 0], [0, 1]]}))
        assert code == 2


class TestSample:
    def test_deterministic(self, capsys):
        first = run(capsys, "sample", "--n", "3", "--count", "5", "--seed", "9")
        second = run(capsys, "sample", "--n", "3", "--count", "5", "--seed", "9")
        assert first == second
        assert first[0] == 0
        assert first[1]['input']['seed'] == 9

    def test_exhaustive_default_count(self, capsys):
        code, report = run(capsys, "sample", "--n", "2", "--exhaustive")
        assert code == 0
        assert report['input']['count'] == 81
        assert report['result']['games'] == 81
        assert report['result']['mismatches'] == []
        assert report['result']['mismatch_count'] == 0

    def test_mismatches_exit_nonzero(self, capsys, mocker):
        summary = SampleSummary(games=1, not_possible=1)
        summary.mismatches.append(Mismatch(0, "cover", GameMatrix.from_rows([[1, 1], [0, 0]])))
        mocker.patch.object(cli, "run_sample", return_value=summary)
        code, report = run(capsys, "sample", "--n", "2", "--count", "1")
        assert code == 2
        assert report['result']['mismatch_count'] == 1
        assert report['result']['mismatches'][0]['check'] == "cover"

    def test_bad_count(self, capsys):
        code, _ = run(capsys, "sample", "--count", "0")
        assert code == 1


class TestAdjacency:
    def test_coarse(self, capsys):
        code, report = run(capsys, "adjacency", "--resolution", "1/2")
        assert code == 0
        assert report['result']['resolution'] == "1/2"
        assert isinstance(report['result']['edges'], list)

    @pytest.mark.parametrize("resolution", ["0", "3/2", "abc"], ids=["zero", "large", "word"])
    def test_bad_resolution(self, capsys, resolution):
        code, report = run(capsys, "adjacency", "--resolution", resolution)
        assert code == 1
        assert report['command'] == "adjacency"


def test_report_version_comes_from_config(capsys, mocker):
    mocker.patch.object(config, "report_version", "9.9")
    _, report = run(capsys, "adjacency", "--resolution", "1")
    assert report['version'] == "9.9"
