"""
Command-line front end. Every command prints one JSON report to stdout.

Exit codes: 0 success, 1 malformed input, 2 a domain precondition failed.
A degenerate game in `equilibria` and a cross-check mismatch in `sample`
also exit 2.
"""
from __future__ import annotations
from typing import Any, Callable, Dict, List, Optional, Sequence
from dataclasses import dataclass
import argparse
import json
import sys

from loguru import logger
from typing_extensions import Literal

from . import config, exceptions
from .classify3x3 import adjacency, classify
from .core import GameMatrix, parse_rational
from .indifference import (
    _differences, completely_mixed_equilibrium, difference_matrix, game_type_2x2, half_space_cover,
    necessary_condition, positive_indifference, solve_indifference, two_by_two_type,
)
from .oracle import bimatrix_equilibria, symmetric_equilibria
from .sampler import SamplerConfig, run_sample
from .svg import half_space_figure
from .utils import format_matrix, grid

Player = Literal[1, 2]


@dataclass(frozen=True)
class GameFile:
    """
    A game document: player 1's matrix "A", optionally player 2's matrix "B"
    (its rows are player 2's strategies), or "symmetric": true for a square
    "A" played against itself.
    """

    A: GameMatrix
    B: Optional[GameMatrix] = None
    symmetric: bool = False

    @staticmethod
    def parse(document: Any) -> GameFile:
        if not isinstance(document, dict) or "A" not in document:
            raise exceptions.InputException('a game file is an object with an "A" matrix')
        symmetric = document.get("symmetric", False)
        if not isinstance(symmetric, bool):
            raise exceptions.InputException('"symmetric" must be true or false')
        if symmetric and document.get("B") is not None:
            raise exceptions.InputException('a symmetric game file has no "B" matrix')
        try:
            A = GameFile._matrix(document["A"], symmetric)
        except exceptions.NotSymmetricException as e:
            raise exceptions.InputException(str(e)) from e
        B = None
        if document.get("B") is not None:
            B = GameFile._matrix(document["B"], False)
            if B.shape != (A.m, A.n):
                logger.error("B is {}x{} but A is {}x{}", B.n, B.m, A.n, A.m)
                raise exceptions.DimensionMismatchException(
                    f'"B" must be {A.m}x{A.n} to fit a {A.n}x{A.m} "A", got {B.n}x{B.m}')
        return GameFile(A, B, symmetric)

    @staticmethod
    def _matrix(rows: Any, symmetric: bool) -> GameMatrix:
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise exceptions.InputException("a matrix is a list of rows")
        if not rows or not rows[0]:
            raise exceptions.InputException("a matrix needs at least one row and one column")
        return GameMatrix.from_rows(rows, symmetric)

    @staticmethod
    def load(path: str) -> GameFile:
        with open(path, 'r', encoding='utf-8') as f:
            return GameFile.parse(json.load(f))

    @property
    def opponent(self) -> Optional[GameMatrix]:
        if self.symmetric:
            return self.A
        return self.B

    def player_matrix(self, player: Player) -> GameMatrix:
        if player == 1:
            return self.A
        if self.opponent is None:
            raise exceptions.InputException('player 2 needs a "B" matrix or a symmetric game')
        return self.opponent

    def to_json(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {'A': format_matrix(self.A.entries), 'symmetric': self.symmetric}
        if self.B is not None:
            result['B'] = format_matrix(self.B.entries)
        return result


def _report(command: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    return dict({'version': config.get_report_version(), 'command': command}, **payload)


def _emit(document: Dict[str, Any]) -> None:
    print(json.dumps(document, sort_keys=True, indent=2))


def _players(game: GameFile, player: Optional[Player]) -> List[Player]:
    if player is not None:
        return [player]
    return [1, 2] if game.opponent is not None else [1]


def _player_report(A: GameMatrix) -> Dict[str, Any]:
    positive = positive_indifference(A)
    result = {
        'indifference': solve_indifference(A).to_json(),
        'cover': half_space_cover(_differences(A)).to_json(),
        'positive_indifference': None if positive is None else positive.to_json(),
    }
    if A.shape == (2, 2):
        result['two_by_two_type'] = two_by_two_type(A).name
    return result


def cmd_analyze(args: argparse.Namespace) -> int:
    game = GameFile.load(args.file)
    result: Dict[str, Any] = {
        'players': {str(p): _player_report(game.player_matrix(p)) for p in _players(game, args.player)},
    }
    if game.opponent is not None:
        A1, A2 = game.A, game.opponent
        result['necessary_condition'] = necessary_condition(A1, A2).to_json()
        equilibrium = completely_mixed_equilibrium(A1, A2)
        result['completely_mixed_equilibrium'] = (
            None if equilibrium is None else [equilibrium[0].to_json(), equilibrium[1].to_json()])
        if A1.shape == (2, 2):
            result['game_type_2x2'] = game_type_2x2(A1, A2).name
    _emit(_report('analyze', {'input': game.to_json(), 'result': result}))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    game = GameFile.load(args.file)
    if not game.symmetric:
        raise exceptions.NotSymmetricException('classify needs a file with "symmetric": true')
    report = classify(game.A)
    _emit(_report('classify', {'input': game.to_json(), 'result': report.to_json()}))
    return 0


def cmd_equilibria(args: argparse.Namespace) -> int:
    game = GameFile.load(args.file)
    if game.symmetric:
        found = symmetric_equilibria(game.A)
    elif game.B is not None:
        found = bimatrix_equilibria(game.A, game.B)
    else:
        raise exceptions.InputException('equilibria need a "B" matrix or a symmetric game')
    _emit(_report('equilibria', {'input': game.to_json(), 'result': found.to_json()}))
    return 2 if found.degenerate else 0


def cmd_sample(args: argparse.Namespace) -> int:
    count = args.count
    if count is None:
        count = config.sampler_default_count
        if args.exhaustive:
            cols = args.n if args.cols is None else args.cols
            count = len(config.get_exhaustive_entries()) ** (args.n * cols)
    sampler_config = SamplerConfig(
        n=args.n,
        count=count,
        seed=args.seed,
        denominator=args.denominator,
        cols=args.cols,
        exhaustive=args.exhaustive,
    )
    summary = run_sample(sampler_config)
    _emit(_report('sample', {'input': sampler_config.to_json(), 'result': summary.to_json()}))
    return 2 if summary.mismatches else 0


def cmd_render(args: argparse.Namespace) -> int:
    game = GameFile.load(args.file)
    A = game.player_matrix(args.player or 1)
    if A.n != 3:
        raise exceptions.DimensionMismatchException(f"render needs a player with 3 strategies, got {A.n}")
    figure = half_space_figure(difference_matrix(A))
    if args.output is None:
        sys.stdout.write(figure.to_string())
        return 0
    figure.save(args.output)
    _emit(_report('render', {'input': game.to_json(), 'result': {'output': args.output}}))
    return 0


def cmd_adjacency(args: argparse.Namespace) -> int:
    resolution = parse_rational(args.resolution) if args.resolution else config.get_adjacency_resolution()
    try:
        grid(resolution)
    except ValueError as e:
        raise exceptions.InputException(str(e)) from e
    graph = adjacency(resolution)
    _emit(_report('adjacency', {'result': graph.to_json()}))
    return 0


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message: str) -> None:  # type: ignore[override]
        raise exceptions.InputException(message)


def _int_flag(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='gamecover', description='Exact indifference and classification tools for matrix games.')
    parser.add_argument('--log-level', type=str.upper, default='WARNING',
                        choices=('TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL'),
                        help='loguru level for messages on stderr')
    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
        'analyze': cmd_analyze,
        'classify': cmd_classify,
        'equilibria': cmd_equilibria,
        'sample': cmd_sample,
        'render': cmd_render,
        'adjacency': cmd_adjacency,
    }
    for name in ('analyze', 'classify', 'equilibria', 'render'):
        sub = commands.add_parser(name)
        sub.add_argument('file', help='JSON game file')
        if name in ('analyze', 'render'):
            sub.add_argument('--player', type=int, choices=(1, 2), default=None)
        if name == 'render':
            sub.add_argument('--output', default=None, help='SVG path, stdout when omitted')
        sub.set_defaults(handler=handlers[name])

    sample = commands.add_parser('sample')
    sample.add_argument('--n', type=_int_flag, default=3)
    sample.add_argument('--cols', type=_int_flag, default=None)
    sample.add_argument('--count', type=_int_flag, default=None)
    sample.add_argument('--seed', type=_int_flag, default=config.sampler_default_seed)
    sample.add_argument('--denominator', type=_int_flag, default=config.sampler_default_denominator)
    sample.add_argument('--exhaustive', action='store_true')
    sample.set_defaults(handler=handlers['sample'])

    adjacency_parser = commands.add_parser('adjacency')
    adjacency_parser.add_argument('--resolution', default=None, help='grid step p/q in (0, 1]')
    adjacency_parser.set_defaults(handler=handlers['adjacency'])
    return parser


def _error_report(command: Optional[str], error: Exception) -> Dict[str, Any]:
    detail: Dict[str, Any] = {'type': type(error).__name__, 'message': str(error)}
    if isinstance(error, exceptions.NonGenericException):
        detail['columns'] = error.columns
    return _report(command or '', {'error': detail})


def main(argv: Optional[Sequence[str]] = None) -> int:
    command = None
    sink = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        logger.remove()
        sink = logger.add(sys.stderr, level=args.log_level)
        logger.enable("gamecover")
        return args.handler(args)
    except (exceptions.InputException, json.JSONDecodeError, OSError) as e:
        _emit(_error_report(command, e))
        return 1
    except exceptions.DomainException as e:
        _emit(_error_report(command, e))
        return 2
    finally:
        if sink is not None:
            logger.remove(sink)


if __name__ == '__main__':
    sys.exit(main())
