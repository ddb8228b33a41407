import logging
import pytest
from _pytest.logging import caplog as _caplog
from loguru import logger

from gamecover.core import GameMatrix


@pytest.fixture
def rps() -> GameMatrix:
    return GameMatrix.from_rows([[0, -1, 1], [1, 0, -1], [-1, 1, 0]], symmetric=True)


@pytest.fixture
def matching_pennies() -> GameMatrix:
    return GameMatrix.from_rows([[1, -1], [-1, 1]])


@pytest.fixture
def coordination() -> GameMatrix:
    return GameMatrix.from_rows([[2, 0], [0, 1]])


@pytest.fixture
def dominance() -> GameMatrix:
    return GameMatrix.from_rows([[1, 1], [0, 0]])


@pytest.fixture
def caplog(_caplog):
    logger.enable("gamecover")

    class PropogateHandler(logging.Handler):
        def emit(self, record):
            logging.getLogger(record.name).handle(record)

    handler_id = logger.add(PropogateHandler(), format="{message}")
    yield _caplog
    logger.remove(handler_id)
