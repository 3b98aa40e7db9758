from __future__ import annotations

import uuid
from typing import TYPE_CHECKING, Callable

import numpy as np
import pytest

from rssiqueue.core.logging import LoggingConfig, configure_logging

if TYPE_CHECKING:
    import pathlib


@pytest.fixture()
def anyio_backend():
    return "asyncio"


@pytest.fixture(autouse=True, scope="session")
def _logging():
    configure_logging(LoggingConfig(level="WARNING"))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240501)


@pytest.fixture()
def tmp_file_creator(tmp_path: pathlib.Path) -> Callable[[str | None], pathlib.Path]:
    def creator(extension: str | None = None) -> pathlib.Path:
        file_name = f"{uuid.uuid4()}.{extension}" if extension else str(uuid.uuid4())
        file_path = tmp_path / file_name
        file_path.touch(exist_ok=False)
        return file_path

    return creator
