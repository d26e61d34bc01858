import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gendiscord.qcore import DensityMatrix  # noqa: E402
from gendiscord.states import ghz_ket, make_state  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture
def bell():
    return make_state("bell")


@pytest.fixture
def ghz3():
    return DensityMatrix.from_ket(ghz_ket(3), (2, 2, 2))


@pytest.fixture
def classical2():
    return DensityMatrix((2, 2), np.diag([0.5, 0, 0, 0.5]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
