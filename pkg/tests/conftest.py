import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from curvedatom.constants import SOLAR_MASS_G, SOLAR_RADIUS_CM, make_context
from curvedatom.curvature import schwarzschild_curvature

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx():
    return make_context()


@pytest.fixture(scope="session")
def atomic():
    return make_context("atomic")


@pytest.fixture(scope="session")
def solar(ctx):
    return schwarzschild_curvature(ctx, SOLAR_MASS_G, SOLAR_RADIUS_CM)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
