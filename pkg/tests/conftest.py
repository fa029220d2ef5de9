import os
from pathlib import Path

import pytest

from hassa import maxcut_to_ising, toroidal_grid

DATA = Path(__file__).parent / "data"

# 8 x 100 torus with ±1 weights: 800 vertices, 1600 edges, like G11.
SURROGATE_SHAPE = (8, 100, 11)
SURROGATE_OPTIMUM = 536  # exact, transfer-matrix oracle (see test_oracles.py)

ACCEPTANCE_LINES: list[str] = []


def gset_path(name: str) -> Path | None:
    """Locate a G-set file in $GSET_DIR or tests/data/gset; None if absent."""
    dirs = []
    if os.environ.get("GSET_DIR"):
        dirs.append(Path(os.environ["GSET_DIR"]))
    dirs.append(DATA / "gset")
    for d in dirs:
        for cand in (d / name, d / f"{name}.txt", d / name.lower(), d / f"{name.lower()}.txt"):
            if cand.is_file():
                return cand
    return None


@pytest.fixture(scope="session")
def surrogate():
    g = toroidal_grid(*SURROGATE_SHAPE)
    return g, maxcut_to_ising(g)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=_order):
            terminalreporter.write_line(line)


def _order(line: str):
    tag = line.split("]", 1)[1].split(":", 1)[0].split()  # e.g. ["criterion", "5", "(G11)"]
    num = int(tag[1]) if len(tag) > 1 and tag[1].isdigit() else 99
    return (tag[0] != "criterion", num, line)
