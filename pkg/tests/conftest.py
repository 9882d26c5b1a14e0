"""
Pytest configuration and shared fixtures for sqpbraid tests.
"""

import json
import sys
from pathlib import Path

import pytest

PROJECT_DIR = Path(__file__).parent.parent
CONFIG_DIR = PROJECT_DIR / "config"
sys.path.insert(0, str(PROJECT_DIR))

from sqpbraid import BandWord, band_word, parse_band_word  # noqa: E402

# Golden words
TREFOIL_ANNULUS = "a(2,6) a(1,4) a(2,5) a(4,6) a(3,5) a(1,3)"
CUT_INPUT = "a(1,4) a(2,5) a(4,6) a(3,5) a(1,3) a(2,6)"
CUT_OUTPUT = "a(3,7) a(2,5) a(3,6) a(5,7) a(4,6) a(1,4)"
REPLACEMENT_INPUT = "a(1,2)^-1 a(1,3)^-1 a(1,2) a(1,3)"
REPLACEMENT_FIRST_STEP = (
    "a(1,8)^-1 a(3,7) a(2,5) a(3,6) a(5,7) a(4,6) a(1,4) a(2,9) a(1,8) a(1,9)"
)
REPLACEMENT_FULL = (
    "a(3,7) a(2,5) a(3,6) a(5,7) a(4,6) a(1,4) a(2,14) a(9,13) a(8,11) a(9,12) "
    "a(11,13) a(10,12) a(1,10) a(8,15) a(1,14) a(1,15)"
)
FIGURE_EIGHT = "a(1,2) a(2,3)^-1 a(1,2) a(2,3)^-1"
FIGURE_EIGHT_FULL = (
    "a(1,2) a(4,8) a(3,6) a(4,7) a(6,8) a(5,7) a(2,5) a(3,15) a(1,2) "
    "a(10,14) a(9,12) a(10,13) a(12,14) a(11,13) a(2,11) a(9,15)"
)


def word(strands: int, letters: str) -> BandWord:
    """Shorthand for a word from its letter text."""
    return parse_band_word(f"strands: {strands}\n{letters}")


@pytest.fixture
def trefoil_annulus() -> BandWord:
    return word(6, TREFOIL_ANNULUS)


@pytest.fixture
def hopf_band() -> BandWord:
    return band_word(2, [(1, 2), (1, 2)])


@pytest.fixture
def trefoil() -> BandWord:
    return band_word(2, [(1, 2), (1, 2), (1, 2)])


@pytest.fixture
def figure_eight() -> BandWord:
    return word(3, FIGURE_EIGHT)


@pytest.fixture
def replacement_input() -> BandWord:
    return word(3, REPLACEMENT_INPUT)


@pytest.fixture
def store(tmp_path, monkeypatch) -> Path:
    """Empty catalog store, also exported through the environment."""
    directory = tmp_path / "catalog"
    monkeypatch.setenv("SQPBRAID_CATALOG_DIR", str(directory))
    return directory


@pytest.fixture
def certificate_schema() -> dict:
    return json.loads((CONFIG_DIR / "certificate.schema.json").read_text())


@pytest.fixture
def report_schema() -> dict:
    return json.loads((CONFIG_DIR / "report.schema.json").read_text())


@pytest.fixture
def entry_schema() -> dict:
    return json.loads((CONFIG_DIR / "annulus_entry.schema.json").read_text())


def pytest_addoption(parser):
    """Add custom pytest options."""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run the full-size random property suite",
    )


def pytest_configure(config):
    """Configure custom markers."""
    config.addinivalue_line(
        "markers", "slow: full-size corpus run (needs --run-slow)"
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --run-slow is passed."""
    if config.getoption("--run-slow"):
        return

    skip_slow = pytest.mark.skip(reason="Need --run-slow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
