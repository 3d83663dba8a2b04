from __future__ import annotations

from pathlib import Path

import pytest

from coopq import load_kb

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def flights_text() -> str:
    return fixture_text("flights.kb")


@pytest.fixture(scope="session")
def flights_kb(flights_text):
    return load_kb(flights_text)


@pytest.fixture(scope="session")
def flights_two_kb():
    return load_kb(fixture_text("flights_two.kb"))


@pytest.fixture(scope="session")
def wardrobe_kb():
    return load_kb(fixture_text("wardrobe.kb"))
