import pathlib

import pytest

from catlogic.dsl import parse_file

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def group_theory():
    return parse_file(fixture_text("group.thy"))[0]


@pytest.fixture(scope="session")
def group_alt_theory():
    return parse_file(fixture_text("group_alt.thy"))[0]


@pytest.fixture(scope="session")
def prop_theories():
    return {t.name: t for t in parse_file(fixture_text("props.thy"))}


@pytest.fixture(scope="session")
def xor_pair(prop_theories):
    return prop_theories["XOR_PAIR"]
