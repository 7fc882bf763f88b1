import json
from pathlib import Path

import pytest

from pcafe.elicitation import parse_session

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def fuzzy_session_doc():
    return load_fixture("session_fuzzy_10experts.json")


@pytest.fixture(scope="session")
def crisp_session_doc():
    return load_fixture("session_crisp_10experts.json")


@pytest.fixture(scope="session")
def fuzzy_session(fuzzy_session_doc):
    return parse_session(json.dumps(fuzzy_session_doc))


@pytest.fixture(scope="session")
def crisp_session(crisp_session_doc):
    return parse_session(json.dumps(crisp_session_doc))


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
