import json
import pathlib

import pytest

from geu.docio import build_problem

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> dict:
    with open(FIXTURES / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def beldr():
    """Two permuted acts over three states, utility 1..3, and a belief
    function concentrated on the first two states: the canonical problem
    where Choquet preference splits an indistinguishable pair."""
    return build_problem(load_fixture("beldr.json"))


@pytest.fixture(scope="session")
def beldr_reduct(beldr):
    return beldr.nonplausibilistic_reduct()


@pytest.fixture(scope="session")
def uniform_problem():
    return build_problem(load_fixture("uniform.json"))


@pytest.fixture(scope="session")
def credal_problem():
    return build_problem(load_fixture("credal.json"))
