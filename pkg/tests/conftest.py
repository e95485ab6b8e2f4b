import pytest

from actpres import corpus
from actpres.textfmt import parse


def paper_monoid(case_id):
    return corpus.CASES[case_id].doc().monoid_handle()


@pytest.fixture(scope="session")
def m57():
    return paper_monoid("ex5.7")


@pytest.fixture(scope="session")
def m513():
    return paper_monoid("ex5.13")


@pytest.fixture(scope="session")
def m514():
    return paper_monoid("ex5.14")


@pytest.fixture(scope="session")
def m610():
    return paper_monoid("ex6.10")


@pytest.fixture(scope="session")
def systems(m57, m513, m514, m610):
    return {"ex5.7": m57, "ex5.13": m513, "ex5.14": m514, "ex6.10": m610}


def idempotent_monoid():
    """M = {1, e} with e e = e."""
    from actpres.monoid import FiniteMonoid

    return FiniteMonoid([[0, 1], [1, 1]], 0, {"e": 1}, labels=["1", "e"])


def doc(text):
    return parse(text)
