from __future__ import annotations

import re
from pathlib import Path

import pytest

from deliberator.dsl import Document, parse_file

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Print the FAIL side of the acceptance gate's one-line-per-criterion
    contract (the PASS side prints inside each criterion test)."""
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or not report.failed:
        return
    match = re.match(r"test_criterion_(\d+)", item.name)
    if match and "test_acceptance" in str(item.fspath):
        print(f"\nFAIL criterion {match.group(1)}: see the assertion above")


def corpus_doc(name: str) -> Document:
    return parse_file(CORPUS / f"{name}.kb")


@pytest.fixture(scope="session")
def alfa_model_a() -> Document:
    return corpus_doc("alfa_model_a")


@pytest.fixture(scope="session")
def alfa_models_ab() -> Document:
    return corpus_doc("alfa_models_ab")


@pytest.fixture(scope="session")
def alfa_qualitative() -> Document:
    return corpus_doc("alfa_qualitative")


@pytest.fixture(scope="session")
def alfa_qualitative_combined() -> Document:
    return corpus_doc("alfa_qualitative_combined")


@pytest.fixture(scope="session")
def smoking() -> Document:
    return corpus_doc("smoking")


@pytest.fixture(scope="session")
def smoking_no_exception() -> Document:
    return corpus_doc("smoking_no_exception")


@pytest.fixture(scope="session")
def reinstatement() -> Document:
    return corpus_doc("reinstatement")


@pytest.fixture(scope="session")
def salient_demo() -> Document:
    return corpus_doc("salient_demo")
