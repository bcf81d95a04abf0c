import re

import pytest

from reqanaphora.corpus import parse_spec
from reqanaphora.fixtures import GoldenAnnotationSet, fixture_analyzer
from reqanaphora.nlpcore import RuleAnalyzer, analyze_document
from reqanaphora.synth import WORKED_EXAMPLE_SPEC

_ACCEPTANCE = {}
_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        ok = report.passed and _ACCEPTANCE.get(key, True)
        _ACCEPTANCE[key] = ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), ok in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"criterion {n:>2} [{'PASS' if ok else 'FAIL'}] {name.replace('_', ' ')}")


@pytest.fixture(scope="session")
def golden():
    return GoldenAnnotationSet.load()


@pytest.fixture(scope="session")
def example_doc(golden):
    return analyze_document(parse_spec(WORKED_EXAMPLE_SPEC, "myRS"), fixture_analyzer(golden))


@pytest.fixture(scope="session")
def rule_analyzer():
    return RuleAnalyzer()


def norm_phrase(text: str) -> str:
    t = " ".join(text.casefold().split())
    return re.sub(r"^(?:the|a|an)\s+", "", t)
