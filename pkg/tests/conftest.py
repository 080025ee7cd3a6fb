import pytest

from sigmalocal.corpus import builtin_corpus
from sigmalocal.sigma import parse_sigma

SIGMAS = ("sigma1", "pi:2,3", "blocks:[2,3]|rest")


@pytest.fixture(scope="session")
def default_corpus():
    return builtin_corpus("default")


@pytest.fixture(scope="session")
def small_corpus():
    return builtin_corpus("small")


@pytest.fixture(scope="session", params=SIGMAS)
def sigma(request):
    return parse_sigma(request.param)


ACCEPTANCE_LINES: list[str] = []


def report(n: int, ok: bool, detail: str) -> bool:
    """Print and remember one pass/fail line for an acceptance criterion."""
    line = f"acceptance {n} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
