from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run slow checks (numeric spectrum of Cayley(6), ~3 min)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for an acceptance criterion, shown in the terminal summary."""

    @contextmanager
    def record(tag, text):
        try:
            yield
        except BaseException as exc:
            line = f"FAIL  {tag}: {text}  ({type(exc).__name__}: {str(exc).splitlines()[0][:160]})"
            ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        line = f"PASS  {tag}: {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
