import re

import pytest

# acceptance lines collected by test_acceptance.verdict, echoed in the summary
VERDICTS: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long searches")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running search, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long test; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: (int(re.search(r"criterion (\d+)", s).group(1)), s)):
            terminalreporter.write_line(line)
