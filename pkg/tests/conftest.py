import pytest

from countqm.instances import load_instance


@pytest.fixture(scope="session")
def psl2z():
    return load_instance("psl2z")


@pytest.fixture(scope="session")
def sl2z():
    return load_instance("sl2z")


@pytest.fixture(scope="session")
def klein():
    return load_instance("klein-hnn")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
