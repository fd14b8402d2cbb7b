import pytest

from srgfam import caps, family, involution


@pytest.fixture(scope="session")
def l33():
    return family.build_l33()


@pytest.fixture(scope="session")
def bh():
    return family.build_brouwer_haemers()


@pytest.fixture(scope="session")
def hill():
    return caps.reference_cap()


@pytest.fixture(scope="session")
def games(hill):
    return family.build_games(hill)


@pytest.fixture(scope="session")
def sig_l33(l33):
    return involution.all_sigmas(l33)


@pytest.fixture(scope="session")
def sig_bh(bh):
    return involution.all_sigmas(bh)


@pytest.fixture(scope="session")
def sig_games(games):
    return involution.all_sigmas(games)


_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_record():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
