import pytest

from weakdl.ecgroup import registry_get

# outcome lines collected by the acceptance suite, printed after the run
ACCEPTANCE: dict[int, str] = {}

Q_EXAMPLE = (
    100760202697161893004335214126591116800117319792545458764085267675326325395621,
    75193444318165031146359304621062797862272142296678797285916994295833810377664,
)
ALPHA_EXAMPLE = 64826877121840101682523629462674967702937679580369334126295633893540044112329


@pytest.fixture(scope="session")
def toy1():
    return registry_get("toy-1")


@pytest.fixture(scope="session")
def toy2():
    return registry_get("toy-2")


@pytest.fixture(scope="session")
def k1():
    return registry_get("secp256k1")


@pytest.fixture(scope="session")
def p256():
    return registry_get("P-256")


@pytest.fixture(scope="session")
def toy1_dlog(toy1):
    """Brute-force discrete log table on toy-1: point -> k."""
    table = {}
    P = None
    for k in range(toy1.p):
        table[P] = k
        P = toy1.add(P, toy1.G)
    return table


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
