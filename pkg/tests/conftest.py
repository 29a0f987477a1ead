import pytest

from horomean.primes import build_prime_table


@pytest.fixture(scope="session")
def table2_small():
    return build_prime_table(2, 10**4)


@pytest.fixture(scope="session")
def table2_1e5():
    return build_prime_table(2, 10**5)


@pytest.fixture(scope="session")
def table2_1e6():
    return build_prime_table(2, 10**6)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, ok, detail)`` then assert ``ok``."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
