import pytest


def brute_points(p, q, bound):
    """Double loop over the box; independent of the discriminant search."""
    return sorted((x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)
                  if x * x - p * x * y + y * y == q)


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@pytest.fixture
def brute():
    return brute_points


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
