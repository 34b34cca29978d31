from functools import lru_cache

import pytest

import probbell
from probbell.moments import make_provider

BUILTIN_DISTS = ["det:1", "bernoulli:1/2", "discrete:(0,1/3);(2,2/3)", "poisson:1"]


@lru_cache(maxsize=None)
def r_partition_counts(n, r):
    """Brute-force enumeration of set partitions of {0..n+r-1}.

    The first r elements are pre-placed in r distinct blocks; every
    placement of the remaining n elements (restricted growth order) is
    visited. Returns a tuple whose entry k counts partitions with k + r blocks.
    The final element is placed in bulk: ``blocks`` old blocks or one new one.
    """
    counts = [0] * (n + 1)
    if n == 0:
        counts[0] = 1
        return tuple(counts)

    def rec(pos, blocks):
        if pos == n - 1:
            counts[blocks - r] += blocks
            counts[blocks + 1 - r] += 1
            return
        for _ in range(blocks):
            rec(pos + 1, blocks)
        rec(pos + 1, blocks + 1)

    rec(0, r)
    return tuple(counts)


@lru_cache(maxsize=None)
def r_stirling_table(n, r):
    """Row n of the r-Stirling triangle from {n,k}_r = {n-1,k-1}_r + (k+r){n-1,k}_r."""
    if n == 0:
        return (1,)
    prev = r_stirling_table(n - 1, r) + (0,)
    return tuple((prev[k - 1] if k else 0) + (k + r) * prev[k] for k in range(n + 1))


def brute_bell_number(n):
    return sum(r_partition_counts(n, 0))


def set_partitions(items):
    """All set partitions of a list, as lists of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


@pytest.fixture(params=BUILTIN_DISTS)
def provider(request):
    return make_provider(request.param)


@pytest.fixture
def fresh_caches():
    probbell.clear_caches()
    yield
    probbell.clear_caches()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
