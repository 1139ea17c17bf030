"""Session-wide caches shared by the test modules."""

import time
from functools import lru_cache

from almost_affine.fixtures import load_fixture
from almost_affine.search import enumerate_classes

SIZES = range(3, 11)

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict = {}


@lru_cache(maxsize=None)
def sweep(mode: str) -> tuple:
    """(results by size, seconds by size) for the full 3..10 enumeration,
    computed once per session."""
    results, seconds = {}, {}
    for n in SIZES:
        t = time.perf_counter()
        results[n] = enumerate_classes(n, mode)
        seconds[n] = time.perf_counter() - t
    return results, seconds


@lru_cache(maxsize=None)
def fixture(name: str) -> list:
    return load_fixture(name)


def fixture_matrices(name: str, max_size: int = 10) -> list:
    return [p for e in fixture(name) if e.size <= max_size for p in e.matrices]
