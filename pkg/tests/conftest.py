from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import settings

from codesparse.gf2 import LinearCode, random_code

# first calls into the compiled kernels include JIT/cache loading
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def span_bruteforce(code: LinearCode) -> set[int]:
    """All codewords as ints, by XOR-ing every subset of the generator rows."""
    gens = [r.bits for r in code.generators.rows]
    out = set()
    for pick in itertools.product((0, 1), repeat=len(gens)):
        x = 0
        for g, b in zip(gens, pick):
            if b:
                x ^= g
        out.add(x)
    return out


def sparsifier_bruteforce(words, s: int, p: int, q: int) -> bool:
    for c in words:
        cs = sum(1 for i in range(64) if (c >> i) & 1 and (s >> i) & 1)
        if q * cs < p * bin(c).count("1"):
            return False
    return True


def make_corpus(count: int = 200, seed: int = 2024, max_n: int = 14, max_k: int = 7) -> list[LinearCode]:
    rng = np.random.default_rng(seed)
    codes = []
    for _ in range(count):
        n = int(rng.integers(4, max_n + 1))
        k = int(rng.integers(1, min(n, max_k) + 1))
        codes.append(random_code(n, k, rng))
    return codes


@pytest.fixture(scope="session")
def corpus() -> list[LinearCode]:
    return make_corpus()


_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = rep.failed
    if rep.when == "call" or failed:
        prev = _CRITERIA.get(number, (title, "PASS"))[1]
        _CRITERIA[number] = (title, "FAIL" if failed or prev == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
