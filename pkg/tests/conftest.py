import functools

import pytest

from superzeta import primary as pr
from superzeta import zeros as zz

INSTANCES = ("riemann", "dirichlet:-4", "dedekind:-4")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("zero-cache")


@pytest.fixture(scope="session")
def zero_cache(cache_dir):
    """zero_cache(spec, T) -> (P, ZeroCache), located once per session."""

    @functools.lru_cache(maxsize=None)
    def get(spec, T=100.0):
        P = pr.build_primary(spec)
        return P, zz.load_or_locate(P, T, directory=cache_dir)

    return get


@pytest.fixture(autouse=True)
def _isolated_cache_env(cache_dir, monkeypatch):
    monkeypatch.setenv("SUPERZETA_CACHE_DIR", str(cache_dir))


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """record(n, ok, detail): one pass/fail line per acceptance criterion,
    printed immediately and repeated in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(n, ok, detail):
        line = f"AC{n} {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
