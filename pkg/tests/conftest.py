import pytest

from airtype import _pykernels

try:
    from airtype import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [
    pytest.param(_pykernels, id="python"),
    pytest.param(_ckernels, id="cython", marks=pytest.mark.skipif(_ckernels is None, reason="extension not built")),
]


def pytest_generate_tests(metafunc):
    # plain parametrisation (not a fixture) so hypothesis tests can take it
    if "backend" in metafunc.fixturenames:
        metafunc.parametrize("backend", BACKENDS)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """``acceptance(n, title, ok, detail)`` records and prints one verdict line."""
    lines = request.config.stash[_ACCEPTANCE]

    def report(n, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
