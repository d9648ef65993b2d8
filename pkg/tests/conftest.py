import json
import shutil
from contextlib import contextmanager
from pathlib import Path

import pytest

FIXTURE = Path(__file__).parent / "fixtures" / "corpus"


@pytest.fixture
def corpus_dir(tmp_path):
    """A private copy of the fixture corpus."""
    dst = tmp_path / "corpus"
    shutil.copytree(FIXTURE, dst)
    return dst


@pytest.fixture(scope="session")
def expected():
    return json.loads((FIXTURE / "expected.json").read_text(encoding="utf-8"))


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion's outcome."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    @contextmanager
    def record(number: int, title: str):
        results[number] = ("FAIL", title)
        yield
        results[number] = ("PASS", title)

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title = results[number]
        terminalreporter.write_line(f"{status} {number:2d}. {title}")
