import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from rank1lab.origami import Origami, is_transitive  # noqa: E402


@st.composite
def origamis(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    h = tuple(draw(st.permutations(range(n))))
    v = tuple(draw(st.permutations(range(n))))
    if not is_transitive(h, v):
        # glue everything into one horizontal cycle to force transitivity
        h = tuple((i + 1) % n for i in range(n))
    return Origami(h, v)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("RANK1LAB_CACHE_DIR", str(d))
    return d
