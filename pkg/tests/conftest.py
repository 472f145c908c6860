from __future__ import annotations

import pytest
from hypothesis import settings

from lquadri import corpus

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def bundle():
    return corpus.all_files()


@pytest.fixture(scope="session")
def lquadri_examples(bundle):
    """Every corpus algebra with four operations, tagged l-quadri."""
    return {n: f.algebra.with_kind("l-quadri") for n, f in bundle.items() if f.algebra.kind in ("l-quadri", "quadri")}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(line(i))
