from __future__ import annotations

from pathlib import Path

import pytest

from demo import build_demo
from gitfixture import RepoBuilder


@pytest.fixture()
def builder(tmp_path: Path) -> RepoBuilder:
    return RepoBuilder(tmp_path / "repo")


@pytest.fixture()
def demo(tmp_path: Path) -> RepoBuilder:
    return build_demo(tmp_path / "repo")


@pytest.fixture()
def demo_fixed(tmp_path: Path) -> RepoBuilder:
    return build_demo(tmp_path / "repo", with_fix=True)


# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key} {detail}")
