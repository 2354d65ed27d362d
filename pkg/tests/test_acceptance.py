"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from ordalg import selftest
from ordalg.acceptance import CHECKS, run_check


@pytest.mark.parametrize("name,fn,budget", CHECKS, ids=[c[0] for c in CHECKS])
def test_criterion(name, fn, budget, capsys):
    result = run_check(name, fn, budget)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.line()


def test_full_selftest_is_green():
    code, lines = selftest.run("full")
    assert code == 0, "\n".join(lines)
