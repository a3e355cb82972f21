"""One test per acceptance criterion; each prints a single pass/fail line."""

import pytest

from farey_lab.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number](0)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.number == number
    assert result.passed, result.detail
