"""One line per acceptance criterion; tolerances and limits live in ``tischler.acceptance``."""

import pytest

from tischler import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CHECKS))
def test_criterion(number, capsys):
    verdict = acceptance.run(number, seed=0)
    with capsys.disabled():
        print("\n" + verdict.line)
    assert verdict.passed, verdict.details
