"""The ten acceptance criteria, one PASS/FAIL line each.

Lines are printed in the pytest terminal summary; running this file directly
prints them as they finish.
"""
import pytest

from tropsection.acceptance import CRITERIA, run_one

VERDICTS: list = []


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA])
def test_criterion(number):
    verdict = run_one(number, seed=0)
    VERDICTS.append(verdict)
    print(verdict.line())
    assert verdict.passed, verdict.line()


if __name__ == "__main__":
    for n, *_ in CRITERIA:
        print(run_one(n).line(), flush=True)
