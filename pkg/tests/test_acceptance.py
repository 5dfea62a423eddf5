"""Acceptance battery: every headline claim at its stated scale.

One test per criterion, full sample sizes, one printed pass/fail line
each.  These are the exit criteria of the build; nothing here is scaled
down beyond the documented exhaustive-range caps.
"""

from __future__ import annotations

import pytest

from cubesep.config import Config
from cubesep.selftest import CRITERIA

CFG = Config()


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__.lstrip("_"))
def test_acceptance_criterion(criterion):
    row = criterion(CFG, quick=False, seed=CFG.seed)
    status = "PASS" if row.passed else "FAIL"
    print(f"[{status}] {row.name}: expected {row.expected}; "
          f"computed {row.computed} ({row.seconds:.2f}s)")
    assert row.passed, f"{row.name}: {row.computed} (expected {row.expected})"


def test_selftest_cli_reports_all_criteria(capsys):
    # quick mode exercises the same battery end to end through the CLI
    from cubesep.cli import main

    code = main(["selftest", "--quick"])
    out = capsys.readouterr().out
    assert code == 0, out
    assert out.count("PASS") == len(CRITERIA)
    assert "FAIL" not in out
