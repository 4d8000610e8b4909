"""Acceptance gate: every shipped criterion at its stated tolerance.

Criteria 1 through 9 run through the shared self-check implementations;
criterion 10 exercises the CLI selftest end to end and compares report
bytes across repeated seeded runs.  Each test prints one PASS/FAIL line.
"""

import json

import pytest

from jackbessel.selfcheck import CRITERIA

SEED = 7


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"criterion {result.number} ({result.name}): {status}  {result.details}")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number](SEED)
    _report(result)
    assert result.passed, result.details


def test_criterion_10_selftest_determinism(tmp_path, capsys):
    from jackbessel.cli import main

    paths = [tmp_path / "run1.json", tmp_path / "run2.json"]
    for path in paths:
        code = main(["selftest", "--seed", str(SEED), "--out", str(path)])
        assert code == 0
    blob1 = paths[0].read_bytes()
    blob2 = paths[1].read_bytes()
    identical = blob1 == blob2
    print(f"criterion 10 (selftest-determinism): {'PASS' if identical else 'FAIL'}  "
          f"bytes={len(blob1)}")
    assert identical
    report = json.loads(blob1)
    assert report["passed"] is True
    assert report["elapsed_ms"] is None
