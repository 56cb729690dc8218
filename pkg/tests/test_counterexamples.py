import pytest

from counterexamples import all_counterexamples, check_counterexamples, replay_counterexample
from postulates import FAILS, replay


@pytest.mark.parametrize("case", all_counterexamples(), ids=lambda c: c.id)
def test_fixture_violates_its_postulate(case):
    report = replay_counterexample(case)
    assert report.verdict == FAILS, report.note
    assert report.note == case.id
    assert replay(report, case.operator, case.vocab) == FAILS


def test_every_fixture_is_reported():
    reports = check_counterexamples()
    assert len(reports) == 9
    assert {r.postulate for r in reports} == {"r7", "r8", "c8", "c7b", "r3b", "r4b", "c3b", "c4b"}
