import json

import pytest

from hopfq.algebra import OCTONION_TABLE
from hopfq.checks import CHECKS, check_suite


@pytest.fixture(scope="module")
def report():
    return check_suite(samples=200, seed=5)


def test_all_checks_pass(report):
    failing = [r.name for r in report.results if not r.passed]
    assert failing == []
    assert report.passed
    assert report.max_residual < 1e-9


def test_every_check_reported(report):
    assert [r.name for r in report.results] == [name for name, _, _ in CHECKS]


def test_report_is_json_serializable(report):
    data = json.loads(json.dumps(report.to_json()))
    assert data["passed"] is True
    assert len(data["checks"]) == len(CHECKS)


def test_sample_count_is_honoured():
    small = check_suite(samples=10, seed=0)
    assert all(r.count >= 10 for r in small.results)
    counts = {r.name: r.count for r in small.results}
    assert counts["quaternion_composition"] == 10


@pytest.mark.parametrize("samples", range(1, 120))
def test_epsilon_check_any_sample_count(samples):
    from hopfq.checks import _Context, _epsilon_concurrence

    count, worst = _epsilon_concurrence(_Context(samples, 0, OCTONION_TABLE))
    assert count == samples and worst < 1e-10


def test_corrupted_table_is_detected():
    table = [list(row) for row in OCTONION_TABLE]
    sign, idx = table[1][2]
    table[1][2] = (-sign, idx)
    report = check_suite(samples=50, seed=0, octonion_table=table)
    by_name = {r.name: r for r in report.results}
    assert not by_name["octonion_composition"].passed
    assert not report.passed


def test_rejects_zero_samples():
    with pytest.raises(ValueError):
        check_suite(samples=0)
