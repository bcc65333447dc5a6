import pytest

from partition_harmonics.report import VerificationReport
from partition_harmonics.verify import (
    SUITES,
    all_passed,
    build_suite,
    resolve_threads,
    run_checks,
    run_suite,
)


def test_report_summary_and_failures():
    r = VerificationReport("demo", {"s": 3})
    r.add("ok", 1, 1)
    r.add("bad", 2, 3)
    assert not r.passed
    assert [c.label for c in r.failures] == ["bad"]
    assert r.summary().startswith("FAIL demo s=3")
    assert r.to_dict()["checks"][1] == {"label": "bad", "expected": 2, "actual": 3, "passed": False}


@pytest.mark.parametrize("name", SUITES)
def test_suites_pass_small(name):
    reports = run_suite(name, max_s=6)
    assert reports
    assert all_passed(reports), [r.summary() for r in reports if not r.passed]


def test_all_suite_is_union():
    total = sum(len(build_suite(name, 5)) for name in SUITES)
    assert len(build_suite("all", 5)) == total


def test_alias_resolves():
    assert len(build_suite("section4", 5)) == len(build_suite("factorisation", 5))


def test_unknown_suite():
    with pytest.raises(ValueError):
        build_suite("nope")


def test_thread_env_override(monkeypatch):
    monkeypatch.setenv("PH_THREADS", "3")
    assert resolve_threads(1) == 3
    monkeypatch.delenv("PH_THREADS")
    assert resolve_threads(None) == 1


def test_order_preserved_across_threads():
    checks = build_suite("kernel", 10)
    one = [r.to_dict() for r in run_checks(checks, 1)]
    many = [r.to_dict() for r in run_checks(checks, 4)]
    assert one == many
