import json
from fractions import Fraction

import pytest

from genforms import gforms
from genforms.suites import FAMILIES, SUITES, SuiteConfig, Trial, run_suite


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig("nosuch")
    with pytest.raises(ValueError):
        SuiteConfig("wedge", trials=0)
    with pytest.raises(ValueError):
        SuiteConfig("wedge", n=0)
    with pytest.raises(ValueError):
        SuiteConfig("wedge", k=0)
    assert SuiteConfig("all").families() == SUITES
    assert set(SUITES) == set(FAMILIES)


def test_trial_streams_are_independent():
    config = SuiteConfig("wedge", seed=3)
    a = Trial(config, "wedge.unit", 5).gen.rational()
    b = Trial(config, "wedge.unit", 5).gen.rational()
    assert a == b
    draws = {Trial(config, "wedge.unit", i).gen.rng.random() for i in range(20)}
    assert len(draws) == 20


def test_degree_sweep_covers_all_pairs():
    config = SuiteConfig("wedge", n=2)
    pairs = {(Trial(config, "x", i).p, Trial(config, "x", i).q) for i in range(16)}
    assert pairs == {(p, q) for p in range(-1, 3) for q in range(-1, 3)}


def test_reports_are_reproducible():
    config = SuiteConfig("lie-hat", n=2, k=Fraction(-1, 2), seed=11, trials=8)
    a, b = run_suite(config), run_suite(config)
    assert a.to_text() == b.to_text()
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_parallel_matches_serial():
    config = SuiteConfig("all", n=2, seed=5, trials=6)
    assert run_suite(config, jobs=3).to_json() == run_suite(config).to_json()


def test_json_schema():
    doc = run_suite(SuiteConfig("commutator", trials=3)).to_json()
    assert doc["suite"] == "commutator" and doc["seed"] == 0 and doc["trials"] == 3
    assert doc["failures"] == []
    assert doc["properties"]["commutator.antisymmetry"] == {"trials": 3, "failures": 0}


def test_sign_error_is_caught(monkeypatch):
    # flip the sign in the v0 term of the contraction
    monkeypatch.setattr(gforms, "tau", lambda p: -(p if (p - 1) % 2 == 0 else -p))
    # -tau satisfies the same linear identities; the fixed-sign formulas catch it
    report = run_suite(SuiteConfig("all", n=2, seed=1, trials=10))
    assert report.exit_code == 1
    broken = {r.key for r in report.results if not r.ok}
    assert "defects.anticommutation_defect" in broken
    failure = report.failures[0]
    assert {"trial", "property", "lhs", "rhs", "instance"} <= set(failure)
    assert failure["lhs"] != failure["rhs"]
    text = report.to_text()
    assert "counterexample" in text and "RESULT FAIL" in text


def test_wrong_hat_is_caught(monkeypatch):
    real = gforms.glie_hat_vec

    def skewed(v, w):
        out = real(v, w)
        return gforms.GenVec(out.v1, out.v0 + v.v0)

    monkeypatch.setattr(gforms, "glie_hat_vec", skewed)
    import genforms.suites as suites

    monkeypatch.setattr(suites, "glie_hat_vec", skewed, raising=False)
    report = run_suite(SuiteConfig("lie-hat", n=2, seed=2, trials=10))
    assert not report.ok


def test_nonlinearity_skipped_in_one_dimension():
    report = run_suite(SuiteConfig("defects", n=1, trials=3))
    assert report.ok
