from vecapprox.harness import run_selftest
from vecapprox.harness import selftest
from vecapprox.mixed_norm import mixed_norm


def test_all_checks_pass():
    results = run_selftest(0)
    assert [r.name for r in results] == [name for name, _ in selftest.CHECKS]
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_norm_axioms_detect_wrong_inner_exponent(monkeypatch):
    # a norm that ignores u is still homogeneous and subadditive
    monkeypatch.setattr(selftest, "mixed_norm", lambda f, p, u: mixed_norm(f, p, 2))
    passed, detail = selftest.check_norm_axioms(0)
    assert not passed
    assert "flat" in detail


def test_check_exceptions_are_failures(monkeypatch):
    def broken(seed):
        raise RuntimeError("boom")

    monkeypatch.setattr(selftest, "CHECKS", [("broken", broken)])
    results = run_selftest(0)
    assert results == [selftest.CheckResult(name="broken", passed=False, detail="RuntimeError: boom")]
