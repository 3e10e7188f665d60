import json

import pytest

from monores import QQ, Field, VarContext, minimal_betti, strand_betti, twin
from monores import harness
from monores.harness import (
    VerificationReport,
    shrink_witness,
    verify_compression,
    verify_restriction,
    verify_squarefree_bound,
    verify_syzygy_bound,
    verify_twin,
)
from monores.ideal import ideal_from_strings

from conftest import ideal, mono

EX44 = ideal("x^2*y^2*z", "x^2*z^2", "y*z^2")


def variables(n):
    ctx = VarContext.default(n)
    return ideal_from_strings([f"x{j}" for j in range(1, n + 1)], ctx)


def test_t31_suites():
    r = verify_squarefree_bound(4, 8, 1, 60, seed=3)
    assert r.ok and r.attempted == 60
    r = verify_squarefree_bound(5, 8, 0, 40, seed=4, field=Field(2))
    assert r.ok


def test_t31_infeasible():
    with pytest.raises(ValueError):
        verify_squarefree_bound(3, 5, 3, 1, 0)
    with pytest.raises(ValueError):
        verify_squarefree_bound(3, 5, -1, 1, 0)


def test_principal_squarefree_top_degree():
    for n in (3, 4, 5):
        M = ideal_from_strings(["*".join(f"x{j}" for j in range(1, n + 1))], VarContext.default(n))
        assert minimal_betti(M).pd == 1 <= n - (n - 1)


def test_t46_suite_and_examples():
    assert verify_syzygy_bound(3, 6, None, 40, seed=9).ok
    assert minimal_betti(EX44).pd <= 3
    for n in (3, 4):
        assert minimal_betti(variables(n)).pd == n


def test_restriction_examples():
    M = ideal("x*y", "y*z", "x*z")
    r = verify_restriction(M)
    assert r.ok and r.attempted == 1 + 4
    assert strand_betti(M, mono("x*y")) == {1: 1}
    r = verify_restriction(EX44, Field(32003))
    assert r.ok
    assert strand_betti(EX44, mono("x^2*z^2")) == {1: 1}


def test_twin_examples():
    m = EX44.top_lcm()
    assert strand_betti(EX44, m) == strand_betti(twin(EX44), m) == {2: 1}
    for M in (EX44, ideal("x*y", "y*z"), ideal("x^2*y^3")):
        assert verify_twin(M).ok
    assert strand_betti(ideal("x^2*y^3"), mono("x^2*y^3")) == {1: 1}


def test_compression_examples():
    r = verify_compression(EX44)
    assert r.ok
    assert r.failures == []
    for M in (ideal("x*y", "y*z"), ideal("x^4*z")):
        assert verify_compression(M, Field(2)).ok


def test_failure_is_recorded_and_shrunk(monkeypatch):
    real = harness.strand_betti

    def broken(M, m, field=QQ, cap=None):
        out = dict(real(M, m, field, cap))
        if M.q >= 3:
            out[9] = 1
        return out

    monkeypatch.setattr(harness, "strand_betti", broken)
    r = verify_twin(EX44, seed=17)
    assert not r.ok and r.attempted == 2 and r.passed == 1
    f = r.failures[0]
    assert f.seed == 17 and f.field == "q" and "ring x y z" in f.ideal
    assert json.loads(json.dumps(r.to_json()))["failures"][0]["seed"] == 17


def test_randomized_failures_shrink(monkeypatch):
    def fake_pipeline(M, field, cap):
        C, table, problems = real(M, field, cap)
        table.pd = 99 if M.q >= 2 else table.pd
        return C, table, problems

    real = harness._pipeline
    monkeypatch.setattr(harness, "_pipeline", fake_pipeline)
    r = verify_syzygy_bound(3, 6, None, 20, seed=1)
    assert r.failures
    for f in r.failures:
        body = [line for line in f.ideal.splitlines() if line.startswith("gen")]
        assert len(body) == 2


def test_shrink_witness():
    M = ideal("x^2", "y^2", "z^2", "x*y*z")
    small = shrink_witness(M, lambda X: any(g == mono("y^2") for g in X.gens))
    assert small == ideal("y^2")
    assert shrink_witness(M, lambda X: False) == M


def test_report_json_is_reproducible():
    a = verify_squarefree_bound(4, 6, 0, 20, seed=5)
    b = verify_squarefree_bound(4, 6, 0, 20, seed=5)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert "wall_time" not in a.to_json() and "wall_time" in a.to_json(timing=True)


def test_report_merge():
    a, b = VerificationReport("x", 3, 3), VerificationReport("x", 2, 1)
    b.failures.append(harness.Failure("ring 1\ngen x1\n", "q", 0, "never"))
    a.merge(b)
    assert (a.attempted, a.passed, len(a.failures), a.ok) == (5, 4, 1, False)


def test_replay_from_seed():
    ts = harness.trial_seed(5, 7)
    assert harness.squarefree_trial(4, 6, 1, ts) == harness.squarefree_trial(4, 6, 1, ts)
    assert harness.general_trial(4, 6, None, 4, ts) == harness.general_trial(4, 6, None, 4, ts)
