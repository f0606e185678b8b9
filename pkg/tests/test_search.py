from __future__ import annotations

import json

import oracles
import pytest
from conftest import instances
from hypothesis import given

from relfix import fix
from relfix.core import EndoMap
from relfix.search import (
    THEOREMS,
    Conjecture,
    Instance,
    atom_kind,
    evaluate_atom,
    find_counterexample,
    is_atom,
    validate_refutation,
    verify_theorem,
    verify_theorems,
)

STRICT_FP = Conjecture("a", ("complete(all)", "monotone", "inflationary"), "exists_strict_fp")
LEAST_FP = Conjecture("b", ("complete(all)", "reflexive", "transitive", "antisymmetric", "inflationary"),
                      "exists_least_fp")
LEAST_QFP = Conjecture("c", ("complete(all)", "monotone"), "exists_least_qfp")
KLEENE = Conjecture("d", ("complete(omega)", "has_bottom", "omega_continuous"), "kleene_sups_are_least_qfps")


def test_atom_catalog():
    assert atom_kind("transitive") == "relation"
    assert atom_kind("complete(Directed)") == "relation"
    assert atom_kind("scott_continuous") == "map"
    assert atom_kind("has_bottom") == "bottom"
    assert atom_kind("qfp_set_complete(connex)") == "conclusion"
    assert not is_atom("complete(finite)")
    assert not is_atom("monotone(x)")
    assert not is_atom("exists_fp")


def test_conjecture_validation():
    with pytest.raises(ValueError, match="has_bottom"):
        Conjecture("k", ("omega_continuous",), "kleene_sups_are_least_qfps")
    with pytest.raises(ValueError, match="concluded"):
        Conjecture("k", ("exists_qfp",), "monotone")
    assert Conjecture("k", ("complete(All)",), "exists_qfp").assume == ("complete(all)",)


def test_strict_fp_refuted_by_swap():
    r = find_counterexample(STRICT_FP, 2)
    assert r.verdict == "refuted"
    inst = r.instance
    assert inst.R.n == 2 and inst.R.rows == (0b11, 0b11) and inst.f.target == (1, 0)
    assert r.counts[1]["mode"] == "exhaustive"


def test_least_fp_refuted_at_four():
    r = find_counterexample(LEAST_FP, 4)
    assert r.verdict == "refuted" and r.instance.R.n == 4


def test_least_qfp_refuted_within_four():
    r = find_counterexample(LEAST_QFP, 4)
    assert r.verdict == "refuted" and r.instance.R.n <= 4


def test_kleene_refuted_at_three():
    r = find_counterexample(KLEENE, 3)
    assert r.verdict == "refuted" and r.instance.R.n == 3
    assert r.instance.bot is not None


def test_exhaustion_reported():
    r = find_counterexample(LEAST_FP, 3)
    assert r.verdict == "no-counterexample" and r.instance is None
    assert all(c["mode"] == "exhaustive" for c in r.counts.values())


def test_refutations_revalidate():
    for c, n in [(STRICT_FP, 2), (LEAST_FP, 4), (LEAST_QFP, 4), (KLEENE, 3)]:
        inst = find_counterexample(c, n).instance
        assert validate_refutation(c, inst)
        R, f = inst.R, inst.f.target
        if c is KLEENE:
            assert oracles.sups(R, oracles.iterates(f, inst.bot)) != oracles.least(R, oracles.qfps(R, f))


def test_sampled_search_is_deterministic():
    r1 = find_counterexample(LEAST_QFP, 4, budget=2000, seed=3)
    r2 = find_counterexample(LEAST_QFP, 4, budget=2000, seed=3)
    assert r1.counts[4]["mode"] == "sampled"
    assert r1.to_json() == r2.to_json()


def test_parallel_search_matches_serial():
    serial = find_counterexample(LEAST_QFP, 4, jobs=1)
    parallel = find_counterexample(LEAST_QFP, 4, jobs=2)
    assert json.dumps(serial.to_json()) == json.dumps(parallel.to_json())


@given(instances(max_n=3))
def test_conclusion_atoms_match_oracle(inst):
    R, f = inst
    t = f.target
    I = Instance(R, f)
    fixed, q = oracles.fixed_points(R, t), oracles.qfps(R, t)
    assert evaluate_atom("exists_strict_fp", I) == bool(fixed)
    assert evaluate_atom("exists_qfp", I) == bool(q)
    assert evaluate_atom("exists_least_fp", I) == bool(oracles.least(R, fixed))
    assert evaluate_atom("exists_least_qfp", I) == bool(oracles.least(R, q))
    for cls in ("all", "well"):
        want = all(oracles.least(R, oracles.upper_bounds(R, X) & q)
                   for X in oracles.all_subsets(q) if oracles.in_class(R, X, cls))
        assert evaluate_atom(f"qfp_set_complete({cls})", I) == want


def test_theorem_catalog():
    names = [t.name for t in THEOREMS]
    assert len(names) == len(set(names)) == 16


def test_trivial_sizes_verified():
    for r in verify_theorems(1):
        assert r.verdict == "verified", r.violations
        assert set(r.counts) == {0, 1}


def test_mutated_engine_is_caught(monkeypatch):
    real = fix.least_fp_mono

    def wrong(R, f, check=True, trace=None):
        p = real(R, f, check=check, trace=trace)
        above = [q for q in range(R.n) if f.target[q] == q and q != p]
        return above[0] if above else p

    monkeypatch.setattr(fix, "least_fp_mono", wrong)
    th = next(t for t in THEOREMS if t.name == "mono_imp_ex_least_fp")
    r = verify_theorem(th, 3)
    assert r.verdict == "violated" and r.violations
    assert "least_fp_mono" in r.violations[0]["message"]


def test_mutated_sm_engine_is_caught(monkeypatch):
    monkeypatch.setattr(fix, "sm_qfp", lambda R, f, check=True, trace=None: next(
        (x for x in range(R.n) if not R.sim(x, f.target[x])), 0))
    th = THEOREMS[0]
    assert verify_theorem(th, 2).verdict == "violated"


def test_report_json_omits_timing_by_default():
    r = find_counterexample(STRICT_FP, 2)
    assert "millis" not in r.to_json()
    assert "millis" in r.to_json(timing=True)


def test_instance_json():
    inst = Instance(*_swap(), bot=0)
    assert inst.to_json() == {
        "size": 2, "elements": ["a1", "a2"],
        "le": [["a1", "a1"], ["a1", "a2"], ["a2", "a1"], ["a2", "a2"]],
        "map": {"a1": "a2", "a2": "a1"}, "bottom": "a1",
    }


def _swap():
    from relfix.core import related_set_from_code
    return related_set_from_code(2, 15), EndoMap((1, 0))
