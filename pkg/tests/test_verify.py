import random

import pytest

from boolgap import corpus, oracle
from boolgap.core import Instance
from boolgap.reductions import ReductionTrace, star_reduction
from boolgap.verify import (GAPS, PROPERTY_NAMES, PropertyReport, TooFewVariables, check_gap_transport,
                            check_solution_preservation, check_weak_base_goldens, gen_instance, golden_matrices,
                            random_pp_formula, random_relation, run_property)

P13 = corpus.language("plus1in3")


def test_generator_is_deterministic():
    a = gen_instance(P13, 6, 5, seed=11)
    b = gen_instance(P13, 6, 5, seed=11)
    assert a == b
    assert gen_instance(P13, 6, 5, seed=12) != a


def test_distinct_scopes():
    for seed in range(30):
        inst = gen_instance(P13, 5, 6, seed, distinct_scope_vars=True)
        assert all(len(set(c.scope)) == 3 for c in inst.constraints)


def test_cover_all_vars():
    for seed in range(30):
        inst = gen_instance(P13, 7, 1, seed, distinct_scope_vars=True, cover_all_vars=True)
        assert {v for c in inst.constraints for v in c.scope} == set(inst.variables)


def test_bot_top_convention():
    cols = corpus.language("cols3")
    inst = gen_instance(cols, 9, 4, seed=1, bot_top_convention=True, planted=1)
    assert inst.bot_top == ("bot", "top") and inst.variables[-2:] == ("bot", "top")
    assert all(c.scope[-2:] == ("bot", "top") for c in inst.constraints)
    # the planted assignment keeps the instance satisfiable
    assert oracle.csp(inst)


def test_too_few_variables():
    with pytest.raises(TooFewVariables):
        gen_instance(P13, 2, 3, seed=0, distinct_scope_vars=True)
    with pytest.raises(TooFewVariables):
        gen_instance(corpus.language("cols3"), 1, 1, seed=0, bot_top_convention=True)


def test_random_objects_are_well_formed():
    rng = random.Random(0)
    r = random_relation(rng, 3)
    assert r.arity == 3 and len(r) >= 1
    phi = random_pp_formula(rng, P13, 2, 1, 2)
    assert phi.arity == 2 and len(phi.atoms) == 2


def test_preservation_checks_pass():
    for name in ("rewrite_ca", "star", "subalgebra"):
        rep = check_solution_preservation(name, trials=20, max_vars=8, seed=1)
        assert rep.passed and rep.trials + rep.skipped == 20, rep.lines()


def test_broken_reduction_is_caught():
    def broken(inst: Instance) -> ReductionTrace:
        trace = star_reduction(inst)
        t = trace.target
        # drop the last constraint: the target gains solutions
        bad = Instance(t.variables, t.template, t.constraints[:-1], t.bot_top)
        return ReductionTrace(trace.name, inst, bad, trace.variable_map, None, None, trace.notes)

    rep = check_solution_preservation("star", trials=20, max_vars=10, seed=2, reduction=broken)
    assert not rep.passed and rep.failures
    assert any(line.startswith("failure: seed=") for line in rep.lines())


@pytest.mark.parametrize("name", sorted(GAPS))
def test_gap_transport_smoke(name):
    rep = check_gap_transport(name, trials=40, max_vars=10, seed=3, quota=1)
    assert not rep.failures, rep.lines()


def test_goldens():
    assert not check_weak_base_goldens("corrected").failures
    literal = check_weak_base_goldens("literal")
    # II0 is read off the printed II1 matrix and inherits its column swap
    assert {f[0] for f in literal.failures} == {"IN2", "II0", "II1", "II", "IN"}
    assert set(golden_matrices("literal")) == set(golden_matrices("corrected"))


def test_report_lines():
    rep = PropertyReport("x", trials=3, hits={"a": 2}, quota=5)
    assert not rep.passed
    assert rep.lines()[:3] == ["property: x", "status: FAIL", "trials: 3"]


def test_registry():
    assert "star-gap" in PROPERTY_NAMES and "galois-soundness" in PROPERTY_NAMES
    assert run_property("diag-family", trials=5, seed=0).trials == 5
    with pytest.raises(KeyError):
        run_property("nope")
