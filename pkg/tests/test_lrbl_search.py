"""Proof search: verdicts, soundness against both semantics, admissible rules."""

import pytest
from hypothesis import assume, given, settings

from rbl.algebra import FiniteRba, eval_in_algebra, rbas_upto, sequent_valid
from rbl.lrbl import (MalformedProof, Proved, Refuted, SearchConfig, Unknown, check_proof, prove, refute,
                      to_sexpr)
from rbl.lrbl.admissible import disjunction_property_probe, semi_assoc_admissible
from rbl.syntax import TOP, And, Leaf, Or, Prod, Prop, RImp, Sequent, mu, parse_formula, parse_sequent
from rbl.ternary import TernaryModel, check_ternary_model, find_lifted_countermodel, sequent_counterstate

from strategies import formulas

p, q = Prop("p"), Prop("q")
CORE = SearchConfig()
FAST = SearchConfig(depth_bound=8, time_limit=3.0)


def assert_refutes(v: Refuted, s: Sequent):
    if isinstance(v.model, TernaryModel):
        assert not check_ternary_model(v.model)
        assert sequent_counterstate(v.model, s) is not None
    else:
        assert isinstance(v.model, FiniteRba)
        lhs = eval_in_algebra(v.model, v.state, mu(s.antecedent))
        rhs = eval_in_algebra(v.model, v.state, s.succedent)
        assert not v.model.leq[lhs, rhs]


@pytest.mark.parametrize("text", [
    "top |- p -> p",
    "top |- p & (p -> q) -> (top -> q)",
    "top , (p & q) |- (top * p) * q",
    "p , (p -> q) |- q",
    "(q <- p) , p |- q",
    "p ; q |- q & p",
    "p * q |- p",
    "top |- (p -> q) & (q -> r) -> (p -> r)",
    "bot |- p",
])
def test_proved_examples(text):
    v = prove(text)
    assert isinstance(v, Proved), v
    assert v.proof.conclusion == parse_sequent(text)
    assert check_proof(v.proof)
    assert v.proof.is_cut_free()


@pytest.mark.parametrize("text", [
    "top |- p & (p -> q) -> q",
    "p & (p -> q) |- q",
    "top |- p",
    "p |- p * p",
    "top |- (p -> q) | (q -> p)",
    "(p -> q) -> p |- p",
    "p , q |- q * p",
])
def test_refuted_examples(text):
    s = parse_sequent(text)
    v = prove(s)
    assert isinstance(v, Refuted), v
    assert_refutes(v, s)


def test_ddagger_countermodel_is_small():
    v = prove("top |- p & (p -> q) -> q", SearchConfig(countermodel_size=4))
    assert isinstance(v, Refuted) and isinstance(v.model, TernaryModel)
    assert v.model.states <= 4
    assert v.base is not None and v.base.worlds <= 2


def test_profiles_separate_ddagger():
    s = "p & (p -> q) |- q"
    assert isinstance(prove(s), Refuted)
    for profile in ("lj", "top-imp"):
        v = prove(s, SearchConfig(profile=profile))
        assert isinstance(v, Proved), profile
        assert check_proof(v.proof, profile)
        assert not check_proof(v.proof, "core")


def test_exchange_needs_lj():
    # the lifted product keeps its second factor at an earlier world
    v = prove("p , q |- q * p")
    assert isinstance(v, Refuted) and isinstance(v.model, TernaryModel)
    w = prove("p , q |- q * p", SearchConfig(profile="lj"))
    assert isinstance(w, Proved) and check_proof(w.proof, "lj")


def test_top_imp_uses_the_axiom():
    v = prove("top -> p |- p", SearchConfig(profile="top-imp"))
    assert isinstance(v, Proved) and "TopImpAxiom" in v.proof.rules_used()
    assert isinstance(prove("top -> p |- p"), Refuted)


def test_left_residual_refuted_by_algebra():
    # lifted models are unsound with <-, so the witness has to be an algebra
    s = parse_sequent("p <- q |- p")
    v = prove(s)
    assert isinstance(v, Refuted) and isinstance(v.model, FiniteRba)
    assert_refutes(v, s)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(profile="classical")
    with pytest.raises(ValueError):
        SearchConfig(depth_bound=0)
    with pytest.raises(ValueError):
        SearchConfig(contraction_budget=-1)


def test_unknown_at_low_depth():
    # needs several choice moves; depth 1 and no countermodels cannot settle it
    cfg = SearchConfig(depth_bound=1, countermodel_size=0, prune=False)
    v = prove("top |- (p -> q) & (q -> r) -> (p -> r)", cfg)
    assert isinstance(v, Unknown) and not v
    assert v.report["reason"]


def test_time_limit_gives_unknown():
    cfg = SearchConfig(countermodel_size=0, prune=False, time_limit=0.0)
    v = prove("top |- (p -> q) & (q -> r) -> (p -> r)", cfg)
    assert isinstance(v, Unknown) and v.report["reason"] == "time limit"


def test_deterministic_output():
    s = "top |- p & (p -> q) -> (top -> q)"
    assert to_sexpr(prove(s).proof) == to_sexpr(prove(s).proof)


def test_refute_none_on_theorem():
    assert refute(parse_sequent("top |- p -> p"), CORE) is None


# -- soundness properties -------------------------------------------------

ALGS3 = rbas_upto(3)


@settings(max_examples=80, deadline=None)
@given(formulas(5, ("p", "q")), formulas(5, ("p", "q")))
def test_proved_is_algebra_valid(a, b):
    v = prove(Sequent(Leaf(a), b), FAST)
    if isinstance(v, Proved):
        assert check_proof(v.proof)
        for alg in ALGS3:
            assert sequent_valid(alg, a, b)
    elif isinstance(v, Refuted):
        assert_refutes(v, Sequent(Leaf(a), b))


@settings(max_examples=80, deadline=None)
@given(formulas(6, ("p", "q"), ops=(And, Or, Prod, RImp)))
def test_proved_has_no_lifted_countermodel(f):
    s = Sequent(Leaf(TOP), f)
    v = prove(s, FAST)
    if isinstance(v, Proved):
        assert find_lifted_countermodel(s, 4) is None
    elif isinstance(v, Refuted):
        assert_refutes(v, s)


@settings(max_examples=60, deadline=None)
@given(formulas(4, ("p", "q")), formulas(4, ("p", "q")))
def test_deduction_to_top(a, b):
    # a proof of B => A gives one of top => B -> A
    v = prove(Sequent(Leaf(b), a), FAST)
    assume(isinstance(v, Proved))
    w = prove(Sequent(Leaf(TOP), RImp(b, a)), FAST)
    assert isinstance(w, Proved)


# -- admissible rules -----------------------------------------------------


def test_semi_assoc_admissible():
    v = prove("(p , q) , r |- (p * q) * r")
    assert isinstance(v, Proved)
    t = semi_assoc_admissible(v.proof)
    assert t.conclusion == parse_sequent("p , (q , r) |- (p * q) * r")
    assert check_proof(t)


def test_semi_assoc_in_context():
    v = prove("s ; ((p , q) , r) |- (p * q) * r")
    assert isinstance(v, Proved)
    t = semi_assoc_admissible(v.proof, "R")
    assert t.conclusion == parse_sequent("s ; (p , (q , r)) |- (p * q) * r")
    assert check_proof(t)


def test_semi_assoc_shape_error():
    v = prove("p , q |- p * q")
    with pytest.raises(MalformedProof):
        semi_assoc_admissible(v.proof)
    with pytest.raises(MalformedProof):
        semi_assoc_admissible(v.proof, "LLL")


def test_disjunction_probe():
    rep = disjunction_property_probe(parse_formula("p -> p"), q)
    assert rep.applies and rep.holds and rep.side == "left"
    rep = disjunction_property_probe(parse_formula("bot"), TOP)
    assert rep.holds and rep.side == "right"
    rep = disjunction_property_probe(p, q)
    assert not rep.applies and rep.holds is None


@settings(max_examples=40, deadline=None)
@given(formulas(4, ("p", "q")), formulas(4, ("p", "q")))
def test_disjunction_property(a, b):
    rep = disjunction_property_probe(a, b, FAST)
    if rep.applies:
        assert rep.holds
