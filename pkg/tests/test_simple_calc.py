import pytest
from hypothesis import given, settings

from rbl.algebra import rbas_upto, sequent_valid
from rbl.kripke import model_bank
from rbl.sexpr import SexprError
from rbl.simple_calc import (SimpleDerivation, SystemId, check_simple, equivalence_witnesses, from_sexpr, ident,
                             leaf, r1, rc_from_tr, sample_derivations, seq, to_sexpr, top1_from_wl, top2_from_wr,
                             tr_from_rc, wl_from_top1, wr_from_top2)
from rbl.syntax import SimpleSequent, parse_formula
from rbl.ternary import check_srbl_soundness

from strategies import bpl_formulas, formulas

F = parse_formula
SRBL, SSTAR = SystemId.SRBL, SystemId.SStarRBL


def test_identity_in_both_systems():
    d = leaf("Id", F("p"), F("p"))
    assert check_simple(d, SRBL) and check_simple(d, SSTAR)


def test_system_separation():
    rc = leaf("RC", F("p * q"), F("(p * q) * q"))
    assert check_simple(rc, SRBL)
    assert not check_simple(rc, SSTAR)
    tr = leaf("Tr", F("(p -> q) & (q -> r)"), F("p -> r"))
    assert check_simple(tr, SSTAR)
    assert not check_simple(tr, SRBL)


def test_r1_over_identity():
    d = r1(ident(F("p * q")))
    assert d.conclusion == SimpleSequent(F("q"), F("p -> p * q"))
    assert check_simple(d, SRBL)


def test_bad_nodes_are_located():
    bad = SimpleDerivation(seq(F("q"), F("p -> q")), "R1", (leaf("Id", F("p * q"), F("p * q")),))
    res = check_simple(bad, SRBL)
    assert not res and res.path == () and res.rule == "R1"
    deep = SimpleDerivation(seq(F("p"), F("p | q")), "OrR1", (leaf("Bot", F("p"), F("p")),))
    assert check_simple(deep, SRBL).path == (0,)
    assert not check_simple(SimpleDerivation(seq(F("p"), F("p")), "Id", (ident(F("p")),)), SRBL)
    assert not check_simple(leaf("Nope", F("p"), F("p")), SRBL)


def test_witness_shapes():
    ws = equivalence_witnesses()
    assert len(ws) == 6
    a, b, c = F("A"), F("B"), F("C")
    got = {(sys, d.conclusion) for sys, d in ws}
    assert got == {
        (SRBL, SimpleSequent(F("top"), F("A -> A"))),
        (SRBL, SimpleSequent(a, F("top -> A"))),
        (SRBL, SimpleSequent(F("(A -> B) & (B -> C)"), F("A -> C"))),
        (SSTAR, SimpleSequent(F("A * top"), a)),
        (SSTAR, SimpleSequent(F("top * A"), a)),
        (SSTAR, SimpleSequent(F("A * B"), F("(A * B) * B"))),
    }
    assert b != c


@pytest.mark.parametrize("i", range(6))
def test_witnesses_check(i):
    sys, d = equivalence_witnesses()[i]
    assert check_simple(d, sys)


@pytest.mark.parametrize("sys", [SRBL, SSTAR])
def test_samples_check_and_are_algebraically_sound(sys):
    algs = rbas_upto(3)
    ds = sample_derivations(sys)
    assert len(ds) >= 30
    for d in ds:
        assert check_simple(d, sys)
        c = d.conclusion
        assert all(sequent_valid(a, c.lhs, c.rhs) for a in algs)


def test_sstar_samples_are_sound_in_lifted_models():
    seqs = [d.conclusion for d in sample_derivations(SSTAR)]
    bank = model_bank(3, 2)
    assert all(check_srbl_soundness(bank.model(i, ["p", "q"]), seqs) for i in range(len(bank)))


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=4, atom_names=("p", "q")), formulas(max_leaves=4, atom_names=("p", "q")),
       formulas(max_leaves=3, atom_names=("p", "q")))
def test_witness_constructions_at_any_formula(a, b, c):
    srbl = [top1_from_wl(a), top2_from_wr(a), tr_from_rc(a, b, c)]
    sstar = [wl_from_top1(a), wr_from_top2(a), rc_from_tr(a, b)]
    algs = rbas_upto(3)
    for sys, ds in ((SRBL, srbl), (SSTAR, sstar)):
        for d in ds:
            assert check_simple(d, sys)
            assert all(sequent_valid(alg, d.conclusion.lhs, d.conclusion.rhs) for alg in algs)


@settings(max_examples=60, deadline=None)
@given(bpl_formulas(max_leaves=5))
def test_top2_is_sound_on_bpl_formulas_in_lifted_models(a):
    d = wr_from_top2(a)
    bank = model_bank(2, 2)
    assert all(check_srbl_soundness(bank.model(i, ["p", "q"]), [d.conclusion]) for i in range(len(bank)))


@pytest.mark.parametrize("sys", [SRBL, SSTAR])
def test_sexpr_round_trip(sys):
    for d in sample_derivations(sys):
        assert from_sexpr(to_sexpr(d)) == d


@pytest.mark.parametrize("bad", ["(Id)", "Id", "(Id \"p => p\"", "((Id \"p => p\"))"])
def test_bad_sexpr(bad):
    with pytest.raises(SexprError):
        from_sexpr(bad)
