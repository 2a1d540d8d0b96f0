import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbl.kripke import (BplModel, Countermodel, InvalidWorld, LanguageError, ValidUpTo, bpl_valid_upto,
                        check_bpl_model, eval_bpl, point_extension, transitive_relations, truth_set)
from rbl.syntax import Prod, Prop, parse_formula

from strategies import bpl_formulas, bpl_models

p, q = Prop("p"), Prop("q")
DDAGGER = parse_formula("p & (p -> q) -> q")
DAGGER = parse_formula("p & (p -> q) -> (top -> q)")


def model(n, rel, **val):
    return BplModel(n, frozenset(rel), val)


def test_well_formed_chain():
    assert check_bpl_model(model(2, {(0, 1)}, p={0, 1})) == []


def test_transitivity_violation():
    bad = check_bpl_model(model(3, {(0, 1), (1, 2)}))
    assert [v.kind for v in bad] == ["transitivity"]
    assert bad[0].witness == ((0, 1), (1, 2), (0, 2))


def test_persistency_violation():
    bad = check_bpl_model(model(2, {(0, 1)}, p={0}))
    assert [(v.kind, v.witness) for v in bad] == [("persistency", ("p", 0, 1))]


def test_implication_looks_at_successors_only():
    one = model(1, set(), p={0})
    assert eval_bpl(one, 0, parse_formula("p -> q"))
    assert eval_bpl(one, 0, DDAGGER)
    # the sequent form fails at the same point
    assert eval_bpl(one, 0, parse_formula("p & (p -> q)")) and not eval_bpl(one, 0, q)
    chain = model(2, {(0, 1)}, p={0, 1}, q={1})
    assert eval_bpl(chain, 0, parse_formula("p -> q"))


def test_language_error():
    with pytest.raises(LanguageError):
        eval_bpl(model(1, set()), 0, Prod(p, q))


def test_unknown_atom_is_false():
    assert not eval_bpl(model(1, set()), 0, Prop("zz"))


def test_valid_upto_examples():
    assert isinstance(bpl_valid_upto(parse_formula("p -> (q -> p)"), 3), ValidUpTo)
    assert isinstance(bpl_valid_upto(DAGGER, 4), ValidUpTo)
    cm = bpl_valid_upto(DDAGGER, 3)
    assert isinstance(cm, Countermodel)
    assert not eval_bpl(cm.model, cm.world, DDAGGER)
    assert check_bpl_model(cm.model) == []


def test_countermodel_is_the_two_chain():
    cm = bpl_valid_upto(DDAGGER, 4)
    assert cm.model.worlds == 2 and cm.model.rel == {(0, 1)}
    assert cm.model.val["p"] == {1} and cm.model.val["q"] == set()


def test_transitive_relation_counts():
    # labelled transitive relations: 1, 2, 13, 171 (OEIS A006905)
    assert [len(transitive_relations(n, up_to_iso=False)) for n in range(4)] == [1, 2, 13, 171]


def test_point_extension_examples():
    m2, x = point_extension(model(1, set()), 0)
    assert (m2.worlds, x, m2.rel) == (2, 1, {(1, 0)})
    m3, x = point_extension(model(2, {(0, 1)}, p={0, 1}), 0)
    assert m3.rel == {(x, 0), (x, 1), (0, 1)}
    assert x in m3.val["p"] and check_bpl_model(m3) == []
    with pytest.raises(InvalidWorld):
        point_extension(model(1, set()), 3)


def test_json_round_trip():
    m = model(2, {(0, 1)}, p={1})
    assert BplModel.from_json(m.to_json()) == m


@settings(max_examples=200)
@given(bpl_models(), bpl_formulas())
def test_truth_is_persistent(m, f):
    assert check_bpl_model(m) == []
    ts = truth_set(m, f)
    assert all(b in ts for a, b in m.rel if a in ts)


@settings(max_examples=150)
@given(bpl_models(), bpl_formulas(), st.data())
def test_point_extension_preserves_truth(m, f, data):
    x = data.draw(st.integers(0, m.worlds - 1))
    m2, _ = point_extension(m, x)
    assert check_bpl_model(m2) == []
    assert eval_bpl(m, x, f) == eval_bpl(m2, x, f)


@settings(max_examples=60, deadline=None)
@given(bpl_formulas(max_leaves=6))
def test_valid_upto_is_monotone(f):
    for n in (1, 2, 3):
        if isinstance(bpl_valid_upto(f, n), Countermodel):
            assert isinstance(bpl_valid_upto(f, n + 1), Countermodel)
