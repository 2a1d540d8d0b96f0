"""Mix elimination and proof serialization."""

from collections import Counter

import pytest
from hypothesis import assume, given, settings

from rbl.lrbl import MalformedProof, ProofTree, Proved, SearchConfig, check_proof, prove
from rbl.lrbl.mix import cut_to_mix, eliminate_mix
from rbl.lrbl.serialize import from_sexpr, to_sexpr
from rbl.sexpr import SexprError
from rbl.syntax import Leaf, OMeet, Prop, Sequent, parse_sequent

from cut_corpus import SPECS, build_corpus, cut, proof_of
from golden_cases import PROOFS
from strategies import formulas

CORPUS = build_corpus()
FAST = SearchConfig(depth_bound=8, time_limit=3.0)


def test_corpus_shape():
    assert len(CORPUS) >= 20
    assert all(check_proof(t) for t in CORPUS)
    assert all(not t.is_cut_free() for t in CORPUS)
    assert any(t.rule == "Mix" for t in CORPUS)


@pytest.mark.parametrize("i", range(len(SPECS) + 2))
def test_eliminate_corpus(i):
    t = CORPUS[i]
    out = eliminate_mix(t)
    assert out.conclusion == t.conclusion
    assert out.is_cut_free()
    assert check_proof(out)


def test_every_case_is_exercised():
    stats = Counter()
    for t in CORPUS:
        eliminate_mix(t, stats)
    # principal reductions for each connective
    for key in ("and", "or", "prod", "rimp", "limp"):
        assert stats[key] > 0, key
    # the non-principal and axiom cases
    for key in ("push_right", "push_left", "right_id", "left_id", "right_top", "left_bot"):
        assert stats[key] > 0, key


def test_cut_to_mix_equivalent():
    for t in CORPUS[:8]:
        m = cut_to_mix(t)
        assert "Cut" not in m.rules_used()
        assert check_proof(m)
        assert eliminate_mix(m).conclusion == t.conclusion


def test_cut_free_unchanged():
    t = proof_of("top |- p & (p -> q) -> (top -> q)")
    assert eliminate_mix(t) is t


def test_rejects_bad_input():
    leaf = ProofTree(parse_sequent("p |- p"), "Id")
    bad = ProofTree(parse_sequent("p , q |- p"), "W1_prod", "", (leaf,))
    with pytest.raises(MalformedProof):
        eliminate_mix(bad)


def test_rejects_extended_profile():
    t = prove("p & (p -> q) |- q", SearchConfig(profile="lj")).proof
    with pytest.raises(MalformedProof):
        eliminate_mix(t)


def test_golden_elimination():
    for i, t in enumerate(CORPUS):
        assert (PROOFS / f"cut_{i:02d}.proof").read_text() == to_sexpr(t)
        assert (PROOFS / f"cut_{i:02d}.elim.proof").read_text() == to_sexpr(eliminate_mix(t))


@settings(max_examples=40, deadline=None)
@given(formulas(4, ("p", "q")), formulas(4, ("p", "q")), formulas(4, ("p", "q")))
def test_eliminate_random_cuts(a, b, c):
    left = prove(Sequent(Leaf(a), b), FAST)
    right = prove(Sequent(OMeet(Leaf(b), Leaf(Prop("r"))), c), FAST)
    assume(isinstance(left, Proved) and isinstance(right, Proved))
    t = cut(left.proof, right.proof, "L")
    out = eliminate_mix(t)
    assert out.conclusion == Sequent(OMeet(Leaf(a), Leaf(Prop("r"))), c)
    assert out.is_cut_free() and check_proof(out)


@settings(max_examples=30, deadline=None)
@given(formulas(4, ("p", "q")), formulas(4, ("p", "q")))
def test_eliminate_random_mixes(a, b):
    # mix into both copies of a contracted meet
    left = prove(Sequent(Leaf(a), b), FAST)
    right = prove(Sequent(OMeet(Leaf(b), Leaf(b)), b), FAST)
    assume(isinstance(left, Proved) and isinstance(right, Proved))
    t = cut(left.proof, right.proof, ("L", "R"))
    out = eliminate_mix(t)
    assert out.conclusion == Sequent(OMeet(Leaf(a), Leaf(a)), b)
    assert out.is_cut_free() and check_proof(out)


# -- serialization ----------------------------------------------------------


@pytest.mark.parametrize("path", sorted(PROOFS.glob("*.proof")), ids=lambda p: p.name)
def test_round_trip(path):
    text = path.read_text()
    t = from_sexpr(text)
    assert to_sexpr(t) == text
    assert check_proof(t)


def test_axiom_goldens_are_reproducible():
    from golden_cases import AXIOM_INSTANCES
    for i, text in enumerate(AXIOM_INSTANCES, 1):
        v = prove(parse_sequent(f"top |- {text}"))
        assert (PROOFS / f"axiom_{i:02d}.proof").read_text() == to_sexpr(v.proof)


def test_mix_paths_serialize():
    t = next(t for t in CORPUS if t.rule == "Mix")
    assert '"L|R"' in to_sexpr(t) or "|" in to_sexpr(t).split("\n")[0]
    assert from_sexpr(to_sexpr(t)) == t


@pytest.mark.parametrize("text,err", [
    ('(Id "" "p |- p"', SexprError),
    ('(Id "X" "p |- p")', MalformedProof),
    ('(Id "L|R" "p |- p")', MalformedProof),
    ('(Id "")', SexprError),
    ('(Magic "" "p |- p")', MalformedProof),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        from_sexpr(text)


def test_parse_error_in_sequent():
    from rbl.syntax import ParseError
    with pytest.raises(ParseError):
        from_sexpr('(Id "" "p |-")')
