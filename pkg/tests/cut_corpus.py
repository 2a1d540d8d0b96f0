"""Proofs with Cut and Mix built from prover output, for the elimination tests."""

from __future__ import annotations

from rbl.lrbl.rules import ProofTree, make_node
from rbl.lrbl.search import Proved, SearchConfig, prove
from rbl.syntax import Leaf, Sequent, get_at, parse_sequent, replace_at

CFG = SearchConfig(profile="core")


def proof_of(text: str) -> ProofTree:
    v = prove(parse_sequent(text), CFG)
    assert isinstance(v, Proved), text
    return v.proof


def cut(left: ProofTree, right: ProofTree, paths) -> ProofTree:
    """Cut (one path given as a string) or Mix (a tuple of paths)."""
    delta = left.conclusion.antecedent
    g = right.conclusion.antecedent
    many = isinstance(paths, tuple)
    for p in (paths if many else (paths,)):
        assert get_at(g, p) == Leaf(left.conclusion.succedent)
        g = replace_at(g, p, delta)
    concl = Sequent(g, right.conclusion.succedent)
    return make_node(concl, "Mix" if many else "Cut", paths, (left, right))


# (left premise, right premise, paths); the cut formula is the left succedent
SPECS = [
    ("p ; q |- p & q", "p & q |- q & p", ""),
    ("p ; q |- p & q", "(p & q) , r |- q", "L"),
    ("p |- p | q", "p | q |- q | p", ""),
    ("q |- p | q", "r ; (p | q) |- (q | p) & r", "R"),
    ("p , q |- p * q", "p * q |- (p | r) * q", ""),
    ("p , q |- p * q", "r ; (p * q) |- (p * q) | r", "R"),
    ("q |- p -> q", "p , (p -> q) |- q", "R"),
    ("top |- p -> p", "q , (p -> p) |- q -> q", "R"),
    ("r |- (p -> q) -> r", "(p -> q) , ((p -> q) -> r) |- r", "R"),
    ("q |- q <- p", "(q <- p) , p |- q", "L"),
    ("q ; r |- (q <- p) & r", "((q <- p) & r) , p |- q", "L"),
    ("p |- p", "p ; q |- p", "L"),
    ("p ; q |- q", "(p & r) ; q |- q", "R"),
    ("bot |- bot", "bot |- p", ""),
    ("p ; bot |- bot", "bot , q |- p", "L"),
    ("p |- top", "top |- top", ""),
    ("p , q |- top", "r ; top |- r", "R"),
    ("p ; q |- p | r", "(p | r) , (r -> p) |- p", "L"),
    ("p & q |- q & p", "(q & p) ; (q & p) |- p", ("L", "R")),
    ("p |- p | q", "(p | q) , (p | q) |- (p | q) * (p | q)", ("L", "R")),
    ("p , q |- p * q", "(p * q) ; ((p * q) ; r) |- r & (p * q)", ("L", "RL")),
    ("q |- p -> q", "(p , (p -> q)) ; (p -> q) |- q", ("LR", "R")),
    ("p ; (p -> q) |- p & (p -> q)", "(p & (p -> q)) ; top |- p", "L"),
    ("p -> q |- p -> q", "p , (p -> q) |- q", "R"),
]


def build_corpus() -> list[ProofTree]:
    out = [cut(proof_of(a), proof_of(b), p) for a, b, p in SPECS]
    # nested: a cut whose premises contain cuts
    out.append(cut(out[0], proof_of("q & p |- p | q"), ""))
    out.append(cut(out[6], proof_of("q |- q | r"), ""))
    return out
