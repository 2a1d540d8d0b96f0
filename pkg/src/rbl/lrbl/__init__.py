"""The structured sequent calculus: checking, search, mix elimination."""

from .admissible import DisjunctionReport, disjunction_property_probe, semi_assoc_admissible
from .mix import cut_to_mix, eliminate_mix
from .rules import PROFILES, MalformedProof, ProofCheck, ProofTree, RuleError, backward, check_proof, make_node
from .search import Proved, Refuted, SearchConfig, Unknown, Verdict, prove, refute
from .serialize import from_sexpr, to_sexpr

__all__ = [
    "DisjunctionReport", "disjunction_property_probe", "semi_assoc_admissible", "cut_to_mix", "eliminate_mix",
    "PROFILES", "MalformedProof", "ProofCheck", "ProofTree", "RuleError", "backward", "check_proof", "make_node",
    "Proved", "Refuted", "SearchConfig", "Unknown", "Verdict", "prove", "refute", "from_sexpr", "to_sexpr",
]
