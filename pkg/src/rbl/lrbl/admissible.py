"""Admissible rules and the disjunction-property probe."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from ..syntax import TOP, Formula, Leaf, OProd, Or, Sequent, get_at, replace_at
from .rules import MalformedProof, ProofTree
from .search import Proved, SearchConfig, Verdict, prove
from .structural import Chain


def semi_assoc_admissible(proof: ProofTree, path: str = "") -> ProofTree:
    """From a proof of ``Γ[(Δ1⊙Δ2)⊙Δ3] => A`` build one of ``Γ[Δ1⊙(Δ2⊙Δ3)] => A``.

    ``path`` addresses the node ``(Δ1⊙Δ2)⊙Δ3``. The new part uses only
    restricted contraction and weakening, mirroring ``a·(b·c) <= (a·b)·c``:
    contract ``Δ2⊙Δ3`` to get ``(Δ1⊙(Δ2⊙Δ3))⊙(Δ2⊙Δ3)``, then weaken ``Δ3``
    away on the left and ``Δ2`` away on the right.
    """
    g = proof.conclusion.antecedent
    try:
        node = get_at(g, path)
    except KeyError:
        raise MalformedProof(f"no node at {path!r}") from None
    if type(node) is not OProd or type(node.left) is not OProd:
        raise MalformedProof(f"node at {path!r} is not (D1 , D2) , D3")
    d1, d2, d3 = node.left.left, node.left.right, node.right
    goal = Sequent(replace_at(g, path, OProd(d1, OProd(d2, d3))), proof.conclusion.succedent)
    ch = Chain(goal)
    ch.apply("OProdC", path)          # (D1 , (D2 , D3)) , (D2 , D3)
    ch.apply("W2_prod", path + "LR")  # (D1 , D2) , (D2 , D3)
    ch.apply("W1_prod", path + "R")   # (D1 , D2) , D3
    return ch.close(proof)


@dataclass(frozen=True)
class DisjunctionReport:
    disjunction: Verdict
    left: Optional[Verdict]
    right: Optional[Verdict]

    @property
    def applies(self) -> bool:
        """The premise of the property: ``top => A | B`` was proved."""
        return isinstance(self.disjunction, Proved)

    @property
    def side(self) -> Optional[str]:
        if isinstance(self.left, Proved):
            return "left"
        if isinstance(self.right, Proved):
            return "right"
        return None

    @property
    def holds(self) -> Optional[bool]:
        """True when some disjunct was proved, None when the probe does not apply."""
        if not self.applies:
            return None
        return self.side is not None


def disjunction_property_probe(a: Formula, b: Formula, cfg: Optional[SearchConfig] = None,
                               side_depth: int = 18) -> DisjunctionReport:
    """Prove ``top => A | B``; if that succeeds, try each disjunct at ``side_depth``."""
    cfg = cfg or SearchConfig()
    whole = prove(Sequent(Leaf(TOP), Or(a, b)), cfg)
    if not isinstance(whole, Proved):
        return DisjunctionReport(whole, None, None)
    side_cfg = replace(cfg, depth_bound=max(side_depth, cfg.depth_bound))
    left = prove(Sequent(Leaf(TOP), a), side_cfg)
    right = prove(Sequent(Leaf(TOP), b), side_cfg)
    return DisjunctionReport(whole, left, right)
