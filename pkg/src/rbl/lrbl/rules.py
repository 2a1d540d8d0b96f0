"""Proof trees for the structured sequent calculus and their checker.

Every node records the hole address of its active sub-structure as a path
string over ``L``/``R`` (``Mix`` records a tuple of paths). Premises are
computed from the conclusion, the rule and the path by ``backward``, so the
checker and the search share one reading of each schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ..syntax import (And, Bot, Formula, LImp, Leaf, OMeet, OProd, Or, Prod, RImp, Sequent, Structure,
                      Top, get_at, print_sequent, replace_at)

LEAF_RULES = frozenset({"Id", "Top", "Bot", "TopImpAxiom"})
W_RULES = frozenset({"W1_meet", "W2_meet", "W1_prod", "W2_prod"})
CORE_RULES = frozenset({
    "Id", "Top", "Bot", "RImpL", "RImpR", "LImpL", "LImpR", "ProdL", "ProdR", "AndL", "AndR", "OrL",
    "OrR1", "OrR2", "OMeetC", "OProdC", "OMeetE", "OMeetA1", "OMeetA2", "Cut", "Mix",
}) | W_RULES
EXTRA_RULES = frozenset({"OProdCStar", "OProdA2", "OProdE", "TopImpAxiom"})
ALL_RULES = CORE_RULES | EXTRA_RULES

PROFILES = {
    "core": CORE_RULES,
    "lj": (CORE_RULES - {"OProdC"}) | {"OProdCStar", "OProdA2", "OProdE"},
    "top-imp": CORE_RULES | {"TopImpAxiom"},
}


class RuleError(ValueError):
    """A rule does not apply to a sequent at the given path."""


class MalformedProof(ValueError):
    pass


Path = Union[str, tuple]


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    path: Path = ""
    premises: Sequence["ProofTree"] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        if self.rule not in ALL_RULES:
            raise MalformedProof(f"unknown rule {self.rule}")

    def size(self) -> int:
        n, stack = 0, [self]
        while stack:
            t = stack.pop()
            n += 1
            stack.extend(t.premises)
        return n

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def rules_used(self) -> set:
        out, stack = set(), [self]
        while stack:
            t = stack.pop()
            out.add(t.rule)
            stack.extend(t.premises)
        return out

    def is_cut_free(self) -> bool:
        return not (self.rules_used() & {"Cut", "Mix"})


def _leaf_formula(s: Structure, path: str, kind=None) -> Formula:
    node = get_at(s, path)
    if type(node) is not Leaf:
        raise RuleError(f"no formula at {path!r}")
    if kind is not None and not isinstance(node.formula, kind):
        raise RuleError(f"formula at {path!r} is not a {kind.__name__}")
    return node.formula


def _node(s: Structure, path: str, kind) -> Structure:
    try:
        node = get_at(s, path)
    except KeyError:
        raise RuleError(f"no node at {path!r}") from None
    if type(node) is not kind:
        raise RuleError(f"node at {path!r} is not a {kind.__name__}")
    return node


def _with(seq: Sequent, path: str, new: Structure, succ: Optional[Formula] = None) -> Sequent:
    return Sequent(replace_at(seq.antecedent, path, new), seq.succedent if succ is None else succ)


def backward(seq: Sequent, rule: str, path: str = "") -> tuple:
    """Premises of ``rule`` applied at ``path`` with conclusion ``seq``.

    Raises RuleError when the conclusion does not fit the schema. Cut and Mix
    are not handled here because their premises carry a formula that the
    conclusion does not determine.
    """
    g, c = seq.antecedent, seq.succedent
    try:
        get_at(g, path)
    except KeyError:
        raise RuleError(f"no node at {path!r}") from None
    if rule == "Id":
        if g != Leaf(c):
            raise RuleError("Id needs A => A")
        return ()
    if rule == "Top":
        if type(g) is not Leaf or type(c) is not Top:
            raise RuleError("Top needs A => top")
        return ()
    if rule == "Bot":
        if type(g) is not Leaf or type(g.formula) is not Bot:
            raise RuleError("Bot needs bot => A")
        return ()
    if rule == "TopImpAxiom":
        if g != Leaf(RImp(Top(), c)):
            raise RuleError("TopImpAxiom needs top -> A => A")
        return ()
    if rule in ("RImpR", "LImpR", "AndR", "OrR1", "OrR2", "ProdR"):
        if path:
            raise RuleError(f"{rule} acts on the whole antecedent")
        if rule == "RImpR":
            if type(c) is not RImp:
                raise RuleError("succedent is not A -> B")
            return (Sequent(OProd(Leaf(c.left), g), c.right),)
        if rule == "LImpR":
            if type(c) is not LImp:
                raise RuleError("succedent is not A <- B")
            return (Sequent(OProd(g, Leaf(c.right)), c.left),)
        if rule == "AndR":
            if type(c) is not And:
                raise RuleError("succedent is not A & B")
            return (Sequent(g, c.left), Sequent(g, c.right))
        if rule in ("OrR1", "OrR2"):
            if type(c) is not Or:
                raise RuleError("succedent is not A | B")
            return (Sequent(g, c.left if rule == "OrR1" else c.right),)
        if type(c) is not Prod or type(g) is not OProd:
            raise RuleError("ProdR needs G , D => A * B")
        return (Sequent(g.left, c.left), Sequent(g.right, c.right))
    if rule == "AndL":
        f = _leaf_formula(g, path, And)
        return (_with(seq, path, OMeet(Leaf(f.left), Leaf(f.right))),)
    if rule == "ProdL":
        f = _leaf_formula(g, path, Prod)
        return (_with(seq, path, OProd(Leaf(f.left), Leaf(f.right))),)
    if rule == "OrL":
        f = _leaf_formula(g, path, Or)
        return (_with(seq, path, Leaf(f.left)), _with(seq, path, Leaf(f.right)))
    if rule == "RImpL":
        n = _node(g, path, OProd)
        f = _leaf_formula(n, "R", RImp)
        return (Sequent(n.left, f.left), _with(seq, path, Leaf(f.right)))
    if rule == "LImpL":
        n = _node(g, path, OProd)
        f = _leaf_formula(n, "L", LImp)
        return (_with(seq, path, Leaf(f.left)), Sequent(n.right, f.right))
    if rule == "OMeetC":
        d = get_at(g, path)
        return (_with(seq, path, OMeet(d, d)),)
    if rule == "OProdCStar":
        d = get_at(g, path)
        return (_with(seq, path, OProd(d, d)),)
    if rule == "OProdC":
        n = _node(g, path, OProd)
        return (_with(seq, path, OProd(n, n.right)),)
    if rule in ("OMeetE", "OProdE"):
        n = _node(g, path, OMeet if rule == "OMeetE" else OProd)
        return (_with(seq, path, type(n)(n.right, n.left)),)
    if rule == "OMeetA1":
        n = _node(g, path, OMeet)
        r = _node(n, "R", OMeet)
        return (_with(seq, path, OMeet(OMeet(n.left, r.left), r.right)),)
    if rule in ("OMeetA2", "OProdA2"):
        kind = OMeet if rule == "OMeetA2" else OProd
        n = _node(g, path, kind)
        lft = _node(n, "L", kind)
        return (_with(seq, path, kind(lft.left, kind(lft.right, n.right))),)
    if rule in W_RULES:
        n = _node(g, path, OMeet if rule.endswith("meet") else OProd)
        keep = n.right if rule.startswith("W1") else n.left
        return (_with(seq, path, keep),)
    raise RuleError(f"backward does not handle {rule}")


def mix_premise(conclusion: Sequent, delta: Structure, cut_formula: Formula, paths: Sequence[str]) -> Sequent:
    """The right premise of a Mix: each copy of ``delta`` at ``paths`` becomes the cut formula.

    Paths address the conclusion, as for Cut. They must not overlap, so each
    replacement leaves the other paths valid.
    """
    g = conclusion.antecedent
    for p in paths:
        try:
            here = get_at(g, p)
        except KeyError:
            raise RuleError(f"no node at {p!r}") from None
        if here != delta:
            raise RuleError(f"sub-structure at {p!r} is not the left premise antecedent")
    if len(set(paths)) != len(paths):
        raise RuleError("repeated mix path")
    for a in paths:
        for b in paths:
            if a != b and b.startswith(a):
                raise RuleError("overlapping mix paths")
    for p in paths:
        g = replace_at(g, p, Leaf(cut_formula))
    return Sequent(g, conclusion.succedent)


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    where: tuple = ()
    rule: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok


def _check_node(t: ProofTree, profile: frozenset) -> str:
    if t.rule not in profile:
        return f"{t.rule} is not in the profile"
    if t.rule in LEAF_RULES and t.premises:
        return f"{t.rule} takes no premises"
    prem = tuple(p.conclusion for p in t.premises)
    if t.rule == "Cut":
        if len(prem) != 2 or not isinstance(t.path, str):
            return "Cut takes two premises and one path"
        left, right = prem
        try:
            delta = get_at(t.conclusion.antecedent, t.path)
        except KeyError:
            return f"no node at {t.path!r}"
        if left.antecedent != delta:
            return f"left premise antecedent should be the sub-structure at {t.path!r}"
        want = _with(t.conclusion, t.path, Leaf(left.succedent))
        if right != want:
            return f"right premise should be {print_sequent(want)}"
        return ""
    if t.rule == "Mix":
        if len(prem) != 2 or not isinstance(t.path, tuple) or not t.path:
            return "Mix takes two premises and a nonempty tuple of paths"
        left, right = prem
        try:
            want = mix_premise(t.conclusion, left.antecedent, left.succedent, t.path)
        except RuleError as e:
            return str(e)
        if right != want:
            return f"right premise should be {print_sequent(want)}"
        return ""
    if not isinstance(t.path, str):
        return "path must be a string"
    try:
        want = backward(t.conclusion, t.rule, t.path)
    except RuleError as e:
        return str(e)
    if want != prem:
        shown = "; ".join(print_sequent(s) for s in want) or "no premises"
        return f"expected premises {shown}"
    return ""


def check_proof(t: ProofTree, profile: Union[str, frozenset] = "core") -> ProofCheck:
    """Check every node; report the first failure in pre-order with its tree address."""
    rules = PROFILES[profile] if isinstance(profile, str) else frozenset(profile)
    stack = [(t, ())]
    while stack:
        node, where = stack.pop()
        reason = _check_node(node, rules)
        if reason:
            return ProofCheck(False, where, node.rule, reason)
        for i in reversed(range(len(node.premises))):
            stack.append((node.premises[i], where + (i,)))
    return ProofCheck(True)


def make_node(conclusion: Sequent, rule: str, path: Path, premises: Sequence[ProofTree]) -> ProofTree:
    """Build a node and check it locally against the core-plus-extras rule set."""
    t = ProofTree(conclusion, rule, path, premises)
    reason = _check_node(t, ALL_RULES)
    if reason:
        raise MalformedProof(f"{rule} at {path!r} on {print_sequent(conclusion)}: {reason}")
    return t
