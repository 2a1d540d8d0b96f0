"""Backward structural steps recorded as proof nodes.

A ``Chain`` starts at a goal sequent and applies single-premise rules
backward, remembering each step. Once the last premise is proved, ``close``
stacks the recorded nodes on top of that proof, so every structural move the
search makes shows up as a literal rule application.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from ..syntax import Leaf, OMeet, OProd, Sequent, Structure, Top, get_at, print_structure
from .rules import ProofTree, backward


class Chain:
    def __init__(self, seq: Sequent):
        self.start = seq
        self.seq = seq
        self.steps: list = []

    def apply(self, rule: str, path: str = "") -> "Chain":
        (prem,) = backward(self.seq, rule, path)
        self.steps.append((self.seq, rule, path))
        self.seq = prem
        return self

    def at(self, path: str) -> Structure:
        return get_at(self.seq.antecedent, path)

    def close(self, proof: ProofTree) -> ProofTree:
        if proof.conclusion != self.seq:
            raise ValueError("proof does not match the end of the chain")
        for seq, rule, path in reversed(self.steps):
            proof = ProofTree(seq, rule, path, (proof,))
        return proof

    def split(self, rule: str, path: str, proofs: Sequence[ProofTree]) -> ProofTree:
        """Finish with a rule of any arity whose premises are already proved."""
        return self.close(ProofTree(self.seq, rule, path, tuple(proofs)))

    def fork(self) -> "Chain":
        c = Chain(self.start)
        c.seq = self.seq
        c.steps = list(self.steps)
        return c


def _wtag(node: Structure) -> str:
    return "meet" if type(node) is OMeet else "prod"


def isolate(ch: Chain, path: str, base: str = "") -> Chain:
    """Weaken away everything around the node at ``base + path`` inside the node at ``base``.

    Each step removes one sibling, so the target rises to ``base``.
    """
    for c in path:
        node = ch.at(base)
        ch.apply(("W2_" if c == "L" else "W1_") + _wtag(node), base)
    return ch


@lru_cache(maxsize=200_000)
def skey(s: Structure) -> str:
    return print_structure(s)


def _comb_items(s: Structure) -> list:
    out = []
    while type(s) is OMeet:
        out.append(s.left)
        s = s.right
    out.append(s)
    return out


def normalize(ch: Chain, path: str = "") -> Chain:
    """Bring the sub-structure at ``path`` to normal form.

    Every maximal ⊘-cluster becomes a right-nested comb of its items sorted by
    printed form, without duplicates and without ``top`` unless it is alone.
    ⊙ nodes are kept and normalised inside.
    """
    node = ch.at(path)
    if type(node) is Leaf:
        return ch
    if type(node) is OProd:
        normalize(ch, path + "L")
        normalize(ch, path + "R")
        return ch
    # flatten into a right comb
    q = path
    while type(ch.at(q)) is OMeet:
        while type(ch.at(q).left) is OMeet:
            ch.apply("OMeetA2", q)
        q += "R"
    k = len(_comb_items(ch.at(path)))

    def item_path(i: int) -> str:
        return path + "R" * i + ("L" if i < k - 1 else "")

    for i in range(k):
        normalize(ch, item_path(i))

    def swap(i: int):
        c = path + "R" * i
        if i + 1 == k - 1:
            ch.apply("OMeetE", c)
        else:
            ch.apply("OMeetA1", c)
            ch.apply("OMeetE", c + "L")
            ch.apply("OMeetA2", c)

    items = _comb_items(ch.at(path))
    for end in range(k - 1, 0, -1):
        for i in range(end):
            if skey(items[i]) > skey(items[i + 1]):
                swap(i)
                items[i], items[i + 1] = items[i + 1], items[i]
    i = 0
    while k > 1 and i < k - 1:
        c = path + "R" * i
        drop_top = type(items[i]) is Leaf and type(items[i].formula) is Top
        if items[i] == items[i + 1] or drop_top:
            ch.apply("W1_meet", c)
            del items[i]
            k -= 1
        else:
            i += 1
    if k > 1 and type(items[-1]) is Leaf and type(items[-1].formula) is Top:
        ch.apply("W2_meet", path + "R" * (k - 2))
    return ch


def normal_form(seq: Sequent) -> Sequent:
    return normalize(Chain(seq)).seq


def bunch_items(s: Structure) -> list:
    """Items of the ⊘-comb at ``s`` (a single item when ``s`` is not ⊘)."""
    return _comb_items(s)


def bunch_at(g: Structure, path: str) -> tuple[str, list]:
    """The path of the maximal ⊘-comb containing the node at ``path`` and its items."""
    start = path
    while start and start[-1] == "R" and type(get_at(g, start[:-1])) is OMeet:
        start = start[:-1]
    if start and start[-1] == "L" and type(get_at(g, start[:-1])) is OMeet:
        start = start[:-1]
        while start and start[-1] == "R" and type(get_at(g, start[:-1])) is OMeet:
            start = start[:-1]
    return start, _comb_items(get_at(g, start))


def find_leaf(items: Sequence[Structure], f) -> Optional[int]:
    for i, it in enumerate(items):
        if type(it) is Leaf and it.formula == f:
            return i
    return None
