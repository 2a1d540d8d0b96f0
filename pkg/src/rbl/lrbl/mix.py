"""Mix elimination.

``mix(L, R, occ)`` takes a proof ``L`` of ``Δ => A`` and a proof ``R`` whose
antecedent has the leaf ``A`` at each path in ``occ``, and returns a mix-free
proof of ``R``'s conclusion with ``Δ`` at those paths. The recursion follows
the usual induction:

* the occurrences are not principal in ``R``'s last rule: push the mix into
  ``R``'s premises and re-apply the rule;
* one occurrence is principal in ``R`` but ``A`` is not principal in ``L``:
  push the mix into ``L``'s premises and re-apply ``L``'s rule inside the
  context;
* both principal: replace the mix by mixes on the immediate subformulas.

Occurrences are traced through a rule by putting a fresh marker atom at each
one and applying the rule backward, so the same schema reading as the checker
decides where each occurrence goes (duplicated, dropped or moved).
"""

from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

from ..syntax import Leaf, Prop, Sequent, Structure, get_at, leaves, replace_at
from .rules import MalformedProof, ProofTree, backward, check_proof, make_node
from .structural import Chain, isolate

_MARK = "#occ"

LEFT_INTRO = {"AndL", "ProdL", "OrL"}


def _marker(i: int) -> Leaf:
    return Leaf(Prop(f"{_MARK}{i}"))


def _substitute(seq: Sequent, occ: Sequence[str], delta: Structure) -> Sequent:
    g = seq.antecedent
    for p in occ:
        g = replace_at(g, p, delta)
    return Sequent(g, seq.succedent)


def _principal_path(t: ProofTree) -> Optional[str]:
    if t.rule in LEFT_INTRO:
        return t.path
    if t.rule == "RImpL":
        return t.path + "R"
    if t.rule == "LImpL":
        return t.path + "L"
    return None


def _trace(t: ProofTree, occ: Sequence[str]) -> list[list[str]]:
    """Paths of each premise that the occurrences ``occ`` of the conclusion go to."""
    marked = t.conclusion
    for i, p in enumerate(occ):
        marked = Sequent(replace_at(marked.antecedent, p, _marker(i)), marked.succedent)
    prems = backward(marked, t.rule, t.path)
    out = []
    for prem in prems:
        out.append([p for p, f in leaves(prem.antecedent) if isinstance(f, Prop) and f.name.startswith(_MARK)])
    return out


class Stats(Counter):
    """How often each reduction was used; handy for coverage tests."""


class _Mixer:
    def __init__(self):
        self.stats = Stats()

    def mix(self, L: ProofTree, R: ProofTree, occ: Sequence[str]) -> ProofTree:
        occ = tuple(occ)
        if not occ:
            return R
        delta, a = L.conclusion.antecedent, L.conclusion.succedent
        for p in occ:
            if get_at(R.conclusion.antecedent, p) != Leaf(a):
                raise MalformedProof(f"no occurrence of the mix formula at {p!r}")
        target = _substitute(R.conclusion, occ, delta)
        if R.rule == "Id":
            self.stats["right_id"] += 1
            return L
        if R.rule == "Top":
            self.stats["right_top"] += 1
            ch = isolate(Chain(target), next(leaves(delta))[0])
            return ch.split("Top", "", ())
        if R.rule in ("Cut", "Mix", "TopImpAxiom"):
            raise MalformedProof(f"{R.rule} is not expected here")
        principal = _principal_path(R)
        if R.rule == "Bot":
            principal = ""
        others = [p for p in occ if p != principal]
        if principal in occ and others:
            # first remove the other occurrences, keeping R's last rule in place
            R = self._push_right(L, R, others)
            occ = (principal,)
        if principal not in occ:
            return self._push_right(L, R, occ)
        return self._principal(L, R, principal)

    def _push_right(self, L, R, occ) -> ProofTree:
        self.stats["push_right"] += 1
        delta = L.conclusion.antecedent
        traced = _trace(R, occ)
        prems = [self.mix(L, P, o) for P, o in zip(R.premises, traced)]
        return make_node(_substitute(R.conclusion, occ, delta), R.rule, R.path, prems)

    def _principal(self, L: ProofTree, R: ProofTree, pi: str) -> ProofTree:
        if L.rule == "Id":
            self.stats["left_id"] += 1
            return R
        if L.rule == "Bot":
            self.stats["left_bot"] += 1
            target = _substitute(R.conclusion, (pi,), L.conclusion.antecedent)
            ch = isolate(Chain(target), pi)
            return ch.split("Bot", "", ())
        right_intro = {"AndR", "OrR1", "OrR2", "ProdR", "RImpR", "LImpR"}
        if L.rule in right_intro:
            return self._reduce(L, R, pi)
        return self._push_left(L, R, pi)

    def _push_left(self, L: ProofTree, R: ProofTree, pi: str) -> ProofTree:
        """Mix each premise of ``L`` that still has the mix formula as succedent, then redo ``L``'s rule."""
        self.stats["push_left"] += 1
        delta = L.conclusion.antecedent
        target = _substitute(R.conclusion, (pi,), delta)
        if L.rule in ("Top", "TopImpAxiom", "Cut", "Mix"):
            raise MalformedProof(f"cannot push a mix into {L.rule}")
        prems = []
        for i, P in enumerate(L.premises):
            side = (L.rule == "RImpL" and i == 0) or (L.rule == "LImpL" and i == 1)
            prems.append(P if side else self.mix(P, R, (pi,)))
        return make_node(target, L.rule, pi + L.path, prems)

    def _reduce(self, L: ProofTree, R: ProofTree, pi: str) -> ProofTree:
        target = _substitute(R.conclusion, (pi,), L.conclusion.antecedent)
        rl, rr = L.rule, R.rule
        if rl == "AndR" and rr == "AndL":
            self.stats["and"] += 1
            (R1,) = R.premises
            m1 = self.mix(L.premises[0], R1, (pi + "L",))
            m2 = self.mix(L.premises[1], m1, (pi + "R",))
            return make_node(target, "OMeetC", pi, (m2,))
        if rl in ("OrR1", "OrR2") and rr == "OrL":
            self.stats["or"] += 1
            return self.mix(L.premises[0], R.premises[0 if rl == "OrR1" else 1], (pi,))
        if rl == "ProdR" and rr == "ProdL":
            self.stats["prod"] += 1
            (R1,) = R.premises
            m1 = self.mix(L.premises[0], R1, (pi + "L",))
            return self.mix(L.premises[1], m1, (pi + "R",))
        if rl == "RImpR" and rr == "RImpL":
            self.stats["rimp"] += 1
            R1, R2 = R.premises
            m1 = self.mix(R1, L.premises[0], ("L",))
            return self.mix(m1, R2, (R.path,))
        if rl == "LImpR" and rr == "LImpL":
            self.stats["limp"] += 1
            R1, R2 = R.premises
            m1 = self.mix(R2, L.premises[0], ("R",))
            return self.mix(m1, R1, (R.path,))
        raise MalformedProof(f"no reduction for {rl} against {rr}")  # pragma: no cover

    def eliminate(self, t: ProofTree) -> ProofTree:
        prems = [self.eliminate(p) for p in t.premises]
        if t.rule == "Cut":
            return self.mix(prems[0], prems[1], (t.path,))
        if t.rule == "Mix":
            return self.mix(prems[0], prems[1], t.path)
        if all(a is b for a, b in zip(prems, t.premises)):
            return t
        return ProofTree(t.conclusion, t.rule, t.path, tuple(prems))


def eliminate_mix(t: ProofTree, stats: Optional[Counter] = None) -> ProofTree:
    """A proof of the same conclusion without Cut or Mix.

    Raises MalformedProof if ``t`` does not check in the core profile. Cut
    and Mix on ``top`` and ``bot`` are removed as well.
    """
    chk = check_proof(t, "core")
    if not chk:
        raise MalformedProof(f"input proof fails the checker: {chk}")
    m = _Mixer()
    out = m.eliminate(t)
    if stats is not None:
        stats.update(m.stats)
    return out


def cut_to_mix(t: ProofTree) -> ProofTree:
    """Rewrite every Cut node as a Mix with a single occurrence."""
    prems = tuple(cut_to_mix(p) for p in t.premises)
    if t.rule == "Cut":
        return ProofTree(t.conclusion, "Mix", (t.path,), prems)
    return ProofTree(t.conclusion, t.rule, t.path, prems)
