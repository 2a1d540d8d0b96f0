"""Bounded backward proof search with refutation by finite countermodels.

Search runs on normal-form goals (see ``structural.normalize``). At each goal
the moves are tried in a fixed order:

1. closing: ``top`` succedent, a ``bot`` leaf, a leaf equal to the succedent
   (or ``top -> C`` under the top-imp profile), with the rest weakened away;
2. invertible rules, applied eagerly: ∧L, ·L, →R, ←R, ∧R, ∨L;
3. choices: ∨R1, ∨R2, ·R at each ⊙ node, → and ← firings, profile extras.

A "firing" of a leaf ``A -> B`` sitting under the right child of a ⊙ node
``X , Y`` proves ``X => A`` and continues with ``(X ; B) , Y``; it is
assembled from ⊙C, ⊘C, weakening and →L. Firings that only add a new
formula to a bunch terminate on their own and are free; moves whose
contraction can grow the antecedent without bound spend the contraction
budget. The depth bound counts choice moves along a branch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

from ..algebra import FiniteRba, rbas_upto, sequent_counterexample
from ..kripke import BplModel, model_bank
from ..syntax import (And, Bot, LImp, Leaf, OMeet, OProd, Or, Prod, RImp, Sequent,
                      Structure, Top, atoms, get_at, leaves, mu, nodes, parse_sequent)
from ..ternary import TernaryModel, find_lifted_countermodel
from .rules import PROFILES, ProofTree, check_proof
from .structural import Chain, bunch_at, find_leaf, isolate, normalize


@dataclass(frozen=True)
class SearchConfig:
    profile: str = "core"
    depth_bound: int = 14
    contraction_budget: int = 2
    countermodel_size: int = 8
    prune: bool = True
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.depth_bound < 1:
            raise ValueError("depth_bound must be at least 1")
        if self.contraction_budget < 0 or self.countermodel_size < 0:
            raise ValueError("budgets must be non-negative")


@dataclass(frozen=True)
class Proved:
    proof: ProofTree

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Refuted:
    """A finite countermodel.

    ``model`` is a lifted ternary model with ``state`` refuting the sequent,
    or a finite algebra with ``state`` an assignment; ``base`` is the BPL
    model that was lifted, when there is one.
    """
    model: Union[TernaryModel, FiniteRba]
    state: Union[int, dict]
    base: Optional[BplModel] = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Unknown:
    report: dict = field(default_factory=dict)

    def __bool__(self):
        return False


Verdict = Union[Proved, Refuted, Unknown]


class _Timeout(Exception):
    pass


def _has_limp(x) -> bool:
    if isinstance(x, LImp):
        return True
    if isinstance(x, Leaf):
        return _has_limp(x.formula)
    return hasattr(x, "left") and (_has_limp(x.left) or _has_limp(x.right))


def _sequent_has_limp(s: Sequent) -> bool:
    return _has_limp(s.antecedent) or _has_limp(s.succedent)


_BANK_WORLDS = {0: 4, 1: 4, 2: 4, 3: 3, 4: 2, 5: 2, 6: 2}


def bank_worlds(natoms: int, limit: int) -> int:
    """Largest model size searched for ``natoms`` atoms, keeping banks to a few hundred thousand models."""
    return max(0, min(limit, _BANK_WORLDS.get(natoms, 1)))


def refute(s: Sequent, cfg: SearchConfig) -> Optional[Refuted]:
    """Look for a countermodel that is sound for the profile.

    Lifted models of transitive persistent models refute ←-free sequents in
    the core profile; reflexive ones are also sound for the two extended
    profiles. Finite algebras refute any core sequent.
    """
    names = sorted(atoms(s))
    reflexive = cfg.profile != "core"
    if not _sequent_has_limp(s):
        w = bank_worlds(len(names), cfg.countermodel_size // 2)
        if w >= 1:
            found = find_lifted_countermodel(s, w, reflexive=reflexive)
            if found is not None:
                return Refuted(found.model, found.state, found.base)
        return None
    if cfg.profile == "core" and len(names) <= 6:
        lhs, rhs = mu(s.antecedent), s.succedent
        for alg in rbas_upto(3 if len(names) > 4 else 4):
            if alg.size ** max(len(names), 1) > 5000:
                continue
            bad = sequent_counterexample(alg, lhs, rhs)
            if bad is not None:
                return Refuted(alg, bad)
    return None


# ---------------------------------------------------------------------------
# semantic pruning of subgoals


class _Pruner:
    """Cheap refutation of subgoals by small lifted models or small algebras."""

    def __init__(self, profile: str):
        self.reflexive = profile != "core"
        self.core = profile == "core"
        self.cache: dict = {}

    def refuted(self, g: Sequent) -> bool:
        got = self.cache.get(g)
        if got is not None:
            return got
        lhs, rhs = mu(g.antecedent), g.succedent
        names = sorted(atoms(lhs) | atoms(rhs))
        res = False
        if not (_has_limp(lhs) or _has_limp(rhs)):
            w = 3 if len(names) <= 3 else (2 if len(names) <= 5 else 1)
            bank = model_bank(w, len(names), self.reflexive)
            lm, rm = bank.eval_masks([lhs, rhs], names)
            res = bool(((lm & ~rm) != 0).any())
        elif self.core and len(names) <= 4:
            res = any(sequent_counterexample(a, lhs, rhs) is not None for a in rbas_upto(3))
        self.cache[g] = res
        return res


# ---------------------------------------------------------------------------
# the search


def _prefixes(path: str):
    """Proper prefixes of ``path``, nearest ancestor first."""
    for i in range(len(path) - 1, -1, -1):
        yield path[:i]


class _Search:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.rules = PROFILES[cfg.profile]
        self.pruner = _Pruner(cfg.profile) if cfg.prune else None
        self.proved: dict = {}
        self.failed: dict = {}  # goal -> list of (depth, budget) that failed
        self.deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit
        self.goals = 0
        self.hit_bound = False

    # -- bookkeeping -------------------------------------------------------

    def _known_failure(self, g, depth, budget) -> bool:
        return any(d >= depth and b >= budget for d, b in self.failed.get(g, ()))

    def _record_failure(self, g, depth, budget):
        lst = [(d, b) for d, b in self.failed.get(g, ()) if not (d <= depth and b <= budget)]
        lst.append((depth, budget))
        self.failed[g] = lst

    # -- entry -------------------------------------------------------------

    def prove(self, goal: Sequent, depth: int, budget: int, trail: frozenset = frozenset(),
              root: bool = False) -> Optional[ProofTree]:
        ch = normalize(Chain(goal))
        proof = self._prove_normal(ch.seq, depth, budget, trail, root)
        if proof is None:
            return None
        return ch.close(proof)

    def _prove_normal(self, g: Sequent, depth, budget, trail, root) -> Optional[ProofTree]:
        got = self.proved.get(g)
        if got is not None:
            return got
        if g in trail or self._known_failure(g, depth, budget):
            return None
        self.goals += 1
        if self.deadline is not None and self.goals % 64 == 1 and time.monotonic() > self.deadline:
            raise _Timeout
        proof = self._close(g)
        if proof is None and not root and self.pruner is not None and self.pruner.refuted(g):
            self._record_failure(g, 10 ** 6, 10 ** 6)
            return None
        if proof is None:
            proof = self._invertible(g, depth, budget, trail | {g})
        if proof is None:
            proof = self._choices(g, depth, budget, trail | {g})
        if proof is None:
            self._record_failure(g, depth, budget)
        else:
            self.proved[g] = proof
        return proof

    # -- closing -----------------------------------------------------------

    def _close(self, g: Sequent) -> Optional[ProofTree]:
        c = g.succedent
        lv = list(leaves(g.antecedent))
        target = None
        rule = None
        if type(c) is Top:
            target, rule = lv[0][0], "Top"
        else:
            for p, f in lv:
                if type(f) is Bot:
                    target, rule = p, "Bot"
                    break
            if target is None:
                for p, f in lv:
                    if f == c:
                        target, rule = p, "Id"
                        break
            if target is None and "TopImpAxiom" in self.rules:
                for p, f in lv:
                    if f == RImp(Top(), c):
                        target, rule = p, "TopImpAxiom"
                        break
        if target is None:
            return None
        ch = isolate(Chain(g), target)
        return ch.split(rule, "", ())

    # -- invertible rules --------------------------------------------------

    def _invertible(self, g: Sequent, depth, budget, trail) -> Optional[ProofTree]:
        for p, f in leaves(g.antecedent):
            if type(f) is And:
                return self._single(g, "AndL", p, depth, budget, trail)
            if type(f) is Prod:
                return self._single(g, "ProdL", p, depth, budget, trail)
        c = g.succedent
        if type(c) is RImp:
            return self._single(g, "RImpR", "", depth, budget, trail)
        if type(c) is LImp:
            return self._single(g, "LImpR", "", depth, budget, trail)
        if type(c) is And:
            return self._branch(Chain(g), "AndR", "", depth, budget, trail)
        for p, f in leaves(g.antecedent):
            if type(f) is Or:
                return self._branch(Chain(g), "OrL", p, depth, budget, trail)
        return None

    def _single(self, g, rule, path, depth, budget, trail):
        ch = Chain(g).apply(rule, path)
        sub = self.prove(ch.seq, depth, budget, trail)
        return None if sub is None else ch.close(sub)

    def _branch(self, ch: Chain, rule, path, depth, budget, trail, premise_budget=None):
        from .rules import backward

        prems = backward(ch.seq, rule, path)
        subs = []
        for i, s in enumerate(prems):
            b = budget if premise_budget is None else premise_budget[i]
            sub = self.prove(s, depth, b, trail)
            if sub is None:
                return None
            subs.append(sub)
        return ch.split(rule, path, subs)

    # -- choices -----------------------------------------------------------

    def _choices(self, g: Sequent, depth, budget, trail) -> Optional[ProofTree]:
        if depth <= 0:
            self.hit_bound = True
            return None
        d = depth - 1
        c = g.succedent
        ant = g.antecedent
        core_c = "OProdC" in self.rules
        if type(c) is Or:
            for rule in ("OrR1", "OrR2"):
                got = self._single(g, rule, "", d, budget, trail)
                if got is not None:
                    return got
        if type(c) is Prod:
            for q, n in nodes(ant):
                if type(n) is OProd:
                    ch = isolate(Chain(g), q)
                    got = self._branch(ch, "ProdR", "", d, budget, trail)
                    if got is not None:
                        return got
            if budget > 0 and core_c:
                for q, n in nodes(ant):
                    if type(n) is OProd:
                        ch = Chain(g).apply("OProdC", q)
                        isolate(ch, q)
                        got = self._branch(ch, "ProdR", "", d, budget - 1, trail)
                        if got is not None:
                            return got
            if "OProdCStar" in self.rules:
                ch = Chain(g).apply("OProdCStar", "")
                got = self._branch(ch, "ProdR", "", d, budget, trail)
                if got is not None:
                    return got
        lv = list(leaves(ant))
        for p, f in lv:
            if type(f) is RImp:
                got = self._fire_right(g, p, f, d, budget, trail)
                if got is not None:
                    return got
        for p, f in lv:
            if type(f) is LImp:
                got = self._fire_left(g, p, f, d, budget, trail)
                if got is not None:
                    return got
        if "TopImpAxiom" in self.rules and budget > 0 and type(c) is not Top:
            tc = RImp(Top(), c)
            left = self.prove(Sequent(ant, tc), d, budget - 1, trail)
            if left is not None:
                from .rules import make_node

                right = make_node(Sequent(Leaf(tc), c), "TopImpAxiom", "", ())
                return make_node(g, "Cut", "", (left, right))
        return None

    def _fire_right(self, g: Sequent, p: str, f: RImp, d, budget, trail):
        ant = g.antecedent
        for q in _prefixes(p):
            node = get_at(ant, q)
            if type(node) is not OProd or p[len(q)] != "R":
                continue
            rest = p[len(q) + 1:]
            if find_leaf(_items(node.left), f.right) is not None:
                continue
            if "OProdC" in self.rules:
                # simple firing: premise X => A, result (X ; B) , Y
                ch = Chain(g).apply("OProdC", q).apply("OMeetC", q + "L").apply("W2_prod", q + "LL")
                isolate(ch, rest, q + "LRR")
                got = self._fire_finish(ch, q + "LR", d, budget, trail)
                if got is not None:
                    return got
                if budget > 0:
                    # full firing: premise X , Y => A, result (B ; X , Y) , Y
                    ch = Chain(g).apply("OProdC", q).apply("OMeetC", q + "L").apply("OProdC", q + "LL")
                    isolate(ch, rest, q + "LLR")
                    got = self._fire_finish(ch, q + "LL", d, budget - 1, trail)
                    if got is not None:
                        return got
            else:
                # without ⊙C: keep the node beside the result, (X , Y) ; B
                ch = Chain(g).apply("OMeetC", q)
                isolate(ch, rest, q + "RR")
                got = self._fire_finish(ch, q + "R", d, budget, trail)
                if got is not None:
                    return got
        if "OProdCStar" in self.rules:
            if find_leaf(_items(ant), f.right) is None:
                # reflexive firing: G ; (G , A->B) with premise G => A
                ch = Chain(g).apply("OMeetC", "").apply("OProdCStar", "R")
                isolate(ch, p, "RR")
                got = self._fire_finish(ch, "R", d, budget, trail)
                if got is not None:
                    return got
        return None

    def _fire_finish(self, ch: Chain, at: str, d, budget, trail):
        from .rules import backward

        first, second = backward(ch.seq, "RImpL", at)
        left = self.prove(first, d, budget, trail)
        if left is None:
            return None
        right = self.prove(second, d, budget, trail)
        if right is None:
            return None
        return ch.split("RImpL", at, (left, right))

    def _fire_left(self, g: Sequent, p: str, f: LImp, d, budget, trail):
        """Fire ``A <- B`` at the left of a ⊙ node ``X , Y``: prove ``Y => B``, continue with ``(X , Y) ; A``."""
        from .rules import backward

        ant = g.antecedent
        tries = []
        for q in _prefixes(p):
            node = get_at(ant, q)
            if type(node) is not OProd or p[len(q)] != "L":
                continue
            if find_leaf(bunch_at(ant, q)[1], f.left) is not None:
                continue
            ch = Chain(g).apply("OMeetC", q)
            isolate(ch, p[len(q) + 1:], q + "RL")
            tries.append((ch, q + "R"))
        if "OProdCStar" in self.rules and find_leaf(_items(ant), f.left) is None:
            ch = Chain(g).apply("OMeetC", "").apply("OProdCStar", "R")
            isolate(ch, p, "RL")
            tries.append((ch, "R"))
        for ch, at in tries:
            first, second = backward(ch.seq, "LImpL", at)
            right = self.prove(second, d, budget, trail)
            if right is None:
                continue
            left = self.prove(first, d, budget, trail)
            if left is None:
                continue
            return ch.split("LImpL", at, (left, right))
        return None


def _items(s: Structure) -> list:
    out = []
    while type(s) is OMeet:
        out.append(s.left)
        s = s.right
    out.append(s)
    return out


def _depth_schedule(bound: int):
    d = 2
    while d < bound:
        yield d
        d += 3
    yield bound


def prove(s: Union[Sequent, str], cfg: Optional[SearchConfig] = None) -> Verdict:
    """Refute with a small countermodel if one exists, otherwise search for a proof."""
    cfg = cfg or SearchConfig()
    if isinstance(s, str):
        s = parse_sequent(s)
    t0 = time.monotonic()
    found = refute(s, cfg)
    if found is not None:
        return found
    search = _Search(cfg)
    reason = "search bound"
    try:
        for depth in _depth_schedule(cfg.depth_bound):
            proof = search.prove(s, depth, cfg.contraction_budget, root=True)
            if proof is not None:
                chk = check_proof(proof, cfg.profile)
                if not chk:  # pragma: no cover - would be a search bug
                    raise AssertionError(f"emitted proof fails the checker: {chk}")
                return Proved(proof)
            if not search.hit_bound:
                reason = "search space exhausted within the contraction budget"
                break
            search.hit_bound = False
    except _Timeout:
        return Unknown({"reason": "time limit", "goals": search.goals, "seconds": time.monotonic() - t0})
    return Unknown({"reason": reason, "depth_bound": cfg.depth_bound,
                    "contraction_budget": cfg.contraction_budget, "goals": search.goals,
                    "seconds": time.monotonic() - t0})
