"""Ternary relational models and the two-copy lifting of BPL models."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

import numpy as np

from .kripke import BplModel, LanguageError, check_bpl_model, model_bank, truth_set
from .syntax import (And, Bot, Formula, Or, Prod, Prop, RImp, Sequent, SimpleSequent,
                     Top, atoms, is_bpl, mu)


class InvalidState(ValueError):
    pass


@dataclass(frozen=True)
class TernaryModel:
    states: int
    rel3: frozenset = frozenset()
    val: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rel3", frozenset(tuple(int(x) for x in t) for t in self.rel3))
        object.__setattr__(self, "val", {k: frozenset(int(w) for w in v) for k, v in dict(self.val).items()})

    def __hash__(self):
        return hash((self.states, self.rel3, tuple(sorted(self.val.items(), key=lambda kv: kv[0]))))

    def to_json(self) -> dict:
        return {
            "states": self.states,
            "rel3": sorted(list(t) for t in self.rel3),
            "val": {p: sorted(ws) for p, ws in sorted(self.val.items())},
        }

    @classmethod
    def from_json(cls, data) -> "TernaryModel":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["states"]), frozenset(tuple(t) for t in data.get("rel3", [])),
                   {k: frozenset(v) for k, v in data.get("val", {}).items()})


def check_ternary_model(j: TernaryModel) -> list[str]:
    out = []
    if j.states < 1:
        out.append(f"states must be positive, got {j.states}")
    for t in sorted(j.rel3):
        if len(t) != 3 or not all(0 <= x < j.states for x in t):
            out.append(f"bad triple {t}")
    for p, ws in sorted(j.val.items()):
        for w in sorted(ws):
            if not 0 <= w < j.states:
                out.append(f"bad state {w} in val({p})")
    return out


def ternary_truth_set(j: TernaryModel, f: Formula, memo: dict | None = None) -> frozenset:
    if memo is None:
        memo = {}
    got = memo.get(f)
    if got is not None:
        return got
    t = type(f)
    if t is Prop:
        res = frozenset(j.val.get(f.name, ()))
    elif t is Top:
        res = frozenset(range(j.states))
    elif t is Bot:
        res = frozenset()
    elif t is And:
        res = ternary_truth_set(j, f.left, memo) & ternary_truth_set(j, f.right, memo)
    elif t is Or:
        res = ternary_truth_set(j, f.left, memo) | ternary_truth_set(j, f.right, memo)
    else:
        a = ternary_truth_set(j, f.left, memo)
        b = ternary_truth_set(j, f.right, memo)
        if t is Prod:
            # a1 |= A*B iff some R(a1, a2, a3) with a2 |= A, a3 |= B
            res = frozenset(x for (x, y, z) in j.rel3 if y in a and z in b)
        elif t is RImp:
            # a3 |= A->B iff for all R(a1, a2, a3): a2 |= A implies a1 |= B
            bad = {z for (x, y, z) in j.rel3 if y in a and x not in b}
            res = frozenset(s for s in range(j.states) if s not in bad)
        else:
            # a2 |= A<-B iff for all R(a1, a2, a3): a3 |= B implies a1 |= A
            bad = {y for (x, y, z) in j.rel3 if z in b and x not in a}
            res = frozenset(s for s in range(j.states) if s not in bad)
    memo[f] = res
    return res


def eval_ternary(j: TernaryModel, a: int, f: Formula) -> bool:
    if not 0 <= a < j.states:
        raise InvalidState(a)
    return a in ternary_truth_set(j, f)


def _sides(s: Union[SimpleSequent, Sequent]) -> tuple[Formula, Formula]:
    if isinstance(s, Sequent):
        return mu(s.antecedent), s.succedent
    return s.lhs, s.rhs


def sequent_counterstate(j: TernaryModel, s: Union[SimpleSequent, Sequent]):
    """First state where the left side holds and the right side fails, or None."""
    lhs, rhs = _sides(s)
    memo: dict = {}
    bad = ternary_truth_set(j, lhs, memo) - ternary_truth_set(j, rhs, memo)
    return min(bad) if bad else None


def sequent_true(j: TernaryModel, s: Union[SimpleSequent, Sequent]) -> bool:
    return sequent_counterstate(j, s) is None


# ---------------------------------------------------------------------------
# lifting


def copy_state(a: int, i: int) -> int:
    """State index of copy ``i`` (1 or 2) of world ``a``."""
    return 2 * a + (i - 1)


def state_name(s: int) -> str:
    return f"{s // 2}{'₁' if s % 2 == 0 else '₂'}"


def lift_bpl(m: BplModel) -> TernaryModel:
    rel3 = set()
    for a, b in m.rel:
        b1, b2 = copy_state(b, 1), copy_state(b, 2)
        for ai in (copy_state(a, 1), copy_state(a, 2)):
            rel3.add((b1, b2, ai))
            rel3.add((b2, b1, ai))
    val = {p: frozenset(copy_state(a, i) for a in ws for i in (1, 2)) for p, ws in m.val.items()}
    return TernaryModel(2 * m.worlds, frozenset(rel3), val)


def check_truth_lemma(m: BplModel, fs: Iterable[Formula],
                      lift: Callable[[BplModel], TernaryModel] = lift_bpl) -> bool:
    """Compare BPL truth at each world with truth at both copies in the lifted model."""
    fs = list(fs)
    for f in fs:
        if not is_bpl(f):
            raise LanguageError(f"not a BPL formula: {f}")
    j = lift(m)
    bmemo: dict = {}
    tmemo: dict = {}
    for f in fs:
        here = truth_set(m, f, bmemo)
        there = ternary_truth_set(j, f, tmemo)
        for a in range(m.worlds):
            for i in (1, 2):
                if (a in here) != (copy_state(a, i) in there):
                    return False
    return True


def check_srbl_soundness(m: BplModel, derivable: Iterable[SimpleSequent]) -> bool:
    j = lift_bpl(m)
    return all(sequent_true(j, s) for s in derivable)


# ---------------------------------------------------------------------------
# countermodel search through lifted models


@dataclass(frozen=True)
class LiftedCountermodel:
    base: BplModel
    model: TernaryModel
    state: int


def find_lifted_countermodel(s: Union[SimpleSequent, Sequent], max_worlds: int,
                             reflexive: bool = False):
    """Search persistent transitive models (smallest first) whose lifting refutes ``s``.

    The refutation is re-verified with ``eval_ternary`` on the lifted model
    before it is returned. Returns None when no model up to ``max_worlds``
    refutes the sequent.
    """
    lhs, rhs = _sides(s)
    names = sorted(atoms(lhs) | atoms(rhs))
    if max_worlds < 1:
        return None
    bank = model_bank(max_worlds, len(names), reflexive)
    lm, rm = bank.eval_masks([lhs, rhs], names)
    hits = np.nonzero((lm & ~rm) != 0)[0]
    for i in hits:
        base = bank.model(int(i), names)
        assert not check_bpl_model(base)
        j = lift_bpl(base)
        state = sequent_counterstate(j, s)
        if state is not None:
            return LiftedCountermodel(base, j, state)
        raise AssertionError(f"kernel and ternary evaluation disagree on {base}")  # pragma: no cover
    return None
