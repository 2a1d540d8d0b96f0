"""Finite Kripke models for basic propositional logic.

Implication quantifies over the *strict* successors of a world; the
accessibility relation is transitive but need not be reflexive.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .syntax import BOT, And, Bot, Formula, Or, Prop, RImp, Top, atoms, is_bpl


class LanguageError(ValueError):
    """A formula uses a connective outside the language an evaluator accepts."""


class InvalidWorld(ValueError):
    pass


@dataclass(frozen=True)
class BplModel:
    worlds: int
    rel: frozenset = frozenset()
    val: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rel", frozenset((int(a), int(b)) for a, b in self.rel))
        object.__setattr__(self, "val", {k: frozenset(int(w) for w in v) for k, v in dict(self.val).items()})

    def __hash__(self):
        return hash((self.worlds, self.rel, tuple(sorted(self.val.items(), key=lambda kv: kv[0]))))

    def successors(self, w: int) -> list[int]:
        return sorted(v for (u, v) in self.rel if u == w)

    def to_json(self) -> dict:
        return {
            "worlds": self.worlds,
            "rel": sorted([a, b] for a, b in self.rel),
            "val": {p: sorted(ws) for p, ws in sorted(self.val.items())},
        }

    @classmethod
    def from_json(cls, data) -> "BplModel":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["worlds"]), frozenset(tuple(p) for p in data.get("rel", [])),
                   {k: frozenset(v) for k, v in data.get("val", {}).items()})


@dataclass(frozen=True)
class Violation:
    kind: str  # "range", "transitivity" or "persistency"
    witness: tuple

    def __str__(self):
        return f"{self.kind}: {self.witness}"


def check_bpl_model(m: BplModel) -> list[Violation]:
    out = []
    n = m.worlds
    if n < 1:
        out.append(Violation("range", ("worlds", n)))
    for a, b in sorted(m.rel):
        if not (0 <= a < n and 0 <= b < n):
            out.append(Violation("range", (a, b)))
    for p, ws in sorted(m.val.items()):
        for w in sorted(ws):
            if not 0 <= w < n:
                out.append(Violation("range", (p, w)))
    succ: dict[int, set] = {}
    for a, b in m.rel:
        succ.setdefault(a, set()).add(b)
    for a, b in sorted(m.rel):
        for c in sorted(succ.get(b, ())):
            if (a, c) not in m.rel:
                out.append(Violation("transitivity", ((a, b), (b, c), (a, c))))
    for p, ws in sorted(m.val.items()):
        for w in sorted(ws):
            for u in sorted(succ.get(w, ())):
                if u not in ws:
                    out.append(Violation("persistency", (p, w, u)))
    return out


def _check_bpl_language(f: Formula):
    if not is_bpl(f):
        raise LanguageError(f"not a BPL formula: {f}")


def truth_set(m: BplModel, f: Formula, memo: dict | None = None) -> frozenset:
    """Worlds of ``m`` where ``f`` holds. Unknown atoms are false everywhere."""
    if memo is None:
        memo = {}
    got = memo.get(f)
    if got is not None:
        return got
    t = type(f)
    worlds = range(m.worlds)
    if t is Prop:
        res = frozenset(m.val.get(f.name, ()))
    elif t is Top:
        res = frozenset(worlds)
    elif t is Bot:
        res = frozenset()
    elif t is And:
        res = truth_set(m, f.left, memo) & truth_set(m, f.right, memo)
    elif t is Or:
        res = truth_set(m, f.left, memo) | truth_set(m, f.right, memo)
    elif t is RImp:
        a = truth_set(m, f.left, memo)
        b = truth_set(m, f.right, memo)
        bad = {u for (u, v) in m.rel if v in a and v not in b}
        res = frozenset(w for w in worlds if w not in bad)
    else:
        raise LanguageError(f"{t.__name__} is not in the BPL language")
    memo[f] = res
    return res


def eval_bpl(m: BplModel, w: int, f: Formula) -> bool:
    _check_bpl_language(f)
    if not 0 <= w < m.worlds:
        raise InvalidWorld(w)
    return w in truth_set(m, f)


# ---------------------------------------------------------------------------
# exhaustive search over small models


@dataclass(frozen=True)
class ValidUpTo:
    size: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Countermodel:
    model: BplModel
    world: int

    def __bool__(self):
        return False


def _closure_ok(n: int, rel: frozenset) -> bool:
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c and (a, d) not in rel:
                return False
    return True


def _rel_mask(n: int, rel) -> int:
    return sum(1 << (a * n + b) for a, b in rel)


def _least_mask(n: int, rel: frozenset) -> int:
    return min(_rel_mask(n, [(perm[a], perm[b]) for a, b in rel])
               for perm in itertools.permutations(range(n)))


def _from_mask(n: int, mask: int) -> frozenset:
    return frozenset((i // n, i % n) for i in range(n * n) if mask >> i & 1)


@lru_cache(maxsize=None)
def transitive_relations(n: int, reflexive: bool = False, up_to_iso: bool = True) -> tuple:
    """Transitive relations on ``n`` points in ascending bitmask order.

    With ``up_to_iso`` each isomorphism class is represented by its member
    with the least bitmask. ``reflexive`` restricts to preorders.
    """
    if n == 0:
        return (frozenset(),)
    if not up_to_iso and n > 4:
        raise ValueError("labelled enumeration is limited to 4 points")
    found = set()
    new = n - 1
    for base in transitive_relations(n - 1, reflexive, up_to_iso):
        for outs in range(1 << new):
            for ins in range(1 << new):
                for loop in ((True,) if reflexive else (False, True)):
                    rel = set(base)
                    rel.update((new, b) for b in range(new) if outs >> b & 1)
                    rel.update((a, new) for a in range(new) if ins >> a & 1)
                    if loop:
                        rel.add((new, new))
                    rel = frozenset(rel)
                    if not _closure_ok(n, rel):
                        continue
                    found.add(_least_mask(n, rel) if up_to_iso else _rel_mask(n, rel))
    return tuple(_from_mask(n, mask) for mask in sorted(found))


def up_sets(n: int, rel: Iterable) -> list[int]:
    """Bitmasks of R-upward-closed subsets of ``range(n)``, ascending."""
    succ = [0] * n
    for a, b in rel:
        succ[a] |= 1 << b
    out = []
    for s in range(1 << n):
        if all((succ[w] & ~s) == 0 for w in range(n) if s >> w & 1):
            out.append(s)
    return out


class ModelBank:
    """All persistent models up to a size over ``natoms`` atoms, as arrays.

    Models are ordered by size, then relation bitmask, then valuation.
    """

    def __init__(self, max_worlds: int, natoms: int, reflexive: bool = False):
        self.max_worlds = max_worlds
        self.natoms = natoms
        self.reflexive = reflexive
        succ_rows, pred_rows, val_rows, full, meta = [], [], [], [], []
        for n in range(1, max_worlds + 1):
            for rel in transitive_relations(n, reflexive):
                succ = [0] * max_worlds
                pred = [0] * max_worlds
                for a, b in rel:
                    succ[a] |= 1 << b
                    pred[b] |= 1 << a
                ups = up_sets(n, rel)
                for vals in itertools.product(ups, repeat=natoms):
                    succ_rows.append(succ)
                    pred_rows.append(pred)
                    val_rows.append(list(vals) if natoms else [0])
                    full.append((1 << n) - 1)
                    meta.append((n, rel))
        self.succ = np.asarray(succ_rows, dtype=np.int64).reshape(len(meta), max_worlds)
        self.pred = np.asarray(pred_rows, dtype=np.int64).reshape(len(meta), max_worlds)
        self.val = np.asarray(val_rows, dtype=np.int64).reshape(len(meta), max(natoms, 1))
        self.full = np.asarray(full, dtype=np.int64)
        self.meta = meta

    def __len__(self):
        return len(self.meta)

    def model(self, i: int, atom_names) -> BplModel:
        n, rel = self.meta[i]
        val = {}
        for k, name in enumerate(atom_names):
            mask = int(self.val[i, k])
            val[name] = frozenset(w for w in range(n) if mask >> w & 1)
        return BplModel(n, rel, val)

    def eval_masks(self, formulas, atom_names) -> list[np.ndarray]:
        """World masks of each formula in every model of the bank."""
        prog = _kernels.Program(atom_names)
        roots = [prog.add(f) for f in formulas]
        if len(prog.atom_index) > self.natoms:
            raise ValueError("bank has fewer atoms than the formulas use")
        op, lhs, rhs = prog.arrays()
        out = _kernels.relational_eval(op, lhs, rhs, self.succ, self.pred, self.val, self.full)
        return [out[:, r] for r in roots]


@lru_cache(maxsize=32)
def model_bank(max_worlds: int, natoms: int, reflexive: bool = False) -> ModelBank:
    return ModelBank(max_worlds, natoms, reflexive)


def bpl_valid_upto(f: Formula, n: int):
    """``ValidUpTo(n)`` or the first ``Countermodel`` with at most ``n`` worlds."""
    _check_bpl_language(f)
    names = sorted(atoms(f))
    bank = model_bank(n, len(names))
    (mask,) = bank.eval_masks([f], names)
    bad = np.nonzero(mask != bank.full)[0]
    if len(bad) == 0:
        return ValidUpTo(n)
    i = int(bad[0])
    miss = int(bank.full[i] & ~mask[i])
    world = (miss & -miss).bit_length() - 1
    return Countermodel(bank.model(i, names), world)


def point_extension(m: BplModel, x: int) -> tuple[BplModel, int]:
    """Add a fresh world below ``x`` that sees ``x`` and everything ``x`` sees.

    The fresh world copies the valuation of ``x``.
    """
    if not 0 <= x < m.worlds:
        raise InvalidWorld(x)
    new = m.worlds
    rel = set(m.rel)
    rel.add((new, x))
    rel.update((new, y) for (u, y) in m.rel if u == x)
    val = {p: (ws | {new}) if x in ws else ws for p, ws in m.val.items()}
    return BplModel(m.worlds + 1, frozenset(rel), val), new


def neg(f: Formula) -> Formula:
    return RImp(f, BOT)
