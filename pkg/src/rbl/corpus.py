"""Formula corpora for cross-checking the oracles."""

from __future__ import annotations

from typing import Iterable, Sequence

from .syntax import BOT, TOP, And, Formula, Or, Prop, RImp, formula_depth, print_formula


def _canon(f: Formula, table: dict) -> Formula:
    """Order the arguments of ∧ and ∨ by printed form, recursively.

    Results are interned in ``table`` so equal subformulas are one object,
    which keeps memo lookups in the evaluators cheap.
    """
    if isinstance(f, (And, Or)):
        a, b = _canon(f.left, table), _canon(f.right, table)
        if print_formula(b) < print_formula(a):
            a, b = b, a
        f = type(f)(a, b)
    elif isinstance(f, RImp):
        f = RImp(_canon(f.left, table), _canon(f.right, table))
    return table.setdefault(f, f)


def bpl_corpus(max_depth: int = 3, atom_names: Sequence[str] = ("p", "q")) -> list[Formula]:
    """All formulas over the atoms, ``top`` and ``bot`` built with ∧, ∨, → up to ``max_depth``.

    A leaf has depth 1. Formulas equal up to swapping the arguments of ∧ or ∨
    are listed once. Order: by depth, then by construction order.
    """
    level: list[Formula] = [Prop(a) for a in atom_names] + [TOP, BOT]
    seen = {f: None for f in level}
    seen_table = {f: f for f in level}
    for _ in range(max_depth - 1):
        base = list(seen)
        new = []
        for i, a in enumerate(base):
            for j, b in enumerate(base):
                cands: Iterable[Formula] = [RImp(a, b)]
                if i <= j:
                    cands = [And(a, b), Or(a, b), RImp(a, b)]
                for f in cands:
                    g = _canon(f, seen_table)
                    if g not in seen:
                        seen[g] = None
                        new.append(g)
        if not new:
            break
    return [f for f in seen if formula_depth(f) <= max_depth]
