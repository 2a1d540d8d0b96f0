"""Finite residuated basic algebras.

An algebra is a bounded distributive lattice with a binary product that is
residuated on both sides and satisfies ``a*top <= a``, ``top*a <= a`` and the
restricted contraction ``a*b <= (a*b)*b``. Elements are ``0..n-1``; the
canonical labelling puts the bottom at 0, the top at ``n-1`` and lists
elements along a linear extension of the order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Optional

import numpy as np

from . import _kernels
from .syntax import And, Bot, Formula, Or, Prod, Prop, RImp, Top, atoms


class NotResiduated(ValueError):
    pass


class SizeLimit(ValueError):
    pass


class MissingAtom(KeyError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


def _join_of(leq: np.ndarray, join: np.ndarray, bot: int, xs) -> int:
    acc = bot
    for x in xs:
        acc = int(join[acc, x])
    return acc


@dataclass(frozen=True, eq=False)
class FiniteRba:
    size: int
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    prod: np.ndarray
    bot: int
    top: int
    rimp: np.ndarray
    limp: np.ndarray

    @classmethod
    def from_tables(cls, leq, prod) -> "FiniteRba":
        """Build from an order and a product table; meets, joins and residuals are derived.

        Residual tables are computed as joins of the relevant sets even when
        the product is not residuated; ``check_rba_axioms`` reports that case.
        """
        leq = np.asarray(leq, dtype=bool)
        prod = np.asarray(prod, dtype=np.int64)
        n = leq.shape[0]
        meet, join = lattice_ops(leq)
        bot = next(x for x in range(n) if leq[x].all())
        top = next(x for x in range(n) if leq[:, x].all())
        rimp = np.zeros((n, n), dtype=np.int64)
        limp = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            for c in range(n):
                rimp[a, c] = _join_of(leq, join, bot, (x for x in range(n) if leq[prod[a, x], c]))
                # c <- a is the join of {x : x*a <= c}
                limp[c, a] = _join_of(leq, join, bot, (x for x in range(n) if leq[prod[x, a], c]))
        return cls(n, leq, meet, join, prod, bot, top, rimp, limp)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "bot": self.bot,
            "top": self.top,
            "leq": self.leq.astype(int).tolist(),
            "meet": self.meet.tolist(),
            "join": self.join.tolist(),
            "prod": self.prod.tolist(),
            "rimp": self.rimp.tolist(),
            "limp": self.limp.tolist(),
        }

    @classmethod
    def from_json(cls, data) -> "FiniteRba":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_tables(data["leq"], data["prod"])

    def key(self) -> tuple:
        return (self.size, self.leq.tobytes(), self.prod.tobytes())


class NotALattice(ValueError):
    pass


def lattice_ops(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = leq.shape[0]
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            lower = [x for x in range(n) if leq[x, a] and leq[x, b]]
            upper = [x for x in range(n) if leq[a, x] and leq[b, x]]
            glb = [x for x in lower if all(leq[y, x] for y in lower)]
            lub = [x for x in upper if all(leq[x, y] for y in upper)]
            if len(glb) != 1 or len(lub) != 1:
                raise NotALattice((a, b))
            meet[a, b] = glb[0]
            join[a, b] = lub[0]
    return meet, join


def residual_right(alg: FiniteRba, a: int, c: int) -> int:
    """``a -> c``: the join of ``{x : a*x <= c}``."""
    r = _join_of(alg.leq, alg.join, alg.bot, (x for x in range(alg.size) if alg.leq[alg.prod[a, x], c]))
    if not alg.leq[alg.prod[a, r], c]:
        raise NotResiduated(f"{a}*{r} is not below {c}")
    return r


def residual_left(alg: FiniteRba, c: int, b: int) -> int:
    """``c <- b``: the join of ``{x : x*b <= c}``."""
    r = _join_of(alg.leq, alg.join, alg.bot, (x for x in range(alg.size) if alg.leq[alg.prod[x, b], c]))
    if not alg.leq[alg.prod[r, b], c]:
        raise NotResiduated(f"{r}*{b} is not below {c}")
    return r


# ---------------------------------------------------------------------------
# axiom checks


def check_lattice(alg: FiniteRba) -> list[Diagnostic]:
    out = []
    n, leq, meet, join = alg.size, alg.leq, alg.meet, alg.join
    for a in range(n):
        if not leq[a, a]:
            out.append(Diagnostic("reflexive", (a,)))
        if not (leq[alg.bot, a] and leq[a, alg.top]):
            out.append(Diagnostic("bounds", (a,)))
        for b in range(n):
            if a != b and leq[a, b] and leq[b, a]:
                out.append(Diagnostic("antisymmetric", (a, b)))
            m, j = meet[a, b], join[a, b]
            if not (leq[m, a] and leq[m, b]):
                out.append(Diagnostic("meet below", (a, b)))
            if not (leq[a, j] and leq[b, j]):
                out.append(Diagnostic("join above", (a, b)))
            for c in range(n):
                if leq[a, b] and leq[b, c] and not leq[a, c]:
                    out.append(Diagnostic("transitive", (a, b, c)))
                if leq[c, a] and leq[c, b] and not leq[c, m]:
                    out.append(Diagnostic("meet greatest", (a, b, c)))
                if leq[a, c] and leq[b, c] and not leq[j, c]:
                    out.append(Diagnostic("join least", (a, b, c)))
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    out.append(Diagnostic("distributive", (a, b, c)))
    return out


def check_rba_axioms(alg: FiniteRba) -> list[Diagnostic]:
    """Empty list iff ``alg`` is a residuated basic algebra."""
    out = check_lattice(alg)
    n, leq, prod, top = alg.size, alg.leq, alg.prod, alg.top
    for a in range(n):
        if not leq[prod[a, top], a]:
            out.append(Diagnostic("w1", (a,)))
        if not leq[prod[top, a], a]:
            out.append(Diagnostic("w2", (a,)))
        for b in range(n):
            ab = prod[a, b]
            if not leq[ab, prod[ab, b]]:
                out.append(Diagnostic("c_r", (a, b)))
            for c in range(n):
                lhs = bool(leq[prod[a, b], c])
                if lhs != bool(leq[b, alg.rimp[a, c]]):
                    out.append(Diagnostic("residuation_right", (a, b, c)))
                if lhs != bool(leq[a, alg.limp[c, b]]):
                    out.append(Diagnostic("residuation_left", (a, b, c)))
    return out


def check_basic_reduct(alg: FiniteRba) -> list[Diagnostic]:
    """Basic-algebra conditions on the right residual, plus their stock consequences."""
    out = []
    n, leq, meet, join, imp, top = alg.size, alg.leq, alg.meet, alg.join, alg.rimp, alg.top
    for a in range(n):
        if imp[a, a] != top:
            out.append(Diagnostic("basic3: a->a = top", (a,)))
        if not leq[a, imp[top, a]]:
            out.append(Diagnostic("basic4: a <= top->a", (a,)))
        for b in range(n):
            for c in range(n):
                if imp[a, meet[b, c]] != meet[imp[a, b], imp[a, c]]:
                    out.append(Diagnostic("basic1: a->(b&c) = (a->b)&(a->c)", (a, b, c)))
                if imp[join[b, c], a] != meet[imp[b, a], imp[c, a]]:
                    out.append(Diagnostic("basic2: (b|c)->a = (b->a)&(c->a)", (a, b, c)))
                if not leq[meet[imp[a, b], imp[b, c]], imp[a, c]]:
                    out.append(Diagnostic("basic5: (a->b)&(b->c) <= a->c", (a, b, c)))
                if leq[a, b]:
                    if not leq[imp[c, a], imp[c, b]]:
                        out.append(Diagnostic("fact1: c->a <= c->b", (a, b, c)))
                    if not leq[imp[b, c], imp[a, c]]:
                        out.append(Diagnostic("fact1: b->c <= a->c", (a, b, c)))
                    if imp[a, b] != top:
                        out.append(Diagnostic("fact1: a->b = top", (a, b)))
                if leq[meet[a, b], c] and not leq[a, imp[b, c]]:
                    out.append(Diagnostic("fact2: a&b <= c implies a <= b->c", (a, b, c)))
    return out


def check_product_laws(alg: FiniteRba, literal_v: bool = True) -> list[Diagnostic]:
    """Distribution, semi-associativity and monotonicity laws of the product and residuals.

    ``literal_v`` selects the left-residual clause ``a<=b => a<-c <= b<-a``
    exactly as printed; otherwise the textbook ``a<=b => a<-c <= b<-c``.
    Both also check ``c<-b <= c<-a``.
    """
    out = []
    n, leq, prod, join = alg.size, alg.leq, alg.prod, alg.join
    rimp, limp = alg.rimp, alg.limp
    for a, b, c in itertools.product(range(n), repeat=3):
        if not leq[prod[join[b, c], a], join[prod[b, a], prod[c, a]]]:
            out.append(Diagnostic("(i) (b|c)*a <= b*a | c*a", (a, b, c)))
        if not leq[prod[a, prod[b, c]], prod[prod[a, b], c]]:
            out.append(Diagnostic("(ii) a*(b*c) <= (a*b)*c", (a, b, c)))
        if leq[a, b]:
            if not (leq[prod[c, a], prod[c, b]] and leq[prod[a, c], prod[b, c]]):
                out.append(Diagnostic("(iii) product monotone", (a, b, c)))
            if not (leq[rimp[c, a], rimp[c, b]] and leq[rimp[b, c], rimp[a, c]]):
                out.append(Diagnostic("(iv) right residual monotone", (a, b, c)))
            first = limp[b, a] if literal_v else limp[b, c]
            if not (leq[limp[a, c], first] and leq[limp[c, b], limp[c, a]]):
                out.append(Diagnostic("(v) left residual monotone", (a, b, c)))
    return out


def unit_elements(alg: FiniteRba) -> list[int]:
    n = alg.size
    return [e for e in range(n) if all(alg.prod[e, a] == a and alg.prod[a, e] == a for a in range(n))]


def check_unit_remark(alg: FiniteRba) -> list[Diagnostic]:
    """When a two-sided unit exists, ``top -> x <= x`` must hold for all x."""
    out = []
    if unit_elements(alg):
        for x in range(alg.size):
            if not alg.leq[alg.rimp[alg.top, x], x]:
                out.append(Diagnostic("unit implies top->x <= x", (x,)))
    return out


def check_equality_criterion(alg: FiniteRba) -> list[Diagnostic]:
    out = []
    n, leq = alg.size, alg.leq
    for a in range(n):
        for b in range(n):
            same_downsets = all(bool(leq[x, a]) == bool(leq[x, b]) for x in range(n))
            if same_downsets != (a == b):
                out.append(Diagnostic("a=b iff same down-sets", (a, b)))
    return out


# ---------------------------------------------------------------------------
# enumeration


def _is_transitive(n, leq) -> bool:
    return all(not (leq[a][b] and leq[b][c]) or leq[a][c]
               for a in range(n) for b in range(n) for c in range(n))


@lru_cache(maxsize=None)
def distributive_lattices(n: int) -> tuple:
    """Bounded distributive lattices on ``n`` elements, one per isomorphism class.

    Candidates are the partial orders whose labelling is a linear extension
    (every class has one); each is canonicalised by the least upper-triangle
    encoding over relabellings that stay linear extensions.
    """
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    seen = {}
    for mask in range(1 << len(pairs)):
        leq = [[a == b for b in range(n)] for a in range(n)]
        for i, (a, b) in enumerate(pairs):
            if mask >> i & 1:
                leq[a][b] = True
        if not _is_transitive(n, leq):
            continue
        arr = np.array(leq, dtype=bool)
        try:
            meet, join = lattice_ops(arr)
        except NotALattice:
            continue
        if any(meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]
               for a in range(n) for b in range(n) for c in range(n)):
            continue
        best = None
        for perm in itertools.permutations(range(n)):
            if any(leq[a][b] and perm[a] > perm[b] for a in range(n) for b in range(n)):
                continue
            code = tuple(any(leq[a][b] and perm[a] == i and perm[b] == j
                             for a in range(n) for b in range(n)) for i, j in pairs)
            if best is None or code < best:
                best = code
        if best not in seen:
            rel = np.eye(n, dtype=bool)
            for bit, (i, j) in zip(best, pairs):
                rel[i, j] = bit
            seen[best] = rel
    return tuple(seen[k] for k in sorted(seen))


def join_irreducibles(leq: np.ndarray, join: np.ndarray) -> list[int]:
    n = leq.shape[0]
    bot = next(x for x in range(n) if leq[x].all())
    out = []
    for j in range(n):
        if j == bot:
            continue
        below = [x for x in range(n) if leq[x, j] and x != j]
        if _join_of(leq, join, bot, below) != j:
            out.append(j)
    return out


def _products_on(leq: np.ndarray) -> Iterator[np.ndarray]:
    """Product tables on one lattice that preserve joins and bottom in each argument
    and satisfy both weakening laws; restricted contraction is checked by the caller."""
    n = leq.shape[0]
    meet, join = lattice_ops(leq)
    bot = next(x for x in range(n) if leq[x].all())
    js = join_irreducibles(leq, join)
    cells = [(j, k) for j in js for k in js]
    choice: dict = {}
    # weakening on both sides forces f(j, k) <= j & k
    options = {(j, k): [x for x in range(n) if leq[x, meet[j, k]]] for j, k in cells}

    def consistent(j, k, x):
        for (j2, k2), y in choice.items():
            if leq[j2, j] and leq[k2, k] and not leq[y, x]:
                return False
            if leq[j, j2] and leq[k, k2] and not leq[x, y]:
                return False
        return True

    def extend(i):
        if i == len(cells):
            table = np.full((n, n), bot, dtype=np.int64)
            for a in range(n):
                for b in range(n):
                    acc = bot
                    for (j, k), y in choice.items():
                        if leq[j, a] and leq[k, b]:
                            acc = join[acc, y]
                    table[a, b] = acc
            yield table
            return
        cell = cells[i]
        for x in options[cell]:
            if consistent(*cell, x):
                choice[cell] = x
                yield from extend(i + 1)
                del choice[cell]

    yield from extend(0)


def enumerate_rbas(n: int) -> Iterator[FiniteRba]:
    """Every residuated basic algebra of size at most ``n`` on the canonical lattices.

    Product tables are not identified up to lattice automorphism.
    """
    if n > 5:
        raise SizeLimit(n)
    for size in range(1, n + 1):
        for leq in distributive_lattices(size):
            for prod in _products_on(leq):
                if all(leq[prod[a, b], prod[prod[a, b], b]] for a in range(size) for b in range(size)):
                    yield FiniteRba.from_tables(leq, prod)


@lru_cache(maxsize=8)
def rbas_upto(n: int) -> tuple:
    return tuple(enumerate_rbas(n))


# ---------------------------------------------------------------------------
# evaluation


def eval_in_algebra(alg: FiniteRba, assign: Mapping[str, int], f: Formula) -> int:
    t = type(f)
    if t is Prop:
        if f.name not in assign:
            raise MissingAtom(f.name)
        return int(assign[f.name])
    if t is Top:
        return alg.top
    if t is Bot:
        return alg.bot
    x = eval_in_algebra(alg, assign, f.left)
    y = eval_in_algebra(alg, assign, f.right)
    if t is And:
        return int(alg.meet[x, y])
    if t is Or:
        return int(alg.join[x, y])
    if t is Prod:
        return int(alg.prod[x, y])
    if t is RImp:
        return int(alg.rimp[x, y])
    return int(alg.limp[x, y])


def _all_assignments(size: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 1), dtype=np.int64)
    grid = np.indices((size,) * k).reshape(k, -1).T
    return np.ascontiguousarray(grid, dtype=np.int64)


def _batch(alg: FiniteRba, formulas, names) -> list[np.ndarray]:
    prog = _kernels.Program(names)
    roots = [prog.add(f) for f in formulas]
    op, lhs, rhs = prog.arrays()
    assign = _all_assignments(alg.size, len(names))
    out = _kernels.algebra_eval(op, lhs, rhs, alg.meet, alg.join, alg.prod, alg.rimp, alg.limp,
                                alg.top, alg.bot, assign)
    return [out[:, r] for r in roots], assign


def algebra_valid(alg: FiniteRba, f: Formula) -> bool:
    names = sorted(atoms(f))
    (vals,), _ = _batch(alg, [f], names)
    return bool((vals == alg.top).all())


def sequent_counterexample(alg: FiniteRba, lhs: Formula, rhs: Formula) -> Optional[dict]:
    """An assignment with ``lhs`` not below ``rhs``, or None when the sequent is valid."""
    names = sorted(atoms(lhs) | atoms(rhs))
    (lv, rv), assign = _batch(alg, [lhs, rhs], names)
    bad = np.nonzero(~alg.leq[lv, rv])[0]
    if len(bad) == 0:
        return None
    row = assign[int(bad[0])]
    return {name: int(row[i]) for i, name in enumerate(names)}


def sequent_valid(alg: FiniteRba, lhs: Formula, rhs: Formula) -> bool:
    return sequent_counterexample(alg, lhs, rhs) is None
