"""Derivation checking for the two algebraic sequent systems over simple sequents.

``SRBL`` has the weakening axioms ``Wl``, ``Wr`` and restricted contraction
``RC``; ``SStarRBL`` replaces them with ``Top1``, ``Top2`` and ``Tr``. All
other rules are shared. Derivations are explicit trees; nothing here searches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import sexpr
from .syntax import (TOP, And, Bot, Formula, LImp, Or, Prod, Prop, RImp, SimpleSequent, Top,
                     parse_simple_sequent, print_formula)


class SystemId(enum.Enum):
    SRBL = "SRBL"
    SStarRBL = "SStarRBL"


SHARED_RULES = frozenset({"Id", "Bot", "Top", "Cut", "D", "R1", "R2", "R3", "R4", "AndL1", "AndL2",
                          "AndR", "OrL", "OrR1", "OrR2"})
SYSTEM_RULES = {
    SystemId.SRBL: SHARED_RULES | {"Wl", "Wr", "RC"},
    SystemId.SStarRBL: SHARED_RULES | {"Top1", "Top2", "Tr"},
}
ARITY = {"Cut": 2, "AndR": 2, "OrL": 2, "R1": 1, "R2": 1, "R3": 1, "R4": 1, "AndL1": 1, "AndL2": 1,
         "OrR1": 1, "OrR2": 1}

SCHEMA_TEXT = {
    "Id": "A => A", "Bot": "bot => A", "Top": "A => top", "Cut": "A => B, B => C / A => C",
    "D": "A & (B | C) => (A & B) | (A & C)", "Wl": "A * top => A", "Wr": "top * A => A",
    "RC": "A * B => (A * B) * B", "R1": "A * B => C / B => A -> C", "R2": "B => A -> C / A * B => C",
    "R3": "A * B => C / A => C <- B", "R4": "A => C <- B / A * B => C",
    "AndL1": "A => C / A & B => C", "AndL2": "B => C / A & B => C", "AndR": "C => A, C => B / C => A & B",
    "OrL": "A => C, B => C / A | B => C", "OrR1": "C => A / C => A | B", "OrR2": "C => B / C => A | B",
    "Top1": "top => A -> A", "Top2": "A => top -> A", "Tr": "(A -> B) & (B -> C) => A -> C",
}


@dataclass(frozen=True)
class SimpleDerivation:
    conclusion: SimpleSequent
    rule: str
    premises: Sequence["SimpleDerivation"] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


@dataclass(frozen=True)
class SimpleCheck:
    ok: bool
    path: tuple = ()
    rule: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok


def _is(t, f) -> bool:
    return isinstance(f, t)


def _axiom_ok(rule: str, lhs: Formula, rhs: Formula) -> bool:
    if rule == "Id":
        return lhs == rhs
    if rule == "Bot":
        return _is(Bot, lhs)
    if rule == "Top":
        return _is(Top, rhs)
    if rule == "D":
        return (_is(And, lhs) and _is(Or, lhs.right) and _is(Or, rhs)
                and rhs.left == And(lhs.left, lhs.right.left) and rhs.right == And(lhs.left, lhs.right.right))
    if rule == "Wl":
        return _is(Prod, lhs) and lhs.right == TOP and lhs.left == rhs
    if rule == "Wr":
        return _is(Prod, lhs) and lhs.left == TOP and lhs.right == rhs
    if rule == "RC":
        return _is(Prod, lhs) and rhs == Prod(lhs, lhs.right)
    if rule == "Top1":
        return lhs == TOP and _is(RImp, rhs) and rhs.left == rhs.right
    if rule == "Top2":
        return rhs == RImp(TOP, lhs)
    if rule == "Tr":
        return (_is(And, lhs) and _is(RImp, lhs.left) and _is(RImp, lhs.right) and lhs.left.right == lhs.right.left
                and rhs == RImp(lhs.left.left, lhs.right.right))
    raise KeyError(rule)


def _rule_ok(rule: str, c: SimpleSequent, ps: Sequence[SimpleSequent]) -> bool:
    lhs, rhs = c.lhs, c.rhs
    if rule == "Cut":
        return ps[0].lhs == lhs and ps[1].rhs == rhs and ps[0].rhs == ps[1].lhs
    p = ps[0]
    if rule == "R1":  # A*B => C / B => A->C
        return _is(RImp, rhs) and p == SimpleSequent(Prod(rhs.left, lhs), rhs.right)
    if rule == "R2":  # B => A->C / A*B => C
        return _is(Prod, lhs) and p == SimpleSequent(lhs.right, RImp(lhs.left, rhs))
    if rule == "R3":  # A*B => C / A => C<-B
        return _is(LImp, rhs) and p == SimpleSequent(Prod(lhs, rhs.right), rhs.left)
    if rule == "R4":  # A => C<-B / A*B => C
        return _is(Prod, lhs) and p == SimpleSequent(lhs.left, LImp(rhs, lhs.right))
    if rule == "AndL1":
        return _is(And, lhs) and p == SimpleSequent(lhs.left, rhs)
    if rule == "AndL2":
        return _is(And, lhs) and p == SimpleSequent(lhs.right, rhs)
    if rule == "AndR":
        return _is(And, rhs) and ps[0] == SimpleSequent(lhs, rhs.left) and ps[1] == SimpleSequent(lhs, rhs.right)
    if rule == "OrL":
        return _is(Or, lhs) and ps[0] == SimpleSequent(lhs.left, rhs) and ps[1] == SimpleSequent(lhs.right, rhs)
    if rule == "OrR1":
        return _is(Or, rhs) and p == SimpleSequent(lhs, rhs.left)
    if rule == "OrR2":
        return _is(Or, rhs) and p == SimpleSequent(lhs, rhs.right)
    raise KeyError(rule)


def check_simple(d: SimpleDerivation, sys: SystemId) -> SimpleCheck:
    """Check every node; on failure report the first bad node (pre-order) and its schema.

    The path lists premise indices from the root.
    """
    def walk(node: SimpleDerivation, path: tuple) -> Optional[SimpleCheck]:
        rule = node.rule
        if rule not in SCHEMA_TEXT:
            return SimpleCheck(False, path, rule, "unknown rule")
        if rule not in SYSTEM_RULES[sys]:
            return SimpleCheck(False, path, rule, f"{rule} is not a rule of {sys.value}")
        want = ARITY.get(rule, 0)
        if len(node.premises) != want:
            return SimpleCheck(False, path, rule, f"{rule} takes {want} premises, got {len(node.premises)}")
        if want == 0:
            ok = _axiom_ok(rule, node.conclusion.lhs, node.conclusion.rhs)
        else:
            ok = _rule_ok(rule, node.conclusion, [p.conclusion for p in node.premises])
        if not ok:
            return SimpleCheck(False, path, rule, f"does not match {SCHEMA_TEXT[rule]}")
        for i, p in enumerate(node.premises):
            bad = walk(p, path + (i,))
            if bad is not None:
                return bad
        return None

    bad = walk(d, ())
    return SimpleCheck(True) if bad is None else bad


# ---------------------------------------------------------------------------
# construction helpers


def seq(lhs: Formula, rhs: Formula) -> SimpleSequent:
    return SimpleSequent(lhs, rhs)


def leaf(rule: str, lhs: Formula, rhs: Formula) -> SimpleDerivation:
    return SimpleDerivation(seq(lhs, rhs), rule)


def cut(d1: SimpleDerivation, d2: SimpleDerivation) -> SimpleDerivation:
    return SimpleDerivation(seq(d1.conclusion.lhs, d2.conclusion.rhs), "Cut", (d1, d2))


def r1(d: SimpleDerivation) -> SimpleDerivation:
    c = d.conclusion  # A*B => C
    return SimpleDerivation(seq(c.lhs.right, RImp(c.lhs.left, c.rhs)), "R1", (d,))


def r2(d: SimpleDerivation) -> SimpleDerivation:
    c = d.conclusion  # B => A->C
    return SimpleDerivation(seq(Prod(c.rhs.left, c.lhs), c.rhs.right), "R2", (d,))


def r3(d: SimpleDerivation) -> SimpleDerivation:
    c = d.conclusion  # A*B => C
    return SimpleDerivation(seq(c.lhs.left, LImp(c.rhs, c.lhs.right)), "R3", (d,))


def r4(d: SimpleDerivation) -> SimpleDerivation:
    c = d.conclusion  # A => C<-B
    return SimpleDerivation(seq(Prod(c.lhs, c.rhs.right), c.rhs.left), "R4", (d,))


def ident(f: Formula) -> SimpleDerivation:
    return leaf("Id", f, f)


def and_r(d1: SimpleDerivation, d2: SimpleDerivation) -> SimpleDerivation:
    return SimpleDerivation(seq(d1.conclusion.lhs, And(d1.conclusion.rhs, d2.conclusion.rhs)), "AndR", (d1, d2))


def and_l(i: int, other: Formula, d: SimpleDerivation) -> SimpleDerivation:
    c = d.conclusion
    lhs = And(c.lhs, other) if i == 1 else And(other, c.lhs)
    return SimpleDerivation(seq(lhs, c.rhs), f"AndL{i}", (d,))


def prod_mono_left(d: SimpleDerivation, b: Formula) -> SimpleDerivation:
    """From ``A => A'`` derive ``A * b => A' * b``."""
    a2 = d.conclusion.rhs
    return r4(cut(d, r3(ident(Prod(a2, b)))))


# ---------------------------------------------------------------------------
# the six witnesses for the equivalence of the two systems

_A, _B, _C = Prop("A"), Prop("B"), Prop("C")


def top1_from_wl(a: Formula = _A) -> SimpleDerivation:
    """``top => a -> a`` in SRBL."""
    return r1(leaf("Wl", Prod(a, TOP), a))


def top2_from_wr(a: Formula = _A) -> SimpleDerivation:
    """``a => top -> a`` in SRBL."""
    return r1(leaf("Wr", Prod(TOP, a), a))


def tr_from_rc(a: Formula = _A, b: Formula = _B, c: Formula = _C) -> SimpleDerivation:
    """``(a -> b) & (b -> c) => a -> c`` in SRBL.

    With ``x`` the antecedent: ``a*x => (a*x)*x => b*x => c``, then R1.
    """
    ab, bc = RImp(a, b), RImp(b, c)
    x = And(ab, bc)
    ax = Prod(a, x)
    a_x_to_b = r2(and_l(1, bc, ident(ab)))       # a*x => b
    b_x_to_c = r2(and_l(2, ab, ident(bc)))       # b*x => c
    contract = leaf("RC", ax, Prod(ax, x))       # a*x => (a*x)*x
    step = prod_mono_left(a_x_to_b, x)           # (a*x)*x => b*x
    return r1(cut(contract, cut(step, b_x_to_c)))


def wl_from_top1(a: Formula = _A) -> SimpleDerivation:
    """``a * top => a`` in SStarRBL."""
    return r2(leaf("Top1", TOP, RImp(a, a)))


def wr_from_top2(a: Formula = _A) -> SimpleDerivation:
    """``top * a => a`` in SStarRBL."""
    return r2(leaf("Top2", a, RImp(TOP, a)))


def rc_from_tr(a: Formula = _A, b: Formula = _B) -> SimpleDerivation:
    """``a * b => (a * b) * b`` in SStarRBL."""
    ab = Prod(a, b)
    abb = Prod(ab, b)
    left = r1(ident(ab))                         # b => a -> a*b
    right = r1(ident(abb))                       # b => a*b -> (a*b)*b
    both = and_r(left, right)
    tr = leaf("Tr", both.conclusion.rhs, RImp(a, abb))
    return r2(cut(both, tr))


def equivalence_witnesses() -> list[tuple[SystemId, SimpleDerivation]]:
    return [
        (SystemId.SRBL, top1_from_wl()),
        (SystemId.SRBL, top2_from_wr()),
        (SystemId.SRBL, tr_from_rc()),
        (SystemId.SStarRBL, wl_from_top1()),
        (SystemId.SStarRBL, wr_from_top2()),
        (SystemId.SStarRBL, rc_from_tr()),
    ]


def _has_limp(f: Formula) -> bool:
    if isinstance(f, LImp):
        return True
    return hasattr(f, "left") and (_has_limp(f.left) or _has_limp(f.right))


def sample_derivations(sys: SystemId) -> list[SimpleDerivation]:
    """A regression corpus over the atoms p, q: the witnesses and some residuation round trips.

    Formulas with a left residual are kept out of the ``Top2`` position: the
    two-copy lifting does not preserve them upward, so ``Top2`` can fail there.
    """
    p, q = Prop("p"), Prop("q")
    insts = [(p, q, p), (q, p, q), (And(p, q), q, p), (Or(p, q), q, TOP), (RImp(p, q), Prod(q, p), p),
             (LImp(p, q), p, Or(q, p))]
    out = []
    for a, b, c in insts:
        safe = b if _has_limp(a) else a
        if sys is SystemId.SRBL:
            out += [top1_from_wl(a), top2_from_wr(safe), tr_from_rc(a, b, c),
                    leaf("RC", Prod(a, b), Prod(Prod(a, b), b))]
        else:
            out += [wl_from_top1(a), wr_from_top2(safe), rc_from_tr(a, b),
                    leaf("Tr", And(RImp(a, b), RImp(b, c)), RImp(a, c))]
        out.append(r4(r3(r2(r1(ident(Prod(a, b)))))))
        out.append(SimpleDerivation(seq(a, Or(b, a)), "OrR2", (ident(a),)))
        out.append(leaf("D", And(a, Or(b, c)), Or(And(a, b), And(a, c))))
    return out


# ---------------------------------------------------------------------------
# S-expression format: (Rule "A => B" premise...)


def to_sexpr(d: SimpleDerivation) -> str:
    def build(n: SimpleDerivation):
        text = f"{print_formula(n.conclusion.lhs)} => {print_formula(n.conclusion.rhs)}"
        return [n.rule, sexpr.Quoted(text)] + [build(p) for p in n.premises]
    return sexpr.dumps(build(d))


def from_sexpr(text: str) -> SimpleDerivation:
    def build(x) -> SimpleDerivation:
        if not isinstance(x, list) or len(x) < 2 or isinstance(x[0], list) or not isinstance(x[1], sexpr.Quoted):
            raise sexpr.SexprError(f"expected (Rule \"sequent\" premise...), got {x!r}")
        return SimpleDerivation(parse_simple_sequent(x[1]), str(x[0]), tuple(build(y) for y in x[2:]))
    return build(sexpr.loads(text))
