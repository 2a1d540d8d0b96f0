"""Formulas, formula structures and their concrete text syntax.

Formula grammar (tightest binding first)::

    atom    := ident | bot | top | '(' formula ')' | '~' atom
    prod    := atom ('*' atom)*          left-assoc
    and     := prod ('&' prod)*          left-assoc
    or      := and ('|' and)*            left-assoc
    lchain  := or ('<-' or)*             left-assoc
    impl    := lchain ('->' impl)?       right-assoc
    formula := impl ('<->' impl)?

``~A`` abbreviates ``A -> bot`` and ``A <-> B`` abbreviates
``(A -> B) & (B -> A)``.

Structures use ``,`` for the product-structure and ``;`` for the
meet-structure, both left-associative, ``,`` binding tighter. A sequent is
``structure |- formula``; a simple sequent is ``formula |- formula``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Formula", "Prop", "Bot", "Top", "And", "Or", "Prod", "RImp", "LImp",
    "BOT", "TOP", "Structure", "Leaf", "OProd", "OMeet", "Sequent",
    "SimpleSequent", "ParseError", "parse_formula", "parse_structure",
    "parse_sequent", "parse_simple_sequent", "print_formula",
    "print_structure", "print_sequent", "mu", "subformulas", "atoms",
    "is_bpl", "formula_size", "formula_depth",
]


def _set_hash(self):
    object.__setattr__(self, "_hash", hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__match_args__)))


def _cached_hash(cls):
    """Hash once at construction; compare hashes before fields.

    Formulas and structures are deep trees used as dict keys all over the
    evaluators and the search, so the generated recursive ``__hash__`` was
    the main cost. Pickling rebuilds the node so the hash is recomputed in
    the receiving process.
    """
    names = cls.__match_args__

    if names == ("left", "right"):
        def __eq__(self, other):
            if self is other:
                return True
            if type(other) is not type(self):
                return NotImplemented
            return self._hash == other._hash and self.left == other.left and self.right == other.right
    else:
        def __eq__(self, other):
            if self is other:
                return True
            if type(other) is not type(self):
                return NotImplemented
            return self._hash == other._hash and all(getattr(self, f) == getattr(other, f) for f in names)

    cls.__hash__ = lambda self: self._hash
    cls.__eq__ = __eq__
    cls.__reduce__ = lambda self: (cls, tuple(getattr(self, f) for f in names))
    return cls


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@_cached_hash
@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class Prod(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class RImp(Formula):
    """``left -> right``: the right residual of the product."""

    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class LImp(Formula):
    """``left <- right``: the left residual of the product."""

    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


BOT = Bot()
TOP = Top()

BINARY = (And, Or, Prod, RImp, LImp)


class Structure:
    __slots__ = ()

    def __str__(self) -> str:
        return print_structure(self)


@_cached_hash
@dataclass(frozen=True, slots=True)
class Leaf(Structure):
    formula: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class OProd(Structure):
    left: Structure
    right: Structure
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@_cached_hash
@dataclass(frozen=True, slots=True)
class OMeet(Structure):
    left: Structure
    right: Structure
    _hash: int = field(init=False, repr=False, compare=False)
    __post_init__ = _set_hash


@dataclass(frozen=True, slots=True)
class Sequent:
    antecedent: Structure
    succedent: Formula

    def __post_init__(self):
        # an empty antecedent is not representable
        if not isinstance(self.antecedent, Structure):
            raise TypeError(f"antecedent must be a Structure, got {self.antecedent!r}")
        if not isinstance(self.succedent, Formula):
            raise TypeError(f"succedent must be a Formula, got {self.succedent!r}")

    def __str__(self) -> str:
        return print_sequent(self)


@dataclass(frozen=True, slots=True)
class SimpleSequent:
    lhs: Formula
    rhs: Formula

    def __str__(self) -> str:
        return f"{print_formula(self.lhs)} |- {print_formula(self.rhs)}"


# ---------------------------------------------------------------------------
# tokenizer / parser


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op><->|->|<-|\|-|=>|[()&|*~,;]))"
)

_ATOM_START = {"ident", "bot", "top", "(", "~"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        start = m.start("ident") if m.group("ident") else m.start("op")
        if m.group("ident"):
            word = m.group("ident")
            kind = word if word in ("bot", "top") else "ident"
            tokens.append((kind, word, len(text[:start].encode())))
        else:
            op = m.group("op")
            tokens.append((op, op, len(text[:start].encode())))
        pos = m.end()
    tokens.append(("eof", "", len(text.encode())))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def offset(self) -> int:
        return self.tokens[self.i][2]

    def take(self, kind: str):
        if self.peek() != kind:
            self.fail({kind})
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, value, off = self.tokens[self.i]
        what = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {what}", off, expected)

    # formulas
    def formula(self) -> Formula:
        left = self.impl()
        if self.peek() == "<->":
            self.i += 1
            right = self.impl()
            return And(RImp(left, right), RImp(right, left))
        return left

    def impl(self) -> Formula:
        left = self.lchain()
        if self.peek() == "->":
            self.i += 1
            return RImp(left, self.impl())
        return left

    def lchain(self) -> Formula:
        f = self.disj()
        while self.peek() == "<-":
            self.i += 1
            f = LImp(f, self.disj())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.prod()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.prod())
        return f

    def prod(self) -> Formula:
        f = self.atom()
        while self.peek() == "*":
            self.i += 1
            f = Prod(f, self.atom())
        return f

    def atom(self) -> Formula:
        kind = self.peek()
        if kind == "ident":
            return Prop(self.take("ident")[1])
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "top":
            self.i += 1
            return TOP
        if kind == "~":
            self.i += 1
            return RImp(self.atom(), BOT)
        if kind == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        self.fail(_ATOM_START)

    # structures
    def structure(self) -> Structure:
        s = self.sprod()
        while self.peek() == ";":
            self.i += 1
            s = OMeet(s, self.sprod())
        return s

    def sprod(self) -> Structure:
        s = self.sterm()
        while self.peek() == ",":
            self.i += 1
            s = OProd(s, self.sterm())
        return s

    def sterm(self) -> Structure:
        start = self.i
        try:
            f = self.formula()
            if self.peek() in (",", ";", ")", "|-", "=>", "eof"):
                return Leaf(f)
        except ParseError:
            if self.tokens[start][0] != "(":
                raise
        self.i = start
        if self.peek() != "(":
            self.formula()
            self.fail({",", ";", ")", "|-"})
        self.i += 1
        s = self.structure()
        self.take(")")
        return s

    def turnstile(self):
        if self.peek() in ("|-", "=>"):
            self.i += 1
        else:
            self.fail({"|-"})

    def end(self):
        if self.peek() != "eof":
            self.fail({"end of input"})


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.end()
    return f


def parse_structure(text: str) -> Structure:
    p = _Parser(text)
    s = p.structure()
    p.end()
    return s


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    s = p.structure()
    p.turnstile()
    f = p.formula()
    p.end()
    return Sequent(s, f)


def parse_simple_sequent(text: str) -> SimpleSequent:
    p = _Parser(text)
    lhs = p.formula()
    p.turnstile()
    rhs = p.formula()
    p.end()
    return SimpleSequent(lhs, rhs)


# ---------------------------------------------------------------------------
# printer

_PREC = {RImp: 1, LImp: 1, Or: 2, And: 3, Prod: 4}
_SYM = {RImp: "->", LImp: "<-", Or: "|", And: "&", Prod: "*"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def _wrap(f: Formula, parens: bool) -> str:
    s = print_formula(f)
    return f"({s})" if parens else s


def print_formula(f: Formula) -> str:
    t = type(f)
    if t is Prop:
        return f.name
    if t is Bot:
        return "bot"
    if t is Top:
        return "top"
    if t is RImp:
        return f"{_wrap(f.left, _prec(f.left) < 1 or t is type(f.left))} -> {print_formula(f.right)}"
    if t is LImp:
        return f"{_wrap(f.left, type(f.left) is RImp)} <- {_wrap(f.right, _prec(f.right) <= 1)}"
    k = _PREC[t]
    return f"{_wrap(f.left, _prec(f.left) < k)} {_SYM[t]} {_wrap(f.right, _prec(f.right) <= k)}"


def print_structure(s: Structure) -> str:
    if type(s) is Leaf:
        return print_formula(s.formula)
    k, sym = (2, ",") if type(s) is OProd else (1, ";")
    left = print_structure(s.left)
    right = print_structure(s.right)
    if _sprec(s.left) < k:
        left = f"({left})"
    if _sprec(s.right) <= k:
        right = f"({right})"
    return f"{left} {sym} {right}"


def _sprec(s: Structure) -> int:
    t = type(s)
    return 3 if t is Leaf else 2 if t is OProd else 1


def print_sequent(s: Sequent) -> str:
    return f"{print_structure(s.antecedent)} |- {print_formula(s.succedent)}"


# ---------------------------------------------------------------------------
# structural helpers


def mu(s: Structure) -> Formula:
    """The formula a structure stands for: product-structure is ``*``, meet-structure ``&``."""
    t = type(s)
    if t is Leaf:
        return s.formula
    if t is OProd:
        return Prod(mu(s.left), mu(s.right))
    return And(mu(s.left), mu(s.right))


def subformulas(f: Formula) -> set[Formula]:
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, BINARY):
            stack.append(g.left)
            stack.append(g.right)
    return out


def atoms(f: Union[Formula, Structure, Sequent, SimpleSequent]) -> set[str]:
    if isinstance(f, Sequent):
        return atoms(f.antecedent) | atoms(f.succedent)
    if isinstance(f, SimpleSequent):
        return atoms(f.lhs) | atoms(f.rhs)
    if isinstance(f, Structure):
        return atoms(mu(f))
    return {g.name for g in subformulas(f) if type(g) is Prop}


def is_bpl(f: Formula) -> bool:
    """True when ``f`` avoids the product and the left residual."""
    stack = [f]
    while stack:
        g = stack.pop()
        t = type(g)
        if t is Prod or t is LImp:
            return False
        if t is And or t is Or or t is RImp:
            stack.append(g.left)
            stack.append(g.right)
    return True


def formula_size(f: Formula) -> int:
    if isinstance(f, BINARY):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1


def formula_depth(f: Formula) -> int:
    """Nesting depth counting a leaf as 1."""
    if isinstance(f, BINARY):
        return 1 + max(formula_depth(f.left), formula_depth(f.right))
    return 1


def leaves(s: Structure, path: str = "") -> Iterator[tuple[str, Formula]]:
    """Yield ``(path, formula)`` for each leaf; paths are strings over ``L``/``R``."""
    if type(s) is Leaf:
        yield path, s.formula
    else:
        yield from leaves(s.left, path + "L")
        yield from leaves(s.right, path + "R")


def nodes(s: Structure, path: str = "") -> Iterator[tuple[str, Structure]]:
    yield path, s
    if type(s) is not Leaf:
        yield from nodes(s.left, path + "L")
        yield from nodes(s.right, path + "R")


def get_at(s: Structure, path: str) -> Structure:
    for c in path:
        if type(s) is Leaf:
            raise KeyError(path)
        s = s.left if c == "L" else s.right
    return s


def replace_at(s: Structure, path: str, new: Structure) -> Structure:
    if not path:
        return new
    if type(s) is Leaf:
        raise KeyError(path)
    if path[0] == "L":
        return type(s)(replace_at(s.left, path[1:], new), s.right)
    return type(s)(s.left, replace_at(s.right, path[1:], new))
