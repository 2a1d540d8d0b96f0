"""Hilbert-style proofs for basic propositional logic.

Proofs are explicit certificates: a list of steps, each an axiom instance or
a modus ponens application on earlier steps. Steps are numbered from 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .syntax import Formula, Prop, RImp, parse_formula, print_formula


class MissingMetaVar(KeyError):
    pass


class ProofFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_SCHEMAS = {
    1: "A -> A",
    2: "A -> (B -> A)",
    3: "(A -> B) & (B -> C) -> (A -> C)",
    4: "(A -> C) & (B -> C) -> (A | B -> C)",
    5: "A & B -> A",
    6: "A & B -> B",
    7: "A -> A | B",
    8: "B -> A | B",
    9: "A -> (B -> A & B)",
    10: "(A -> B) & (A -> C) -> (A -> B & C)",
    11: "A & (B | C) -> (A & B) | (A & C)",
    12: "bot -> A",
}

AXIOM_SCHEMAS: dict[int, Formula] = {k: parse_formula(v) for k, v in _SCHEMAS.items()}


def _substitute(schema: Formula, subst: Mapping[str, Formula]) -> Formula:
    if isinstance(schema, Prop):
        if schema.name not in subst:
            raise MissingMetaVar(schema.name)
        return subst[schema.name]
    if hasattr(schema, "left"):
        return type(schema)(_substitute(schema.left, subst), _substitute(schema.right, subst))
    return schema


def axiom_instance(id: int, subst: Mapping[str, Formula]) -> Formula:
    if id not in AXIOM_SCHEMAS:
        raise ValueError(f"no axiom {id}")
    return _substitute(AXIOM_SCHEMAS[id], subst)


def _match(schema: Formula, f: Formula, subst: dict) -> bool:
    if isinstance(schema, Prop):
        bound = subst.get(schema.name)
        if bound is None:
            subst[schema.name] = f
            return True
        return bound == f
    if type(schema) is not type(f):
        return False
    if hasattr(schema, "left"):
        return _match(schema.left, f.left, subst) and _match(schema.right, f.right, subst)
    return True


def match_axiom(id: int, f: Formula) -> Optional[dict]:
    """Substitution making ``f`` an instance of axiom ``id``, or None."""
    subst: dict = {}
    return subst if _match(AXIOM_SCHEMAS[id], f, subst) else None


def which_axiom(f: Formula) -> Optional[int]:
    for id in AXIOM_SCHEMAS:
        if match_axiom(id, f) is not None:
            return id
    return None


# ---------------------------------------------------------------------------
# proofs


@dataclass(frozen=True)
class Axiom:
    id: int
    subst: Optional[Mapping[str, Formula]] = None


@dataclass(frozen=True)
class MP:
    i: int  # step holding A
    j: int  # step holding A -> B


@dataclass(frozen=True)
class HilbertStep:
    formula: Formula
    justification: Union[Axiom, MP]


@dataclass(frozen=True)
class HilbertProof:
    steps: Sequence[HilbertStep] = field(default_factory=tuple)


@dataclass(frozen=True)
class HilbertCheck:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _check_step(p: HilbertProof, n: int) -> str:
    step = p.steps[n - 1]
    just = step.justification
    if isinstance(just, Axiom):
        if just.id not in AXIOM_SCHEMAS:
            return f"no axiom {just.id}"
        if just.subst is None:
            if match_axiom(just.id, step.formula) is None:
                return f"not an instance of axiom {just.id}"
            return ""
        try:
            inst = axiom_instance(just.id, just.subst)
        except MissingMetaVar as e:
            return f"substitution misses {e.args[0]}"
        if inst != step.formula:
            return f"axiom {just.id} under the substitution gives {print_formula(inst)}"
        return ""
    if isinstance(just, MP):
        for k in (just.i, just.j):
            if not 1 <= k < n:
                return f"mp refers to step {k}, which is not earlier"
        major = p.steps[just.j - 1].formula
        minor = p.steps[just.i - 1].formula
        if major != RImp(minor, step.formula):
            return f"step {just.j} is not {print_formula(RImp(minor, step.formula))}"
        return ""
    return f"unknown justification {just!r}"


def check_hilbert_proof(p: HilbertProof, goal: Formula) -> HilbertCheck:
    """Valid iff every step is justified and the last step is ``goal``.

    The result is falsy on failure and names the first bad step.
    """
    if not p.steps:
        return HilbertCheck(False, None, "empty proof")
    for n in range(1, len(p.steps) + 1):
        reason = _check_step(p, n)
        if reason:
            return HilbertCheck(False, n, reason)
    if p.steps[-1].formula != goal:
        return HilbertCheck(False, len(p.steps), "last step is not the goal")
    return HilbertCheck(True)


_LINE = re.compile(r"^\s*(\d+)\s*\.\s*(.*);\s*(ax\s+(\d+)|mp\s+(\d+)\s+(\d+))\s*$")


def parse_hilbert_proof(text: str) -> HilbertProof:
    """Read ``n. <formula> ; ax <id>`` or ``n. <formula> ; mp <i> <j>`` lines.

    Blank lines and ``#`` comments are skipped; steps must be numbered 1, 2, ...
    """
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ProofFormatError(lineno, f"cannot read {raw!r}")
        if int(m.group(1)) != len(steps) + 1:
            raise ProofFormatError(lineno, f"expected step {len(steps) + 1}")
        try:
            f = parse_formula(m.group(2))
        except ValueError as e:
            raise ProofFormatError(lineno, str(e)) from e
        if m.group(4):
            just: Union[Axiom, MP] = Axiom(int(m.group(4)))
        else:
            just = MP(int(m.group(5)), int(m.group(6)))
        steps.append(HilbertStep(f, just))
    return HilbertProof(tuple(steps))


def format_hilbert_proof(p: HilbertProof) -> str:
    lines = []
    for n, s in enumerate(p.steps, 1):
        j = s.justification
        tail = f"ax {j.id}" if isinstance(j, Axiom) else f"mp {j.i} {j.j}"
        lines.append(f"{n}. {print_formula(s.formula)} ; {tail}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# implicational fragment


def gamma_imp(gamma: Sequence[Formula], a: Formula) -> Formula:
    """``Γ -> A`` with Γ right-nested; the empty Γ gives A itself."""
    for g in reversed(gamma):
        a = RImp(g, a)
    return a


def kikuchi_schema(id: str, gamma: Sequence[Formula] = (), subst: Optional[Mapping[str, Formula]] = None) -> Formula:
    """Instances of the implicational axioms I, K and Bstar.

    Missing metavariables default to the atoms A, B, C. ``gamma`` is used by
    Bstar only.
    """
    s = {"A": Prop("A"), "B": Prop("B"), "C": Prop("C")}
    s.update(subst or {})
    a, b, c = s["A"], s["B"], s["C"]
    if id == "I":
        return RImp(a, a)
    if id == "K":
        return RImp(a, RImp(b, a))
    if id in ("Bstar", "B*"):
        return RImp(gamma_imp(gamma, RImp(b, c)),
                    RImp(gamma_imp(gamma, RImp(a, b)), gamma_imp(gamma, RImp(a, c))))
    raise ValueError(f"unknown schema {id}")
