"""Proof trees as S-expressions: ``(Rule "path" "sequent" premise...)``.

The path is the hole address as a string over ``L``/``R`` (``""`` for the
root). A Mix node lists its paths separated by ``|``.
"""

from __future__ import annotations

from .. import sexpr
from ..syntax import parse_sequent, print_sequent
from .rules import MalformedProof, ProofTree


def _path_text(t: ProofTree) -> str:
    return "|".join(t.path) if t.rule == "Mix" else t.path


def to_sexpr(t: ProofTree) -> str:
    def build(n: ProofTree):
        return [n.rule, sexpr.Quoted(_path_text(n)), sexpr.Quoted(print_sequent(n.conclusion))] + [
            build(p) for p in n.premises
        ]
    return sexpr.dumps(build(t)) + "\n"


def from_sexpr(text: str) -> ProofTree:
    """Parse a proof; raises SexprError or MalformedProof on bad shape, ParseError on bad sequents."""
    def build(x) -> ProofTree:
        ok = (isinstance(x, list) and len(x) >= 3 and not isinstance(x[0], list)
              and isinstance(x[1], sexpr.Quoted) and isinstance(x[2], sexpr.Quoted))
        if not ok:
            raise sexpr.SexprError(f'expected (Rule "path" "sequent" premise...), got {x!r}')
        rule, path = str(x[0]), str(x[1])
        if set(path) - set("LR|"):
            raise MalformedProof(f"bad path {path!r}")
        p = tuple(path.split("|")) if rule == "Mix" else path
        if rule != "Mix" and "|" in path:
            raise MalformedProof(f"only Mix takes several paths, got {path!r}")
        return ProofTree(parse_sequent(x[2]), rule, p, tuple(build(y) for y in x[3:]))
    return build(sexpr.loads(text))
