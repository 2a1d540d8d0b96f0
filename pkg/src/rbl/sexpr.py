"""Minimal S-expressions: nested lists of bare words and double-quoted strings."""

from __future__ import annotations

import shlex


class SexprError(ValueError):
    pass


class Quoted(str):
    """A string that was written in double quotes."""


def _tokens(text: str):
    lex = shlex.shlex(text, posix=False, punctuation_chars="()")
    lex.commenters = ";"
    lex.wordchars += "-*&|~<>=,.'!"
    for tok in lex:
        if len(tok) >= 2 and tok[0] == tok[-1] == '"':
            yield Quoted(tok[1:-1])
        elif tok and set(tok) <= set("()"):
            yield from tok
        else:
            yield tok


def loads_all(text: str) -> list:
    stack: list = [[]]
    try:
        for tok in _tokens(text):
            if tok == "(" and not isinstance(tok, Quoted):
                stack.append([])
            elif tok == ")" and not isinstance(tok, Quoted):
                if len(stack) == 1:
                    raise SexprError("unbalanced ')'")
                done = stack.pop()
                stack[-1].append(done)
            else:
                stack[-1].append(tok)
    except ValueError as e:
        if isinstance(e, SexprError):
            raise
        raise SexprError(str(e)) from e
    if len(stack) != 1:
        raise SexprError("unbalanced '('")
    return stack[0]


def loads(text: str):
    items = loads_all(text)
    if len(items) != 1:
        raise SexprError(f"expected one expression, found {len(items)}")
    return items[0]


def quote(s: str) -> str:
    if '"' in s:
        raise SexprError("strings may not contain double quotes")
    return '"' + s + '"'


def dumps(x, indent: int = 0) -> str:
    """Render nested lists, one sublist per line once nesting starts."""
    if not isinstance(x, list):
        return quote(x) if isinstance(x, Quoted) else str(x)
    heads = [dumps(y) for y in x if not isinstance(y, list)]
    subs = [y for y in x if isinstance(y, list)]
    out = "(" + " ".join(heads)
    for y in subs:
        out += "\n" + " " * (indent + 2) + dumps(y, indent + 2)
    return out + ")"
