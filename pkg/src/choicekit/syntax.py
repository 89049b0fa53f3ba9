"""Text syntax for choice-logic formulas.

Grammar, loosest binding first::

    formula := disj (CHOICE formula)?      # right-associative, one connective per chain
    disj    := conj ("|" conj)*            # left-associative
    conj    := unary ("&" unary)*          # left-associative
    unary   := "~" unary | atom | "TRUE" | "FALSE" | "(" formula ")"

Built-in choice tokens: ``|>`` (QCL), ``&>`` (CCL), ``@>`` (LCL), ``*>``
(SCCL).  Registries may declare further tokens.  ``#`` starts a line comment.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import List, Optional

from .connectives import (
    LEXICOGRAPHIC,
    ORDERED_CONJUNCTION,
    ORDERED_DISJUNCTION,
    SIMPLE_CONJUNCTION,
    LogicRegistry,
    UnknownConnectiveError,
)
from .kernel import BOTTOM, RESERVED_PREFIX, TOP, And, Atom, Choice, Formula, Neg, Or

__all__ = [
    "parse",
    "render",
    "FormulaSyntaxError",
    "NonAssociativeChainWarning",
    "RESERVED_WORDS",
]

RESERVED_WORDS = frozenset({"TRUE", "FALSE"})

_BUILTIN_TOKENS = {
    s.token: s.name
    for s in (ORDERED_DISJUNCTION, ORDERED_CONJUNCTION, LEXICOGRAPHIC, SIMPLE_CONJUNCTION)
}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class NonAssociativeChainWarning(UserWarning):
    pass


@dataclass
class _Tok:
    kind: str  # "ident", "op", "choice", "eof"
    value: str
    pos: int


def _tokenize(reg: LogicRegistry, text: str) -> List[_Tok]:
    choice_tokens = set(_BUILTIN_TOKENS) | set(reg.tokens)
    # longest match first so "|>" wins over "|"
    ops = sorted(choice_tokens | {"~", "&", "|", "(", ")"}, key=len, reverse=True)
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        m = _IDENT.match(text, i)
        if m:
            toks.append(_Tok("ident", m.group(), i))
            i = m.end()
            continue
        for op in ops:
            if text.startswith(op, i):
                kind = "choice" if op in choice_tokens else "op"
                toks.append(_Tok(kind, op, i))
                i += len(op)
                break
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i, text)
    toks.append(_Tok("eof", "", n))
    return toks


class _Parser:
    def __init__(self, reg, text, allow_reserved):
        self.reg = reg
        self.text = text
        self.allow_reserved = allow_reserved
        self.toks = _tokenize(reg, text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(msg, tok.pos, self.text)

    def connective_name(self, tok: _Tok) -> str:
        spec = self.reg.tokens.get(tok.value)
        if spec is None:
            builtin = _BUILTIN_TOKENS.get(tok.value)
            raise UnknownConnectiveError(
                f"connective {tok.value!r} ({builtin}) at position {tok.pos} "
                f"is not part of logic {self.reg.name}"
            )
        return spec.name

    def formula(self) -> Formula:
        first = self.disj()
        if self.peek().kind != "choice":
            return first
        operands = [first]
        tokens = []
        while self.peek().kind == "choice":
            tok = self.take()
            if tokens and tok.value != tokens[0].value:
                self.fail(
                    f"mixed choice connectives {tokens[0].value!r} and {tok.value!r} "
                    "need parentheses",
                    tok,
                )
            tokens.append(tok)
            operands.append(self.disj())
        name = self.connective_name(tokens[0])
        if len(tokens) > 1 and not self.reg[name].declared_associative:
            warnings.warn(
                f"chain of non-associative connective {tokens[0].value!r} parsed "
                "right-associatively; add parentheses to be explicit",
                NonAssociativeChainWarning,
                stacklevel=4,
            )
        result = operands[-1]
        for left in reversed(operands[:-1]):
            result = Choice(name, left, result)
        return result

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().value == "|" and self.peek().kind == "op":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().value == "&" and self.peek().kind == "op":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.take()
        if tok.kind == "op" and tok.value == "~":
            return Neg(self.unary())
        if tok.kind == "op" and tok.value == "(":
            f = self.formula()
            close = self.take()
            if close.value != ")":
                self.fail("expected ')'", close)
            return f
        if tok.kind == "ident":
            if tok.value == "TRUE":
                return TOP
            if tok.value == "FALSE":
                return BOTTOM
            if tok.value.startswith(RESERVED_PREFIX) and not self.allow_reserved:
                self.fail(f"identifier {tok.value!r} uses the reserved prefix", tok)
            return Atom(tok.value)
        if tok.kind == "eof":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {tok.value!r}", tok)


def parse(reg: LogicRegistry, text: str, *, allow_reserved: bool = False) -> Formula:
    """Parse ``text`` into a formula over the connectives of ``reg``.

    Raises :class:`FormulaSyntaxError` for lexical and syntax errors and
    :class:`UnknownConnectiveError` when a choice token is not in ``reg``.
    Chains of a connective not declared associative emit
    :class:`NonAssociativeChainWarning`.
    """
    p = _Parser(reg, text, allow_reserved)
    f = p.formula()
    if p.peek().kind != "eof":
        p.fail(f"unexpected token {p.peek().value!r}")
    return f


# --- printing -------------------------------------------------------------

_CHOICE, _OR, _AND, _NEG, _ATOM = range(5)


def _level(f: Formula) -> int:
    if f == TOP or f == BOTTOM or isinstance(f, Atom):
        return _ATOM
    if isinstance(f, Neg):
        return _NEG
    if isinstance(f, And):
        return _AND
    if isinstance(f, Or):
        return _OR
    return _CHOICE


def render(f: Formula, reg: Optional[LogicRegistry] = None) -> str:
    """Text with the fewest parentheses that parses back to ``f``."""
    tokens = {name: tok for tok, name in _BUILTIN_TOKENS.items()}
    if reg is not None:
        tokens.update({s.name: s.token for s in reg})

    def wrap(g, cond):
        s = go(g)
        return f"({s})" if cond else s

    def go(g) -> str:
        if g == TOP:
            return "TRUE"
        if g == BOTTOM:
            return "FALSE"
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Neg):
            return "~" + wrap(g.child, _level(g.child) < _NEG)
        if isinstance(g, (And, Or)):
            # walk the left spine so long chains do not recurse
            kind, sym, lvl = type(g), (" & " if isinstance(g, And) else " | "), _level(g)
            rights = []
            while type(g) is kind and g != TOP and g != BOTTOM:
                rights.append(wrap(g.right, _level(g.right) <= lvl))
                g = g.left
            return sym.join([wrap(g, _level(g) < lvl), *reversed(rights)])
        op = g.op
        try:
            tok = tokens[op]
        except KeyError:
            raise UnknownConnectiveError(f"no token known for connective {op!r}") from None
        parts = []
        while isinstance(g, Choice) and g.op == op:
            parts.append(wrap(g.left, _level(g.left) == _CHOICE))
            g = g.right
        parts.append(wrap(g, _level(g) == _CHOICE))
        return f" {tok} ".join(parts)

    return go(f)
