"""Text syntax for twist words.

Grammar::

    word   := { term }
    term   := atom [ '^' integer ]
    atom   := TWIST | '(' word ')' | '[' word ',' word ']' | OPAQUE | '1'
    TWIST  := 't_' identifier
    OPAQUE := '?' identifier [ ':' kind ] [ '(' param { ',' param } ')' ]
    param  := identifier '=' ( integer | identifier )

The parameter list must follow the label with no space in between; ``?C (t_a)``
is a block followed by a parenthesised factor.

Factors are written in the order they appear in a factorization, so the last
one acts first.  ``1`` is the empty word.  The opaque kind defaults to
``comm`` (a commutator); ``elem`` marks an unknown mapping class.  ``#`` starts
a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .words import (
    COMMUTATOR,
    UNKNOWN,
    Commutator,
    OpaqueBlock,
    Power,
    Product,
    Twist,
    TwistWord,
)

KIND_TAGS = {"comm": COMMUTATOR, "elem": UNKNOWN}
TAG_OF_KIND = {v: k for k, v in KIND_TAGS.items()}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<twist>t_[A-Za-z0-9_]+)
  | (?P<int>-?[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],^?:=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            ch = src[pos]
            if ch == "\\":
                raise ParseError("unknown escape", line, col)
            raise ParseError(f"unexpected character {ch!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "punct":
                kind = text
            tokens.append(Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str, registry):
        self.tokens = tokenize(src)
        self.i = 0
        self.registry = registry

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what or kind}, found {found!r}", tok.line, tok.column)
        self.i += 1
        return tok

    def word(self, stop: tuple[str, ...]) -> Product:
        factors: list[TwistWord] = []
        while self.peek().kind not in stop:
            tok = self.peek()
            if tok.kind == "int" and tok.text == "1" and self.tokens[self.i + 1].kind != "^":
                self.i += 1
                continue
            factors.append(self.term())
        return Product(tuple(factors))

    def term(self) -> TwistWord:
        atom = self.atom()
        if self.peek().kind == "^":
            self.i += 1
            k = int(self.take("int", "an integer exponent after '^'").text)
            if isinstance(atom, Twist):
                return Twist(atom.curve, atom.exponent * k)
            return Power(atom if isinstance(atom, Product) else Product((atom,)), k)
        return atom

    def atom(self) -> TwistWord:
        tok = self.peek()
        if tok.kind == "twist":
            self.i += 1
            return Twist(tok.text[2:])
        if tok.kind == "(":
            self.i += 1
            inner = self.word((")", "eof", ",", "]"))
            self.take(")", "')'")
            return inner
        if tok.kind == "[":
            self.i += 1
            left = self.word((",", "eof", "]", ")"))
            self.take(",", "',' inside commutator")
            right = self.word(("]", "eof", ",", ")"))
            self.take("]", "']'")
            return Commutator(left, right)
        if tok.kind == "?":
            self.i += 1
            return self.opaque()
        if tok.kind == "int" and tok.text == "1":
            self.i += 1
            return Product(())
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.column)

    def _adjacent(self) -> bool:
        prev, nxt = self.tokens[self.i - 1], self.peek()
        return nxt.line == prev.line and nxt.column == prev.column + len(prev.text)

    def opaque(self) -> OpaqueBlock:
        label = self.take("ident", "an opaque block label").text
        kind = COMMUTATOR
        if self.peek().kind == ":":
            self.i += 1
            tag = self.take("ident", "an opaque kind")
            if tag.text not in KIND_TAGS:
                raise ParseError(f"unknown opaque kind {tag.text!r}", tag.line, tag.column)
            kind = KIND_TAGS[tag.text]
        params: list[tuple[str, int | str]] = []
        if self.peek().kind == "(" and self._adjacent():
            self.i += 1
            while True:
                key = self.take("ident", "a parameter name").text
                self.take("=", "'='")
                val = self.peek()
                if val.kind == "int":
                    params.append((key, int(val.text)))
                elif val.kind == "ident":
                    params.append((key, val.text))
                else:
                    raise ParseError("expected a parameter value", val.line, val.column)
                self.i += 1
                if self.peek().kind == ",":
                    self.i += 1
                    continue
                self.take(")", "')'")
                break
        block = OpaqueBlock(label, kind, tuple(params))
        factory = self.registry.get(label) if self.registry else None
        if factory is not None:
            resolved = factory(block)
            if resolved is not None:
                return resolved
        return block


def _t2_factory(block: OpaqueBlock) -> OpaqueBlock | None:
    from .families import t2_word

    params = dict(block.params)
    if block.kind == UNKNOWN and set(params) == {"g"} and isinstance(params["g"], int) and params["g"] >= 2:
        return t2_word(params["g"])
    return None


DEFAULT_REGISTRY = {"T2": _t2_factory}


def parse_word(src: str, registry=None) -> Product:
    """Parse DSL text into a word; opaque blocks known to ``registry`` get their images."""
    p = _Parser(src, DEFAULT_REGISTRY if registry is None else registry)
    w = p.word(("eof",))
    tok = p.peek()
    if tok.kind != "eof":  # pragma: no cover - word() only stops at eof
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    return w


def _opaque_text(b: OpaqueBlock) -> str:
    s = "?" + b.label
    if b.kind != COMMUTATOR:
        s += ":" + TAG_OF_KIND[b.kind]
    if b.params:
        s += "(" + ",".join(f"{k}={v}" for k, v in b.params) + ")"
    return s


def _factor_text(w: TwistWord) -> str:
    if isinstance(w, Product):
        return "(" + " ".join(_factor_text(f) for f in w.factors) + ")"
    return print_word(w)


def _product_text(p: Product) -> str:
    return " ".join(_factor_text(f) for f in p.factors) if p.factors else "1"


def print_word(w: TwistWord) -> str:
    """Canonical text of ``w``; parsing it back gives ``w`` for reduced words."""
    if isinstance(w, Twist):
        return f"t_{w.curve}" + (f"^{w.exponent}" if w.exponent != 1 else "")
    if isinstance(w, OpaqueBlock):
        return _opaque_text(w)
    if isinstance(w, Commutator):
        return f"[{_product_text(w.left)}, {_product_text(w.right)}]"
    if isinstance(w, Power):
        fs = w.base.factors
        if len(fs) == 1 and isinstance(fs[0], (OpaqueBlock, Commutator)):
            return f"{print_word(fs[0])}^{w.exponent}"
        return f"({_product_text(w.base)})^{w.exponent}"
    if isinstance(w, Product):
        return _product_text(w)
    raise TypeError(f"not a twist word: {w!r}")
