"""Text notation for space terms.

Grammar (whitespace is insignificant)::

    expr     := fibrous ( "+" fibrous )*
    fibrous  := atom ( "(" expr ")" atom )*
    atom     := INT "p" | "p" | INT "*" atom | "[" expr "]"
              | NAME "^" INT | NAME "_" INT | NAME "(" INT ( "," INT )* ")"

Parentheses after an atom always hold a running fiber; square brackets
group a sum or decomposition that sits in transitional position or under
``k*``. Examples: ``p(S^0)p``, ``S^1(S^1)chain(2)(2*S^1)2*S^1``,
``[p(2p)p](2p)p``.

Spans are character offsets. Anything outside printable ASCII is rejected
by the lexer before it can shift later offsets, so they are byte offsets too.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import BUILTIN, Catalog
from .errors import ParseError, ResolutionError
from .terms import CatalogRef, Decomp, Finite, Multiple, SpaceTerm, Sum

_TOKEN_RE = re.compile(
    r"(?P<WS>[ \t\r\n]+)|(?P<INT>[0-9]+)|(?P<NAME>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<SYM>[+*()\[\]^_,])"
)
_SYMBOLS = {
    "+": "PLUS", "*": "STAR", "(": "LPAREN", ")": "RPAREN", "[": "LBRACK",
    "]": "RBRACK", "^": "CARET", "_": "UNDERSCORE", ",": "COMMA",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class SourceExpr:
    """Source text with its full token list, whitespace tokens included."""

    text: str
    tokens: tuple[Token, ...]


def tokenize(text: str) -> SourceExpr:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", (pos, pos + 1), text)
        kind = m.lastgroup
        if kind == "SYM":
            kind = _SYMBOLS[m.group()]
        tokens.append(Token(kind, m.group(), pos, m.end()))
        pos = m.end()
    return SourceExpr(text, tuple(tokens))


_ATOM_START = ("INT", "NAME", "LBRACK")


class _Parser:
    def __init__(self, source: SourceExpr, catalog: Catalog):
        self.text = source.text
        self.catalog = catalog
        end = len(source.text)
        self.tokens = [t for t in source.tokens if t.kind != "WS"]
        self.tokens.append(Token("EOF", "", end, end))
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, message: str, span: tuple[int, int]) -> ParseError:
        return ParseError(message, span, self.text)

    def expect(self, kind: str, message: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"{message}, found {_describe(tok)}", tok.span)
        return self.advance()

    def integer(self, tok: Token) -> int:
        try:
            return int(tok.text)
        except ValueError:
            raise self.error("integer literal too long", tok.span) from None

    def parse(self) -> SpaceTerm:
        try:
            term = self.expr()
        except RecursionError:
            raise self.error("expression nested too deeply", (0, len(self.text))) from None
        tok = self.peek()
        if tok.kind != "EOF":
            if tok.kind in ("RPAREN", "RBRACK"):
                raise self.error(f"unmatched {tok.text!r}", tok.span)
            raise self.error(f"unexpected {_describe(tok)}", tok.span)
        return term

    def expr(self) -> SpaceTerm:
        parts = [self.fibrous()]
        while self.peek().kind == "PLUS":
            self.advance()
            parts.append(self.fibrous())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def fibrous(self) -> SpaceTerm:
        if self.peek().kind == "LPAREN":
            tok = self.peek()
            raise self.error("a running fiber must follow a transitional fiber", tok.span)
        transitional = [self.atom()]
        running = []
        while self.peek().kind == "LPAREN":
            open_tok = self.advance()
            running.append(self.expr())
            close_tok = self.expect("RPAREN", "expected ')' to close the running fiber")
            nxt = self.peek()
            if nxt.kind == "LPAREN":
                raise self.error("two running fibers cannot be adjacent", nxt.span)
            if nxt.kind not in _ATOM_START:
                raise self.error(
                    "a decomposition cannot end with a running fiber",
                    (open_tok.start, close_tok.end),
                )
            transitional.append(self.atom())
        nxt = self.peek()
        if nxt.kind in _ATOM_START:
            raise self.error(
                "two transitional fibers must be separated by a running fiber in parentheses",
                nxt.span,
            )
        if not running:
            return transitional[0]
        return Decomp(tuple(transitional), tuple(running))

    def atom(self) -> SpaceTerm:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            n = self.integer(tok)
            nxt = self.peek()
            if nxt.kind == "NAME" and nxt.text == "p":
                self.advance()
                return Finite(n)
            if nxt.kind == "STAR":
                self.advance()
                if n < 1:
                    raise self.error("a multiple needs a count of at least 1", tok.span)
                return Multiple(n, self.atom())
            raise self.error(f"expected 'p' or '*' after {n}, found {_describe(nxt)}", nxt.span)
        if tok.kind == "LBRACK":
            self.advance()
            inner = self.expr()
            self.expect("RBRACK", "expected ']' to close the group")
            return inner
        if tok.kind == "NAME":
            self.advance()
            if tok.text == "p":
                return Finite(1)
            return self.catalog_ref(tok)
        if tok.kind == "LPAREN":
            raise self.error("a running fiber must follow a transitional fiber", tok.span)
        raise self.error(f"expected a space, found {_describe(tok)}", tok.span)

    def catalog_ref(self, name_tok: Token) -> CatalogRef:
        name = name_tok.text
        try:
            entry = self.catalog[name]
        except ResolutionError as err:
            raise err.with_span(name_tok.span) from None
        if entry.style == "call":
            self.expect("LPAREN", f"expected '(' with parameters after {name}")
            params = [self.integer(self.expect("INT", f"expected an integer parameter of {name}"))]
            while self.peek().kind == "COMMA":
                self.advance()
                params.append(self.integer(self.expect("INT", f"expected an integer parameter of {name}")))
            last = self.expect("RPAREN", f"expected ')' after the parameters of {name}")
        else:
            kind = "CARET" if entry.style == "^" else "UNDERSCORE"
            self.expect(kind, f"{name} is written {entry.notation()}; expected {entry.style!r}")
            last = self.expect("INT", f"expected an integer after {name}{entry.style}")
            params = [self.integer(last)]
        try:
            entry.check(params)
        except ResolutionError as err:
            raise err.with_span((name_tok.start, last.end)) from None
        return CatalogRef(name, tuple(params))


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "EOF" else repr(tok.text)


def parse(text: str, catalog: Catalog = BUILTIN) -> SpaceTerm:
    """Parse DSL text into a space term.

    Raises :class:`ParseError` for malformed text and a
    :class:`ResolutionError` subclass, carrying a span, for unknown names or
    parameters outside an entry's domain.
    """
    return _Parser(tokenize(text), catalog).parse()


def render(term: SpaceTerm, catalog: Catalog = BUILTIN) -> str:
    """Canonical text for ``term``; ``parse(render(t)) == t``.

    The notation has no form for a one-part sum or a length-0 decomposition,
    so both are written as their content.
    """

    def expr(t: SpaceTerm) -> str:
        if isinstance(t, Sum) and len(t.parts) > 1:
            return "+".join(fibrous(p) for p in t.parts)
        return fibrous(t)

    def fibrous(t: SpaceTerm) -> str:
        if isinstance(t, Decomp) and t.length > 0:
            out = [atom(t.transitional[0])]
            for y, x in zip(t.running, t.transitional[1:]):
                out.append(f"({expr(y)}){atom(x)}")
            return "".join(out)
        return atom(t)

    def atom(t: SpaceTerm) -> str:
        if isinstance(t, Finite):
            return "p" if t.points == 1 else f"{t.points}p"
        if isinstance(t, Multiple):
            return f"{t.count}*{atom(t.base)}"
        if isinstance(t, CatalogRef):
            entry = catalog.get(t.name)
            if entry is not None and (entry.style == "call" or len(t.params) == 1):
                return entry.notation(t.params)
            return f"{t.name}({','.join(map(str, t.params))})"
        if isinstance(t, Decomp) and t.length == 0:
            return atom(t.transitional[0])
        if isinstance(t, Sum) and len(t.parts) == 1:
            return atom(t.parts[0])
        return f"[{expr(t)}]"

    return expr(term)
