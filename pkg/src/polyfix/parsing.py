"""Parsers for the three text formats: equation systems, pushdown automata,
and back-button processes.

All formats share one tokenizer (identifiers, integers, decimal literals,
punctuation, ``#`` line comments).  Decimal literals are parsed as exact
rationals (``0.4`` becomes 4/10), so textual inputs are always represented
exactly.  Printing is canonical and round-trips through the parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arithmetic import fraction_from_decimal
from .errors import NegativeCoefficient, ParseError, UndefinedVariable
from .models import BackButton, Ppda, PpdaRule
from .poly import Msp, Polynomial

_PUNCT = {"=", "+", "*", "^", "/", ";", "-"}


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME | NUM | ARROW | one of _PUNCT | EOF
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def error(msg):
        raise ParseError(msg, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("NAME", text[start:i], line, col))
            col += i - start
        elif ch == "[":
            # bracketed variable: [state.symbol.state]
            start = i
            j = text.find("]", i)
            if j < 0:
                error("unterminated '['")
            name = text[start : j + 1]
            parts = name[1:-1].split(".")
            if len(parts) != 3 or not all(p.isidentifier() for p in parts):
                error(f"malformed bracketed name {name!r}")
            tokens.append(_Token("NAME", name, line, col))
            col += j + 1 - start
            i = j + 1
        elif ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            tokens.append(_Token("NUM", text[start:i], line, col))
            col += i - start
        elif ch == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(_Token("ARROW", "->", line, col))
            i += 2
            col += 2
        elif ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
        else:
            error(f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        if self.cur.kind != kind:
            self.fail(f"expected {kind!r}, found {self.cur.text or 'end of input'!r}")
        return self.advance()

    def fail(self, msg: str):
        raise ParseError(msg, self.cur.line, self.cur.column)

    def at_end(self) -> bool:
        return self.cur.kind == "EOF"

    def parse_coefficient(self) -> Fraction:
        negative = False
        tok = self.cur
        if self.cur.kind == "-":
            negative = True
            self.advance()
        num_tok = self.expect("NUM")
        if "." in num_tok.text:
            value = fraction_from_decimal(num_tok.text)
        else:
            value = Fraction(int(num_tok.text))
            if self.cur.kind == "/":
                self.advance()
                den_tok = self.expect("NUM")
                if "." in den_tok.text:
                    self.fail("denominator must be an integer")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.column)
                value = Fraction(int(num_tok.text), den)
        if negative:
            raise NegativeCoefficient(
                f"coefficient -{value} is negative", tok.line, tok.column
            )
        return value


def parse_mspe(text: str) -> Msp:
    """Parse an equation system ``VAR = coeff*VAR^INT*... + ... ;``.

    Variables are taken in declaration order; every variable on a right-hand
    side must be defined by some equation.
    """
    p = _Parser(text)
    raw: list[tuple[str, list, _Token]] = []  # (name, [(coeff, [(name,pow)...], tok)], tok)
    while not p.at_end():
        name_tok = p.cur
        if name_tok.kind != "NAME":
            p.fail(f"expected a variable name, found {name_tok.text!r}")
        p.advance()
        p.expect("=")
        terms = []
        while True:
            coeff = p.parse_coefficient()
            factors = []
            while p.cur.kind == "*":
                p.advance()
                var_tok = p.cur
                if var_tok.kind != "NAME":
                    p.fail(f"expected a variable after '*', found {var_tok.text!r}")
                p.advance()
                power = 1
                if p.cur.kind == "^":
                    p.advance()
                    pow_tok = p.expect("NUM")
                    if "." in pow_tok.text:
                        raise ParseError("exponent must be an integer", pow_tok.line, pow_tok.column)
                    power = int(pow_tok.text)
                    if power < 1:
                        raise ParseError("exponent must be >= 1", pow_tok.line, pow_tok.column)
                factors.append((var_tok, power))
            terms.append((coeff, factors))
            if p.cur.kind != "+":
                break
            p.advance()
        p.expect(";")
        raw.append((name_tok.text, terms, name_tok))

    if not raw:
        raise ParseError("empty input: no equations found", 1, 1)
    index: dict[str, int] = {}
    for name, _, tok in raw:
        if name in index:
            raise ParseError(f"variable {name!r} defined twice", tok.line, tok.column)
        index[name] = len(index)

    equations = []
    for _, terms, _ in raw:
        poly_terms = []
        for coeff, factors in terms:
            powers = []
            for var_tok, power in factors:
                if var_tok.text not in index:
                    raise UndefinedVariable(
                        f"variable {var_tok.text!r} has no defining equation",
                        var_tok.line,
                        var_tok.column,
                    )
                powers.append((index[var_tok.text], power))
            poly_terms.append((coeff, tuple(powers)))
        equations.append(Polynomial.from_terms(poly_terms))

    return Msp(tuple(name for name, _, _ in raw), tuple(equations))


def parse_ppda(text: str) -> Ppda:
    """Parse rules ``rule STATE SYM -> coeff STATE SYM{0,2} ;``."""
    p = _Parser(text)
    rules = []
    while not p.at_end():
        kw = p.expect("NAME")
        if kw.text != "rule":
            raise ParseError(f"expected 'rule', found {kw.text!r}", kw.line, kw.column)
        state = p.expect("NAME").text
        symbol = p.expect("NAME").text
        p.expect("ARROW")
        prob = p.parse_coefficient()
        target = p.expect("NAME").text
        push = []
        while p.cur.kind == "NAME":
            push.append(p.advance().text)
        p.expect(";")
        rules.append(PpdaRule(state, symbol, prob, target, tuple(push)))
    if not rules:
        raise ParseError("empty input: no rules found", 1, 1)
    return Ppda.from_rules(rules)


def parse_backbutton(text: str) -> BackButton:
    """Parse lines ``page ID back coeff ;`` and ``link ID ID coeff ;``."""
    p = _Parser(text)
    pages: list[str] = []
    back: dict[str, Fraction] = {}
    links: dict[tuple[str, str], Fraction] = {}
    pending_links: list[tuple[_Token, _Token, Fraction]] = []
    while not p.at_end():
        kw = p.expect("NAME")
        if kw.text == "page":
            name_tok = p.expect("NAME")
            back_kw = p.expect("NAME")
            if back_kw.text != "back":
                raise ParseError(f"expected 'back', found {back_kw.text!r}", back_kw.line, back_kw.column)
            prob = p.parse_coefficient()
            p.expect(";")
            if name_tok.text in back:
                raise ParseError(f"page {name_tok.text!r} declared twice", name_tok.line, name_tok.column)
            pages.append(name_tok.text)
            back[name_tok.text] = prob
        elif kw.text == "link":
            src_tok = p.expect("NAME")
            dst_tok = p.expect("NAME")
            prob = p.parse_coefficient()
            p.expect(";")
            pending_links.append((src_tok, dst_tok, prob))
        else:
            raise ParseError(f"expected 'page' or 'link', found {kw.text!r}", kw.line, kw.column)
    if not pages:
        raise ParseError("empty input: no pages found", 1, 1)
    for src_tok, dst_tok, prob in pending_links:
        for tok in (src_tok, dst_tok):
            if tok.text not in back:
                raise UndefinedVariable(f"unknown page {tok.text!r}", tok.line, tok.column)
        key = (src_tok.text, dst_tok.text)
        if key in links:
            raise ParseError(
                f"link {src_tok.text!r} -> {dst_tok.text!r} declared twice",
                src_tok.line,
                src_tok.column,
            )
        links[key] = prob
    return BackButton(tuple(pages), back, links)


def _format_coeff(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_ppda(ppda: Ppda) -> str:
    lines = [
        f"rule {r.state} {r.symbol} -> {_format_coeff(r.prob)} {r.target}"
        + ("".join(" " + s for s in r.push))
        + " ;"
        for r in ppda.rules
    ]
    return "\n".join(lines) + "\n"


def format_backbutton(bb: BackButton) -> str:
    lines = [f"page {a} back {_format_coeff(bb.back[a])} ;" for a in bb.pages]
    for (a, b), prob in sorted(bb.links.items()):
        lines.append(f"link {a} {b} {_format_coeff(prob)} ;")
    return "\n".join(lines) + "\n"
