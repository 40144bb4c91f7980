"""Polynomial text grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | NAME | "(" expr ")"
    NUMBER := INT | INT "/" INT

Implicit multiplication is rejected. Printing uses the same grammar so that
`parse_poly(format_poly(p), names) == p`.
"""

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

from ..errors import BadInputError
from .order import MonomialOrder, local_degree_order, sorted_terms
from .poly import Monomial, Polynomial, Ring

# >>> Error classes


class PolySyntaxError(BadInputError):
    def __init__(self: Self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position}: {text!r}")

        self.message = message
        self.text = text
        self.position = position


class UnknownVariable(BadInputError):
    def __init__(self: Self, name: str, position: int) -> None:
        super().__init__(f"unknown variable {name!r} at position {position}")

        self.name = name
        self.position = position


# >>> Tokens

token_regex = re.compile(
    r"""
    (?P<ws> \s+ ) |
    (?P<number> \d+ (?: \s* / \s* \d+ )? ) |
    (?P<name> [A-Za-z_][A-Za-z0-9_]* ) |
    (?P<op> [-+*^()] )
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    res: list[Token] = []
    pos = 0
    while pos < len(text):
        match = token_regex.match(text, pos)
        if match is None:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)

        kind = match.lastgroup
        assert kind is not None
        if kind != "ws":
            res.append(Token(kind, match.group(), pos))
        pos = match.end()

    res.append(Token("end", "", len(text)))
    return res


# >>> Parser


class _Parser:
    def __init__(self: Self, text: str, ring: Ring) -> None:
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.idx = 0

    @property
    def cur(self: Self) -> Token:
        return self.tokens[self.idx]

    def advance(self: Self) -> Token:
        res = self.tokens[self.idx]
        self.idx += 1
        return res

    def fail(self: Self, message: str, tok: Token | None = None) -> PolySyntaxError:
        if tok is None:
            tok = self.cur
        return PolySyntaxError(message, self.text, tok.position)

    def at_op(self: Self, *ops: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    def parse(self: Self) -> Polynomial:
        res = self.expr()
        if self.cur.kind != "end":
            if self.cur.kind in {"name", "number"} or self.at_op("("):
                raise self.fail("implicit multiplication is not allowed")
            raise self.fail(f"unexpected {self.cur.text!r}")
        return res

    def expr(self: Self) -> Polynomial:
        res = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            res = res + rhs if op == "+" else res - rhs
        return res

    def term(self: Self) -> Polynomial:
        res = self.unary()
        while self.at_op("*"):
            self.advance()
            res = res * self.unary()
        return res

    def unary(self: Self) -> Polynomial:
        if self.at_op("-"):
            self.advance()
            return -self.unary()
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self: Self) -> Polynomial:
        base = self.atom()
        if not self.at_op("^"):
            return base

        self.advance()
        tok = self.cur
        if tok.kind != "number" or "/" in tok.text:
            raise self.fail("exponent must be a non-negative integer literal")
        self.advance()
        return base ** int(tok.text)

    def atom(self: Self) -> Polynomial:
        tok = self.cur

        if tok.kind == "number":
            self.advance()
            if "/" not in tok.text:
                return self.ring.constant(int(tok.text))

            num, den = (int(x) for x in tok.text.split("/"))
            if den == 0:
                raise self.fail("zero denominator", tok)
            return self.ring.constant(Fraction(num, den))

        if tok.kind == "name":
            self.advance()
            try:
                return self.ring.var(self.ring.index(tok.text))
            except ValueError:
                raise UnknownVariable(tok.text, tok.position) from None

        if self.at_op("("):
            self.advance()
            res = self.expr()
            if not self.at_op(")"):
                raise self.fail("expected ')'")
            self.advance()
            return res

        if tok.kind == "end":
            raise self.fail("unexpected end of input")
        raise self.fail(f"unexpected {tok.text!r}")


def parse_poly(text: str, vars: Ring | Sequence[str]) -> Polynomial:
    ring = vars if isinstance(vars, Ring) else Ring(tuple(vars))
    return _Parser(text, ring).parse()


# >>> Printing


def format_monomial(m: Monomial, ring: Ring) -> str:
    parts: list[str] = []
    for name, e in zip(ring.names, m, strict=True):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial, ord: MonomialOrder | None = None) -> str:
    """Canonical text form, terms in decreasing order."""
    if p.is_zero():
        return "0"

    if ord is None:
        ord = local_degree_order(p.ring.nvars)

    res = ""
    for i, (m, c) in enumerate(sorted_terms(p, ord)):
        mono = format_monomial(m, p.ring)
        mag = abs(c)

        if mono == "":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"

        if i == 0:
            res = f"-{body}" if c < 0 else body
        else:
            res += f" - {body}" if c < 0 else f" + {body}"

    return res
