"""Recursive-descent parser for the formula text format.

Grammar (whitespace-insensitive between tokens):

    formula   := or_expr [ "->" "{" threshold "}" formula ]
    or_expr   := and_expr ( "|" and_expr )*
    and_expr  := unary ( "&" unary )*
    unary     := "<" threshold ">" unary        existential approximation
               | "[" threshold "]" unary        universal approximation
               | ( "E" | "A" ) VAR "." formula  quantifier, maximal scope
               | primary
    primary   := "(" formula ")"
               | "~" NAME "(" vars ")"          negated relation
               | "dep"  "(" groups ")"          1 group: constancy; else 2
               | "inc"  "(" groups ")"          2 equally long groups
               | "excl" "(" groups ")"          2 equally long groups
               | "pinc" "(" groups ")"          2 equally long groups
               | "ind"  "(" groups ")"          3 groups, or 2 for marginal
               | "pind" "(" groups ")"          3 groups, or 2 for marginal
               | NAME "(" vars ")"              relation
               | VAR ( "=" | "!=" ) VAR
    threshold := "#" INT | INT [ "/" INT ]
    groups    := vars ( ";" vars )*
    vars      := [ VAR ( "," VAR )* ]

Ratio thresholds must lie in [0,1].  The marginal forms `ind(xs ; ys)` and
`pind(xs ; ys)` are sugar for the conditional atom with an empty condition
group, and `dep(xs)` for the constancy atom `dep(; xs)`.  The words E, A,
dep, inc, excl, ind, pinc and pind are reserved and cannot name variables
or relations.  Unary operators bind tightest, then `&`, then `|`, then the
implication arrow; parentheses override.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError
from .formula import (CI, And, Dep, Eq, Excl, Exists, ExistsFrac, Forall,
                      Formula, ForallFrac, ImplFrac, Inc, Neq, NegRel, Or,
                      PCI, PInc, Rel, Threshold)

__all__ = ["parse", "KEYWORDS"]

KEYWORDS = frozenset({"E", "A", "dep", "inc", "excl", "ind", "pinc", "pind"})

_TWO_CHAR = ("!=", "->")
_ONE_CHAR = set("()[]{}<>,;.=&|~#/")


class Token(NamedTuple):
    kind: str  # "ident", "int", "op", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if text[i:i + 2] in _TWO_CHAR:
            tokens.append(Token("op", text[i:i + 2], line, col))
            i += 2
            col += 2
            continue
        if c in _ONE_CHAR:
            tokens.append(Token("op", c, line, col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "end":
            shown = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected {text!r}, found {shown}", tok)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind != "end" and tok.text == text

    # --- grammar rules -------------------------------------------------

    def formula(self) -> Formula:
        left = self.or_expr()
        if self.at("->"):
            self.next()
            self.expect("{")
            p = self.threshold()
            self.expect("}")
            right = self.formula()
            return ImplFrac(p, left, right)
        return left

    def or_expr(self) -> Formula:
        f = self.and_expr()
        while self.at("|"):
            self.next()
            f = Or(f, self.and_expr())
        return f

    def and_expr(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.at("<"):
            self.next()
            p = self.threshold()
            self.expect(">")
            return ExistsFrac(p, self.unary())
        if self.at("["):
            self.next()
            p = self.threshold()
            self.expect("]")
            return ForallFrac(p, self.unary())
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("E", "A"):
            self.next()
            var = self.variable()
            self.expect(".")
            body = self.formula()
            return Exists(var, body) if tok.text == "E" else Forall(var, body)
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if self.at("("):
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if self.at("~"):
            self.next()
            name = self.name()
            self.expect("(")
            args = self.var_list()
            self.expect(")")
            return NegRel(name, args)
        if tok.kind != "ident":
            self.fail(f"expected a formula, found {tok.text!r}" if tok.kind != "end"
                      else "expected a formula, found end of input")
        if tok.text in ("dep", "inc", "excl", "ind", "pinc", "pind"):
            return self.atom(tok.text)
        name = self.next().text
        if self.at("("):
            self.next()
            args = self.var_list()
            self.expect(")")
            return Rel(name, args)
        if self.at("="):
            self.next()
            return Eq(name, self.variable())
        if self.at("!="):
            self.next()
            return Neq(name, self.variable())
        self.fail(f"expected '(', '=' or '!=' after {name!r}")

    def atom(self, kw: str) -> Formula:
        tok = self.next()
        self.expect("(")
        groups = [self.var_list()]
        while self.at(";"):
            self.next()
            groups.append(self.var_list())
        self.expect(")")

        def need(*counts):
            if len(groups) not in counts:
                want = " or ".join(str(c) for c in counts)
                self.fail(f"{kw} takes {want} ';'-separated groups, got {len(groups)}", tok)

        if kw == "dep":
            need(1, 2)
            return Dep((), groups[0]) if len(groups) == 1 else Dep(groups[0], groups[1])
        if kw in ("inc", "excl", "pinc"):
            need(2)
            cls = {"inc": Inc, "excl": Excl, "pinc": PInc}[kw]
            if len(groups[0]) != len(groups[1]):
                self.fail(f"{kw} needs equally long groups, got "
                          f"{len(groups[0])} and {len(groups[1])} variables", tok)
            return cls(groups[0], groups[1])
        need(2, 3)  # ind / pind; two groups mean marginal independence
        if len(groups) == 2:
            groups.insert(0, ())
        cls = CI if kw == "ind" else PCI
        return cls(groups[0], groups[1], groups[2])

    def threshold(self) -> Threshold:
        if self.at("#"):
            self.next()
            tok = self.next()
            if tok.kind != "int":
                self.fail("expected a count after '#'", tok)
            return Threshold(int(tok.text), absolute=True)
        tok = self.next()
        if tok.kind != "int":
            self.fail("expected a threshold", tok)
        num = int(tok.text)
        den = 1
        if self.at("/"):
            self.next()
            dtok = self.next()
            if dtok.kind != "int":
                self.fail("expected a denominator", dtok)
            den = int(dtok.text)
            if den == 0:
                self.fail("threshold denominator must not be zero", dtok)
        if num > den:
            self.fail(f"ratio threshold {num}/{den} lies outside [0,1]", tok)
        return Threshold(Fraction(num, den))

    def variable(self) -> str:
        return self.name()

    def name(self) -> str:
        tok = self.next()
        if tok.kind != "ident":
            shown = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected a name, found {shown}", tok)
        if tok.text in KEYWORDS:
            self.fail(f"{tok.text!r} is a reserved word", tok)
        return tok.text

    def var_list(self) -> tuple[str, ...]:
        names = []
        if self.peek().kind == "ident" and self.peek().text not in KEYWORDS:
            names.append(self.name())
            while self.at(","):
                self.next()
                names.append(self.name())
        return tuple(names)


def parse(text: str) -> Formula:
    """Parse the text form of a formula into an AST."""
    parser = _Parser(text)
    f = parser.formula()
    tail = parser.peek()
    if tail.kind != "end":
        parser.fail(f"unexpected trailing input {tail.text!r}", tail)
    return f
