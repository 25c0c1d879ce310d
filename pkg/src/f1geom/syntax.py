"""Text syntax for monomials and polynomial relations.

    monomial  := "0" | "1" | factor ("*" factor)*
    factor    := NAME ["^" ["-"] INT]
    side      := ["-"] term (("+" | "-") term)*
    term      := INT ["*" monomial] | monomial
    relation  := side "=" side

A negative exponent ``T^-k`` denotes ``T_inv^k`` and is only accepted when
the inverse generator exists (localized presentations).
"""

from __future__ import annotations

import re

from .errors import ParseError
from .monoid import ZERO, format_monomial, inverse_name

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[*^+\-=()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, generators):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", column=col)

    def error(self, msg):
        raise ParseError(msg, column=self.peek()[2])

    def monomial(self):
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            if val == "0":
                return ZERO
            if val == "1":
                exps = [0] * len(self.generators)
                if self.peek()[:2] == ("op", "*"):
                    self.take()
                    return self._merge(exps, self.monomial())
                return tuple(exps)
            raise ParseError(f"integer {val} is not a monomial", column=col)
        exps = [0] * len(self.generators)
        self._factor(exps)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            kind, val, col = self.peek()
            if kind == "int" and val in ("0", "1"):
                self.take()
                if val == "0":
                    return ZERO
                continue
            self._factor(exps)
        return tuple(exps)

    def _merge(self, exps, other):
        if other is ZERO:
            return ZERO
        return tuple(a + b for a, b in zip(exps, other))

    def _factor(self, exps):
        kind, name, col = self.take()
        if kind != "name":
            raise ParseError(f"expected a generator name, found {name or 'end of input'!r}", column=col)
        exponent = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            k, v, c = self.take()
            if k != "int":
                raise ParseError("expected an exponent", column=c)
            exponent = sign * int(v)
        if exponent < 0:
            target = inverse_name(name)
            if target not in self.index:
                raise ParseError(f"negative exponent on {name!r} but {target!r} is not a generator", column=col)
            name, exponent = target, -exponent
        if name not in self.index:
            raise ParseError(f"unknown generator {name!r}", column=col)
        exps[self.index[name]] += exponent

    def side(self, allow_negative):
        terms = []
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            if not allow_negative:
                self.error("negative coefficients need coefficient ring Z")
            self.take()
            sign = -1
        while True:
            coef, mono = self.term()
            if coef and mono is not ZERO:
                terms.append((sign * coef, mono))
            kind, val, col = self.peek()
            if kind == "op" and val in "+-":
                if val == "-" and not allow_negative:
                    self.error("negative coefficients need coefficient ring Z")
                self.take()
                sign = 1 if val == "+" else -1
                continue
            return terms

    def term(self):
        kind, val, col = self.peek()
        if kind == "int":
            nxt = self.toks[self.i + 1]
            if nxt[:2] == ("op", "*"):
                self.take()
                self.take()
                return int(val), self.monomial()
            if nxt[0] == "name":
                self.take()
                return int(val), self.monomial()
            self.take()
            c = int(val)
            return c, tuple([0] * len(self.generators))
        return 1, self.monomial()

    def done(self):
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", column=col)


def parse_monomial(text: str, generators):
    p = _Parser(str(text), generators)
    m = p.monomial()
    p.done()
    return m


def parse_monomial_relation(text: str, generators):
    p = _Parser(str(text), generators)
    lhs = p.monomial()
    p.expect_op("=")
    rhs = p.monomial()
    p.done()
    return lhs, rhs


def parse_side(text: str, generators, allow_negative=True):
    p = _Parser(str(text), generators)
    s = p.side(allow_negative)
    p.done()
    return s


def parse_poly_relation(text: str, generators, allow_negative=True):
    p = _Parser(str(text), generators)
    lhs = p.side(allow_negative)
    p.expect_op("=")
    rhs = p.side(allow_negative)
    p.done()
    return lhs, rhs


def format_side(terms, generators) -> str:
    if not terms:
        return "0"
    out = []
    for i, (c, m) in enumerate(terms):
        mono = format_monomial(m, generators)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)
