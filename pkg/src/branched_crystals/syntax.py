"""ASCII surface syntax for labels, crystal expressions, elements and module expressions.

    label     V(3)  M(-2)  T(0)  Msigma(1)
    crystal   V(1) (x) (M(0) (x) T(2))          (x) is left-associative
    element   V(3):b2   T(2):b(1)   (V(1):b0 (x) V(1):b1)
    module    dual(M(2)) (x) V(3) (+) T(1)      (x) binds tighter than (+)
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .core import PAREN, PLAIN, Atom, CrystalError, CrystalLabel, Node, Pair, Tensor


class ParseError(CrystalError, ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<tensor>\(x\))|(?P<plus>\(\+\))|(?P<kind>Msigma|V|M|T)(?=\s*\()"
    r"|(?P<dual>dual)|(?P<b>b)|(?P<int>-?\d+)|(?P<punct>[():]))"
)


def tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos + 1}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind if kind != "punct" else m.group(kind), m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        j = self.i + offset
        return self.toks[j][0] if j < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            where = self.toks[self.i][2] + 1 if self.i < len(self.toks) else len(self.text) + 1
            found = self.toks[self.i][1] if self.i < len(self.toks) else "end of input"
            raise ParseError(f"expected {kind!r} at column {where}, found {found!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def done(self):
        if self.i != len(self.toks):
            self.take(None)

    def int_(self) -> int:
        return int(self.take("int"))

    def label(self) -> CrystalLabel:
        kind = self.take("kind")
        self.take("(")
        n = self.int_()
        self.take(")")
        try:
            return CrystalLabel(kind, n)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def crystal(self):
        out = self.crystal_term()
        while self.peek() == "tensor":
            self.take("tensor")
            out = Tensor(out, self.crystal_term())
        return out

    def crystal_term(self):
        if self.peek() == "(":
            self.take("(")
            out = self.crystal()
            self.take(")")
            return out
        return Atom(self.label())

    def element(self):
        out = self.element_term()
        while self.peek() == "tensor":
            self.take("tensor")
            out = Pair(out, self.element_term())
        return out

    def element_term(self):
        if self.peek() == "(":
            self.take("(")
            out = self.element()
            self.take(")")
            return out
        lab = self.label()
        self.take(":")
        self.take("b")
        if self.peek() == "(":
            self.take("(")
            chain, j = PAREN, self.int_()
            self.take(")")
        else:
            chain, j = PLAIN, self.int_()
        try:
            return Node(lab, chain, j)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def module(self):
        terms = [self.module_product()]
        while self.peek() == "plus":
            self.take("plus")
            terms.append(self.module_product())
        return terms[0] if len(terms) == 1 else ModSum(tuple(terms))

    def module_product(self):
        out = self.module_term()
        while self.peek() == "tensor":
            self.take("tensor")
            out = ModTensor(out, self.module_term())
        return out

    def module_term(self):
        if self.peek() == "dual":
            self.take("dual")
            self.take("(")
            out = ModDual(self.module())
            self.take(")")
            return out
        if self.peek() == "(":
            self.take("(")
            out = self.module()
            self.take(")")
            return out
        return self.label()


@dataclass(frozen=True)
class ModSum:
    terms: tuple


@dataclass(frozen=True)
class ModTensor:
    left: object
    right: object


@dataclass(frozen=True)
class ModDual:
    inner: object


def _run(text: str, method: str):
    p = _Parser(text)
    out = getattr(p, method)()
    p.done()
    return out


def parse_label(text: str) -> CrystalLabel:
    return _run(text, "label")


def parse_crystal(text: str):
    return _run(text, "crystal")


def parse_element(text: str):
    return _run(text, "element")


def parse_module(text: str):
    return _run(text, "module")
