"""A small expression language over the elements of one instance.

    expr   := term ("==" term)?
    term   := factor ("*" factor)*
    factor := atom ("^" int)*
    atom   := "[" ... "]" | name | name "(" expr ")" | "(" expr ")"

Names are ``x0``, ``x1`` and ``one``; functions are ``pi``, ``theta``,
``reduce`` and ``inv``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import CloningSystem, Element, equals, invert, multiply, parse_element, power, reduce
from .maps import pi, theta, x0, x1

Value = Union[Element, int, bool]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


_SIMPLE = re.compile(r"\s*(?:(==)|(\*)|(\^)|(\()|(\))|(-?\d+)|([A-Za-z_]\w*))")


def tokenize(src: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        if src[i] == "[":
            j = src.find("]", i)
            if j < 0:
                raise ParseError("unterminated element literal", i)
            out.append(_Tok("elem", src[i : j + 1], i))
            i = j + 1
            continue
        m = _SIMPLE.match(src, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {src[i]!r}", i)
        kinds = ("==", "*", "^", "(", ")", "int", "name")
        k = next(n for n, g in zip(kinds, m.groups()) if g is not None)
        out.append(_Tok(k, m.group(m.lastindex), m.start(m.lastindex)))
        i = m.end()
    out.append(_Tok("end", "", len(src)))
    return out


_FUNCS = {"pi", "theta", "reduce", "inv"}


class _Parser:
    def __init__(self, s: CloningSystem, src: str) -> None:
        self.s = s
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of input'!r}", t.pos)
        self.i += 1
        return t

    def parse(self) -> Value:
        v = self.expr()
        self.take("end")
        return v

    def expr(self) -> Value:
        left = self.term()
        if self.peek().kind == "==":
            t = self.take("==")
            right = self.term()
            return equals(self._elem(left, t), self._elem(right, t))
        return left

    def term(self) -> Value:
        v = self.factor()
        while self.peek().kind == "*":
            t = self.take("*")
            w = self.factor()
            v = multiply(self._elem(v, t), self._elem(w, t))
        return v

    def factor(self) -> Value:
        v = self.atom()
        while self.peek().kind == "^":
            t = self.take("^")
            n = int(self.take("int").text)
            v = power(self._elem(v, t), n)
        return v

    def atom(self) -> Value:
        t = self.peek()
        if t.kind == "elem":
            self.i += 1
            try:
                return parse_element(self.s, t.text)
            except ValueError as e:
                raise ParseError(str(e), t.pos) from None
        if t.kind == "(":
            self.i += 1
            v = self.expr()
            self.take(")")
            return v
        if t.kind == "name":
            self.i += 1
            if t.text in _FUNCS:
                self.take("(")
                arg = self._elem(self.expr(), t)
                self.take(")")
                return {"pi": pi, "theta": theta, "reduce": reduce, "inv": invert}[t.text](arg)
            consts = {"x0": x0, "x1": x1, "one": lambda s: s.one()}
            if t.text in consts:
                return consts[t.text](self.s)
            raise ParseError(f"unknown name {t.text!r}", t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    @staticmethod
    def _elem(v: Value, t: _Tok) -> Element:
        if not isinstance(v, Element):
            raise ParseError(f"{t.text or 'operator'} needs a group element", t.pos)
        return v


def evaluate(s: CloningSystem, src: str) -> Value:
    return _Parser(s, src).parse()


def render(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Element):
        return str(reduce(v))
    return str(v)
