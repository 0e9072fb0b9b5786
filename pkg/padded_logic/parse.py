"""Tokenizer and guard parser for the text syntax used in instance files."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from padded_logic.errors import InputError
from padded_logic.guards import (
    FALSE,
    TRUE,
    Add,
    Cmp,
    Const,
    GuardFormula,
    GuardTerm,
    IsPad,
    MulConst,
    ParamVar,
    Sub,
    TrackVar,
    conj,
    disj,
    neg,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op><=|>=|!=|==|&&|\|\||[-+*(),.<>=!\[\]]))"
)
_TRACK = re.compile(r"l(\d+)$")
_PARAM = re.compile(r"x(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None or match.end() == pos:
            raise InputError(f"unexpected character {stripped[pos]!r} at {pos} in {text!r}")
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> Optional[Token]:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at(self, *texts: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text in texts

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return tok

    def accept(self, *texts: str) -> bool:
        if self.at(*texts):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise self.error(f"expected {text!r}")
        self.pos += 1
        return tok

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def error(self, message: str) -> InputError:
        tok = self.peek()
        where = f"at {tok.text!r} (offset {tok.pos})" if tok else "at end"
        return InputError(f"{message} {where} in {self.text!r}")


COMPARISONS = {"=": "=", "==": "=", "!=": "!=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}


class _GuardParser:
    def __init__(self, text: str):
        self.stream = TokenStream(text)

    def parse(self) -> GuardFormula:
        phi = self.formula()
        if not self.stream.done():
            raise self.stream.error("trailing input")
        return phi

    def formula(self) -> GuardFormula:
        parts = [self.conjunction()]
        while self.stream.accept("or", "||"):
            parts.append(self.conjunction())
        return disj(*parts) if len(parts) > 1 else parts[0]

    def conjunction(self) -> GuardFormula:
        parts = [self.unary()]
        while self.stream.accept("and", "&&"):
            parts.append(self.unary())
        return conj(*parts) if len(parts) > 1 else parts[0]

    def unary(self) -> GuardFormula:
        s = self.stream
        if s.accept("not", "!"):
            return neg(self.unary())
        if s.accept("true"):
            return TRUE
        if s.accept("false"):
            return FALSE
        if s.accept("ispad"):
            s.expect("(")
            term = self.term()
            s.expect(")")
            return IsPad(term)
        if s.at("("):
            saved = s.pos
            try:
                s.advance()
                inner = self.formula()
                s.expect(")")
                if not s.at(*COMPARISONS, "+", "-", "*"):
                    return inner
            except InputError:
                pass
            s.pos = saved
        return self.comparison()

    def comparison(self) -> Cmp:
        left = self.term()
        tok = self.stream.peek()
        if tok is None or tok.text not in COMPARISONS:
            raise self.stream.error("expected comparison operator")
        self.stream.advance()
        return Cmp(COMPARISONS[tok.text], left, self.term())

    def term(self) -> GuardTerm:
        result = self.product()
        while self.stream.at("+", "-"):
            op = self.stream.advance().text
            right = self.product()
            result = Add(result, right) if op == "+" else Sub(result, right)
        return result

    def product(self) -> GuardTerm:
        result = self.factor()
        while self.stream.accept("*"):
            right = self.factor()
            if isinstance(result, Const):
                result = MulConst(result.value, right)
            elif isinstance(right, Const):
                result = MulConst(right.value, result)
            else:
                raise self.stream.error("nonlinear product")
        return result

    def factor(self) -> GuardTerm:
        s = self.stream
        if s.accept("-"):
            inner = self.factor()
            return Const(-inner.value) if isinstance(inner, Const) else MulConst(-1, inner)
        if s.accept("("):
            inner = self.term()
            s.expect(")")
            return inner
        tok = s.advance()
        if tok.kind == "int":
            return Const(int(tok.text))
        if tok.kind == "ident":
            track = _TRACK.match(tok.text)
            if track:
                return TrackVar(int(track.group(1)))
            param = _PARAM.match(tok.text)
            if param:
                return ParamVar(int(param.group(1)))
        s.pos -= 1
        raise s.error("expected l<i>, x<j> or an integer")


def parse_guard(text: str) -> GuardFormula:
    return _GuardParser(text).parse()
