"""Concrete syntax for list formulas.

Identifiers starting with an upper-case letter are list variables, all
others are integer variables. Example::

    sorted(X) && head(X) >= 0 && exists Y. prefix(Y, X) && Y != nil
"""

from __future__ import annotations

from typing import List, Mapping, Optional, Tuple

from padded_logic.errors import InputError
from padded_logic.parse import COMPARISONS, TokenStream
from listlang.formulas import INT, LIST, ArithCmp, Conj, Disj, Exists, ListEq, Neg, SarFormula, Truth
from listlang.predicates import LIBRARY, PredicateDef
from listlang.terms import NIL, Cons, Head, IAdd, IConst, IMulConst, ISub, IVar, LVar, Tail, Term, is_list_term

KEYWORDS = {"exists", "true", "false", "nil", "cons", "tail", "head", "and", "or", "not"}


def sort_of_name(name: str) -> str:
    return LIST if name[0].isupper() else INT


class _FormulaParser:
    def __init__(self, text: str, predicates: Mapping[str, PredicateDef]):
        self.stream = TokenStream(text)
        self.predicates = predicates

    def parse(self) -> SarFormula:
        phi = self.formula()
        if not self.stream.done():
            raise self.stream.error("trailing input")
        return phi

    def formula(self) -> SarFormula:
        parts = [self.conjunction()]
        while self.stream.accept("||", "or"):
            parts.append(self.conjunction())
        return Disj(tuple(parts)) if len(parts) > 1 else parts[0]

    def conjunction(self) -> SarFormula:
        parts = [self.unary()]
        while self.stream.accept("&&", "and"):
            parts.append(self.unary())
        return Conj(tuple(parts)) if len(parts) > 1 else parts[0]

    def unary(self) -> SarFormula:
        s = self.stream
        if s.accept("!", "not"):
            return Neg(self.unary())
        if s.accept("exists"):
            names = [self.binder()]
            while s.accept(","):
                names.append(self.binder())
            s.expect(".")
            body = self.formula()
            for name in reversed(names):
                body = Exists(name, sort_of_name(name), body)
            return body
        if s.accept("true"):
            return Truth(True)
        if s.accept("false"):
            return Truth(False)
        tok = s.peek()
        if tok is not None and tok.kind == "ident" and tok.text in self.predicates and s.peek(1) and s.peek(1).text == "(":
            return self.call()
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

    def binder(self) -> str:
        tok = self.stream.advance()
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.stream.pos -= 1
            raise self.stream.error("expected a variable name")
        return tok.text

    def call(self) -> SarFormula:
        s = self.stream
        name = s.advance().text
        s.expect("(")
        args: List[Term] = []
        if not s.at(")"):
            args.append(self.term())
            while s.accept(","):
                args.append(self.term())
        s.expect(")")
        return self.predicates[name](*args)

    def comparison(self) -> SarFormula:
        s = self.stream
        left = self.term()
        tok = s.peek()
        if tok is None or tok.text not in COMPARISONS:
            raise s.error("expected comparison operator")
        s.advance()
        right = self.term()
        op = COMPARISONS[tok.text]
        lists = (is_list_term(left), is_list_term(right))
        if lists == (True, True):
            if op == "=":
                return ListEq(left, right)
            if op == "!=":
                return Neg(ListEq(left, right))
            raise InputError(f"lists can only be compared with == and != in {s.text!r}")
        if any(lists):
            raise InputError(f"comparison mixes a list and an integer in {s.text!r}")
        return ArithCmp(op, left, right)

    def term(self) -> Term:
        result = self.product()
        while self.stream.at("+", "-"):
            op = self.stream.advance().text
            right = self.product()
            self._require_int(result, right)
            result = IAdd(result, right) if op == "+" else ISub(result, right)
        return result

    def product(self) -> Term:
        result = self.factor()
        while self.stream.accept("*"):
            right = self.factor()
            self._require_int(result, right)
            if isinstance(result, IConst):
                result = IMulConst(result.value, right)
            elif isinstance(right, IConst):
                result = IMulConst(right.value, result)
            else:
                raise self.stream.error("nonlinear product")
        return result

    def factor(self) -> Term:
        s = self.stream
        if s.accept("-"):
            inner = self.factor()
            self._require_int(inner)
            return IConst(-inner.value) if isinstance(inner, IConst) else IMulConst(-1, inner)
        if s.accept("("):
            inner = self.term()
            s.expect(")")
            return inner
        tok = s.advance()
        if tok.kind == "int":
            return IConst(int(tok.text))
        if tok.text == "nil":
            return NIL
        if tok.text == "cons":
            s.expect("(")
            head = self.term()
            s.expect(",")
            tail = self.term()
            s.expect(")")
            if is_list_term(head) or not is_list_term(tail):
                raise InputError(f"cons expects an integer and a list in {s.text!r}")
            return Cons(head, tail)
        if tok.text in ("head", "tail"):
            s.expect("(")
            arg = self.term()
            s.expect(")")
            if not is_list_term(arg):
                raise InputError(f"{tok.text} expects a list in {s.text!r}")
            return Head(arg) if tok.text == "head" else Tail(arg)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return LVar(tok.text) if sort_of_name(tok.text) == LIST else IVar(tok.text)
        s.pos -= 1
        raise s.error("expected a term")

    def _require_int(self, *terms: Term) -> None:
        if any(is_list_term(t) for t in terms):
            raise self.stream.error("arithmetic on a list term")


def parse_formula(text: str, predicates: Optional[Mapping[str, PredicateDef]] = None) -> SarFormula:
    """Parse ``text``; library predicates are always in scope."""
    scope = dict(LIBRARY)
    if predicates:
        scope.update(predicates)
    return _FormulaParser(text, scope).parse()


def parse_term(text: str) -> Term:
    parser = _FormulaParser(text, {})
    term = parser.term()
    if not parser.stream.done():
        raise parser.stream.error("trailing input")
    return term


def split_signature(names: Tuple[str, ...]) -> Tuple[str, ...]:
    return tuple(sort_of_name(n) for n in names)
