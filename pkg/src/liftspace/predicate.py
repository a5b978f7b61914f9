"""A small predicate language over a single Boolean function.

Grammar (``not`` binds tightest, then ``and``, then ``or``; binary operators are
left-associative)::

    expr    := conj ("or" conj)*
    conj    := neg ("and" neg)*
    neg     := "not" neg | primary
    primary := atom | "(" expr ")"
    atom    := "parity" | "constant" | "balanced"
             | "value_at(" bits ")" | "ones" cmp int
    cmp     := "==" | "!=" | "<" | "<=" | ">" | ">="

``parity`` is true for functions with an odd number of 1-outputs.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .errors import ArityMismatch, PredicateParseError

if TYPE_CHECKING:
    from .funcspace import BooleanFunction

KEYWORDS = ("parity", "constant", "balanced")

COMPARATORS = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ValueAt:
    inputs: str

    def __str__(self) -> str:
        return f"value_at({self.inputs})"


@dataclass(frozen=True)
class OnesCmp:
    op: str
    value: int

    def __str__(self) -> str:
        return f"ones {self.op} {self.value}"


@dataclass(frozen=True)
class Not:
    operand: Predicate

    def __str__(self) -> str:
        inner = str(self.operand)
        if isinstance(self.operand, (And, Or)):
            inner = f"({inner})"
        return f"not {inner}"


@dataclass(frozen=True)
class And:
    left: Predicate
    right: Predicate

    def __str__(self) -> str:
        left = _wrap(self.left, (Or,))
        right = _wrap(self.right, (Or, And))
        return f"{left} and {right}"


@dataclass(frozen=True)
class Or:
    left: Predicate
    right: Predicate

    def __str__(self) -> str:
        return f"{self.left} or {_wrap(self.right, (Or,))}"


Predicate = Union[Atom, ValueAt, OnesCmp, Not, And, Or]


def _wrap(node: Predicate, kinds: tuple) -> str:
    return f"({node})" if isinstance(node, kinds) else str(node)


_TOKEN = re.compile(
    r"\s*(?:(?P<cmp>==|!=|<=|>=|<|>)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<int>-?\d+)|(?P<word>[A-Za-z_]+)|(?P<bad>\S))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        if kind is None:
            break
        start = m.start(kind)
        if kind == "bad":
            raise PredicateParseError(f"unexpected character {m.group(kind)!r}", start, text)
        tokens.append(_Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise PredicateParseError(f"{message}, found {found}", tok.pos, self.text)

    def expect(self, kind: str, what: str) -> _Token:
        if self.peek().kind != kind:
            self.fail(f"expected {what}")
        return self.take()

    def is_word(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "word" and tok.text == word

    def parse(self) -> Predicate:
        if self.peek().kind == "end":
            self.fail("empty predicate")
        node = self.expr()
        if self.peek().kind != "end":
            self.fail("expected 'and', 'or' or end of input")
        return node

    def expr(self) -> Predicate:
        node = self.conj()
        while self.is_word("or"):
            self.take()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Predicate:
        node = self.neg()
        while self.is_word("and"):
            self.take()
            node = And(node, self.neg())
        return node

    def neg(self) -> Predicate:
        if self.is_word("not"):
            self.take()
            return Not(self.neg())
        return self.primary()

    def primary(self) -> Predicate:
        tok = self.peek()
        if tok.kind == "lpar":
            self.take()
            node = self.expr()
            self.expect("rpar", "')'")
            return node
        if tok.kind != "word":
            self.fail("expected a predicate")
        if tok.text in KEYWORDS:
            self.take()
            return Atom(tok.text)
        if tok.text == "value_at":
            self.take()
            self.expect("lpar", "'(' after value_at")
            bits = self.expect("int", "an input bitstring")
            if not bits.text or set(bits.text) - {"0", "1"}:
                self.fail("value_at needs a bitstring of 0s and 1s", bits)
            self.expect("rpar", "')'")
            return ValueAt(bits.text)
        if tok.text == "ones":
            self.take()
            cmp = self.expect("cmp", "a comparison operator")
            value = self.expect("int", "an integer")
            return OnesCmp(cmp.text, int(value.text))
        self.fail("unknown predicate")


def parse_predicate(text: str) -> Predicate:
    return _Parser(text).parse()


def predicate_arity(p: Predicate) -> int | None:
    """The arity forced by ``value_at`` atoms, or None when any arity works."""
    if isinstance(p, ValueAt):
        return len(p.inputs)
    if isinstance(p, Not):
        return predicate_arity(p.operand)
    if isinstance(p, (And, Or)):
        found = {a for a in (predicate_arity(p.left), predicate_arity(p.right)) if a is not None}
        if len(found) > 1:
            raise ArityMismatch(f"predicate mixes input widths {sorted(found)}: {p}")
        return found.pop() if found else None
    return None


def eval_predicate(p: Predicate, f: BooleanFunction) -> bool:
    if isinstance(p, Atom):
        ones = f.ones()
        if p.name == "parity":
            return ones % 2 == 1
        if p.name == "constant":
            return ones in (0, len(f.truth_table))
        if p.name == "balanced":
            return 2 * ones == len(f.truth_table)
        raise ValueError(f"unknown atom {p.name!r}")
    if isinstance(p, ValueAt):
        return f.value_at(p.inputs) == 1
    if isinstance(p, OnesCmp):
        return COMPARATORS[p.op](f.ones(), p.value)
    if isinstance(p, Not):
        return not eval_predicate(p.operand, f)
    if isinstance(p, And):
        # evaluate both sides so arity errors never hide behind short-circuiting
        left, right = eval_predicate(p.left, f), eval_predicate(p.right, f)
        return left and right
    if isinstance(p, Or):
        left, right = eval_predicate(p.left, f), eval_predicate(p.right, f)
        return left or right
    raise TypeError(f"not a predicate: {p!r}")


def class_labels(p: Predicate) -> tuple[str, str]:
    """(true label, false label); the bare ``parity`` query reads odd/even."""
    if p == Atom("parity"):
        return "odd", "even"
    return "1", "0"


def classify(p: Predicate, f: BooleanFunction) -> str:
    true_label, false_label = class_labels(p)
    return true_label if eval_predicate(p, f) else false_label
