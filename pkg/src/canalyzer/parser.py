"""Parser for human-writable Boolean expressions.

Grammar (case-insensitive keywords, whitespace ignored):

    expr    ::= xorterm  ( ("|" | "OR")  xorterm  )*
    xorterm ::= andterm  ( ("^" | "XOR") andterm  )*
    andterm ::= unary    ( ("&" | "AND") unary    )*
    unary   ::= ("!" | "~" | "NOT") unary | atom
    atom    ::= "0" | "1" | variable | "(" expr ")"

Binary operators are left-associative with precedence NOT > AND > XOR > OR.
Variables are either explicit (x1, x2, ...) or bare identifiers, which are
mapped to the lowest free indices in order of first appearance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .core import TruthTable, _full_mask, _value_mask
from .errors import ParseError


@dataclass(frozen=True)
class Var:
    index: int          # 1-based
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    child: "ExpressionAst"


@dataclass(frozen=True)
class Nary:
    op: str             # "and" | "xor" | "or"
    children: tuple["ExpressionAst", ...]

    def __post_init__(self):
        if self.op not in ("and", "xor", "or"):
            raise ValueError(f"unknown n-ary operator {self.op!r}")
        if len(self.children) < 2:
            raise ValueError("n-ary nodes need at least two children")


ExpressionAst = Union[Var, Const, Not, Nary]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<bit>[01])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[!~&^|()]))"
)
_EXPLICIT_RE = re.compile(r"^[xX]([1-9][0-9]*)$")
_KEYWORDS = {"not": "!", "and": "&", "xor": "^", "or": "|"}


@dataclass(frozen=True)
class _Token:
    kind: str   # "bit" | "var" | "op"
    text: str
    position: int


def _tokenize(expression: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(expression):
        if expression[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(expression, pos)
        if m is None:
            raise ParseError(f"unknown token {expression[pos]!r}", pos)
        if m.group("bit"):
            tokens.append(_Token("bit", m.group("bit"), m.start("bit")))
        elif m.group("ident"):
            word = m.group("ident")
            if word.lower() in _KEYWORDS:
                tokens.append(_Token("op", _KEYWORDS[word.lower()], m.start("ident")))
            else:
                tokens.append(_Token("var", word, m.start("ident")))
        else:
            tokens.append(_Token("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], names: dict[str, int], length: int):
        self.tokens = tokens
        self.names = names
        self.length = length
        self.at = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.at] if self.at < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.length)
        self.at += 1
        return tok

    def expect_op(self, text: str):
        tok = self.peek()
        if tok is None or tok.kind != "op" or tok.text != text:
            pos = tok.position if tok else self.length
            raise ParseError(f"expected {text!r}", pos)
        self.at += 1

    def parse_expression(self) -> ExpressionAst:
        return self._binary("|", "or", lambda: self._binary("^", "xor", self._and_term))

    def _and_term(self) -> ExpressionAst:
        return self._binary("&", "and", self._unary)

    def _binary(self, symbol: str, op: str, sub) -> ExpressionAst:
        children = [sub()]
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text != symbol:
                break
            self.at += 1
            children.append(sub())
        if len(children) == 1:
            return children[0]
        # Left-associativity and flattening coincide for associative ops.
        flat: list[ExpressionAst] = []
        for child in children:
            if isinstance(child, Nary) and child.op == op:
                flat.extend(child.children)
            else:
                flat.append(child)
        return Nary(op, tuple(flat))

    def _unary(self) -> ExpressionAst:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in ("!", "~"):
            self.at += 1
            return Not(self._unary())
        return self._atom()

    def _atom(self) -> ExpressionAst:
        tok = self.take()
        if tok.kind == "bit":
            return Const(int(tok.text))
        if tok.kind == "var":
            return Var(self.names[tok.text], tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expression()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {tok.text!r}", tok.position)


def _resolve_names(tokens: list[_Token]) -> dict[str, int]:
    explicit = {}
    bare_order = []
    for tok in tokens:
        if tok.kind != "var":
            continue
        m = _EXPLICIT_RE.match(tok.text)
        if m:
            explicit[tok.text] = int(m.group(1))
        elif tok.text not in bare_order:
            bare_order.append(tok.text)
    used = set(explicit.values())
    names = dict(explicit)
    next_free = 1
    for name in bare_order:
        while next_free in used:
            next_free += 1
        names[name] = next_free
        used.add(next_free)
    return names


def parse(expression: str, declared_arity: Optional[int] = None) -> ExpressionAst:
    """Parse an expression; explicit indices above declared_arity are rejected."""
    tokens = _tokenize(expression)
    if not tokens:
        raise ParseError("empty expression", 0)
    names = _resolve_names(tokens)
    parser = _Parser(tokens, names, len(expression))
    ast = parser.parse_expression()
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(f"unexpected token {trailing.text!r}", trailing.position)
    if declared_arity is not None:
        top = expression_arity(ast)
        if top > declared_arity:
            raise ParseError(
                f"expression uses x{top} but declared arity is {declared_arity}", 0
            )
    return ast


def expression_arity(ast: ExpressionAst) -> int:
    if isinstance(ast, Var):
        return ast.index
    if isinstance(ast, Const):
        return 0
    if isinstance(ast, Not):
        return expression_arity(ast.child)
    return max(expression_arity(child) for child in ast.children)


def to_table(ast: ExpressionAst, arity: int) -> TruthTable:
    """Evaluate the AST over all 2^arity rows (x1 is the LSB of the row index)."""
    top = expression_arity(ast)
    if arity < top:
        raise ValueError(f"arity {arity} is smaller than referenced variable x{top}")
    full = _full_mask(arity)

    def build(node: ExpressionAst) -> int:
        if isinstance(node, Var):
            return _value_mask(arity, node.index - 1, 1)
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Not):
            return build(node.child) ^ full
        parts = [build(child) for child in node.children]
        acc = parts[0]
        for part in parts[1:]:
            if node.op == "and":
                acc &= part
            elif node.op == "or":
                acc |= part
            else:
                acc ^= part
        return acc

    return TruthTable(arity, build(ast))


def parse_to_table(expression: str, arity: Optional[int] = None) -> TruthTable:
    ast = parse(expression, arity)
    return to_table(ast, arity if arity is not None else expression_arity(ast))


_LEVEL = {"or": 1, "xor": 2, "and": 3}


def to_text(ast: ExpressionAst) -> str:
    """Render an AST with minimal parentheses; reparsing yields the same AST."""

    def render(node: ExpressionAst, parent_level: int) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            return str(node.value)
        if isinstance(node, Not):
            return "!" + render(node.child, 4)
        level = _LEVEL[node.op]
        sep = {"or": " | ", "xor": " ^ ", "and": " & "}[node.op]
        text = sep.join(render(child, level) for child in node.children)
        return f"({text})" if level < parent_level else text

    return render(ast, 0)
