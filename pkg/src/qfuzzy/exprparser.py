"""Surface language for fuzzy pipelines: parsing, printing, evaluation.

Grammar (keywords are case-sensitive; ``NOT`` binds tightest, then ``AND``,
then ``OR``; the binary connectives associate to the left)::

    expr    := term ("OR" term)*
    term    := factor ("AND" factor)*
    factor  := "NOT" factor | primary
    primary := IDENT | "(" expr ")" | "FUZ" "(" INT "," INT ")"
             | "DEFUZ" "(" expr ")"
             | "SUPERPOSE" "(" NUM "*" expr ("," NUM "*" expr)* ")"

Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``; NUM is a decimal real (an
optional sign, digits, optional fraction and exponent).  ``DEFUZ`` may only
appear at the top level of an evaluated expression, and ``SUPERPOSE`` is
quantum-only with subterms restricted to identifiers and ``FUZ`` leaves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .fuzzy import (
    FuzzySet,
    classical_fuzzify,
    com_pushforward,
    complement,
    intersect,
    union,
)
from .qfs import (
    QuantumFuzzySet,
    defuzzify,
    encode,
    fuz_isometry,
    qand,
    qnot,
    qor,
    superpose,
)
from .statevec import DEFAULT_QUBIT_CAP


class ParseError(Exception):
    """Lexical or syntax error, with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col


class EvalError(Exception):
    """Semantic error during evaluation, with the offending node's position
    when one is known."""

    def __init__(self, message: str, pos: tuple[int, int] | None = None):
        if pos is not None:
            message = f"{message} at {pos[0]}:{pos[1]}"
        super().__init__(message)
        self.message = message
        self.pos = pos


# --- tokens ---------------------------------------------------------------

KEYWORDS = frozenset({"NOT", "AND", "OR", "FUZ", "DEFUZ", "SUPERPOSE"})

_TOKEN_RE = re.compile(
    r"(?P<NUMBER>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<LPAREN>\()"
    r"|(?P<RPAREN>\))"
    r"|(?P<COMMA>,)"
    r"|(?P<STAR>\*)"
)

_INT_RE = re.compile(r"\d+")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch in " \t\r":
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if match is None:
            raise ParseError(
                f"lexical error at {line}:{col}: unexpected character {ch!r}",
                line,
                col,
            )
        kind = match.lastgroup or ""
        tok_text = match.group()
        if kind == "IDENT" and tok_text in KEYWORDS:
            kind = tok_text
        tokens.append(Token(kind, tok_text, line, col))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# --- syntax tree ----------------------------------------------------------


@dataclass(frozen=True)
class Ident:
    name: str
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not:
    child: "ExprAst"
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    left: "ExprAst"
    right: "ExprAst"
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    left: "ExprAst"
    right: "ExprAst"
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Fuz:
    index: int
    k: int
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Defuz:
    child: "ExprAst"
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Superpose:
    terms: tuple[tuple[float, "ExprAst"], ...]
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


ExprAst = Union[Ident, Not, And, Or, Fuz, Defuz, Superpose]


# --- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.idx = 0

    def peek(self) -> Token:
        return self.tokens[self.idx]

    def advance(self) -> Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def fail(self, expected: str) -> None:
        tok = self.peek()
        found = "end of input" if tok.kind == "EOF" else f"'{tok.text}'"
        raise ParseError(
            f"syntax error at {tok.line}:{tok.col}: expected {expected}, "
            f"found {found}",
            tok.line,
            tok.col,
        )

    def expect(self, kind: str, expected: str) -> Token:
        if self.peek().kind != kind:
            self.fail(expected)
        return self.advance()

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek().kind == "OR":
            tok = self.advance()
            node = Or(node, self.term(), pos=(tok.line, tok.col))
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self.peek().kind == "AND":
            tok = self.advance()
            node = And(node, self.factor(), pos=(tok.line, tok.col))
        return node

    def factor(self) -> ExprAst:
        if self.peek().kind == "NOT":
            tok = self.advance()
            return Not(self.factor(), pos=(tok.line, tok.col))
        return self.primary()

    def primary(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.advance()
            return Ident(tok.text, pos=(tok.line, tok.col))
        if tok.kind == "LPAREN":
            self.advance()
            node = self.expr()
            self.expect("RPAREN", "')'")
            return node
        if tok.kind == "FUZ":
            self.advance()
            self.expect("LPAREN", "'('")
            index = self.integer()
            self.expect("COMMA", "','")
            k = self.integer()
            self.expect("RPAREN", "')'")
            return Fuz(index, k, pos=(tok.line, tok.col))
        if tok.kind == "DEFUZ":
            self.advance()
            self.expect("LPAREN", "'('")
            node = self.expr()
            self.expect("RPAREN", "')'")
            return Defuz(node, pos=(tok.line, tok.col))
        if tok.kind == "SUPERPOSE":
            self.advance()
            self.expect("LPAREN", "'('")
            terms = [self.superpose_term()]
            while self.peek().kind == "COMMA":
                self.advance()
                terms.append(self.superpose_term())
            self.expect("RPAREN", "')'")
            return Superpose(tuple(terms), pos=(tok.line, tok.col))
        self.fail("expression")
        raise AssertionError("unreachable")

    def superpose_term(self) -> tuple[float, ExprAst]:
        num = self.expect("NUMBER", "coefficient")
        self.expect("STAR", "'*'")
        return float(num.text), self.expr()

    def integer(self) -> int:
        tok = self.peek()
        if tok.kind != "NUMBER" or not _INT_RE.fullmatch(tok.text):
            self.fail("integer")
        self.advance()
        return int(tok.text)


def parse(text: str) -> ExprAst:
    """Parse an expression, raising :class:`ParseError` with the 1-based
    position of the offending token on bad input."""
    parser = _Parser(tokenize(text))
    node = parser.expr()
    if parser.peek().kind != "EOF":
        parser.fail("end of input")
    return node


def pretty_print(ast: ExprAst) -> str:
    """Fully parenthesized canonical text; reparsing it reproduces ``ast``."""
    if isinstance(ast, Ident):
        return ast.name
    if isinstance(ast, Not):
        return f"(NOT {pretty_print(ast.child)})"
    if isinstance(ast, And):
        return f"({pretty_print(ast.left)} AND {pretty_print(ast.right)})"
    if isinstance(ast, Or):
        return f"({pretty_print(ast.left)} OR {pretty_print(ast.right)})"
    if isinstance(ast, Fuz):
        return f"FUZ({ast.index}, {ast.k})"
    if isinstance(ast, Defuz):
        return f"DEFUZ({pretty_print(ast.child)})"
    if isinstance(ast, Superpose):
        terms = ", ".join(f"{c!r} * {pretty_print(t)}" for c, t in ast.terms)
        return f"SUPERPOSE({terms})"
    raise TypeError(f"not an expression node: {ast!r}")


# --- evaluation -----------------------------------------------------------


@dataclass(frozen=True)
class Environment:
    """Immutable evaluation context: the universe, the named fuzzy sets, and
    the run parameters for the quantum mode."""

    universe_size: int
    bindings: Mapping[str, FuzzySet]
    mode: str = "classical"
    seed: int = 0
    trials: int = 10000
    qubit_cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self) -> None:
        if self.universe_size < 1:
            raise ValueError(f"universe_size must be >= 1, got {self.universe_size}")
        if self.mode not in ("classical", "quantum"):
            raise ValueError(f"mode must be 'classical' or 'quantum', got {self.mode!r}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        for name, f in self.bindings.items():
            if f.universe_size != self.universe_size:
                raise ValueError(
                    f"set {name!r} has universe size {f.universe_size}, "
                    f"expected {self.universe_size}"
                )


def evaluate(ast: ExprAst, env: Environment):
    """Dispatch on ``env.mode``."""
    if env.mode == "classical":
        return eval_classical(ast, env)
    return eval_quantum(ast, env)


def eval_classical(ast: ExprAst, env: Environment) -> FuzzySet | dict[int, float]:
    """Membership arithmetic; a top-level DEFUZ returns the exact
    center-of-mass distribution instead of a set."""
    if isinstance(ast, Defuz):
        return com_pushforward(_classical_set(ast.child, env))
    return _classical_set(ast, env)


def _classical_set(node: ExprAst, env: Environment) -> FuzzySet:
    if isinstance(node, Ident):
        return _lookup(node, env)
    if isinstance(node, Not):
        return complement(_classical_set(node.child, env))
    if isinstance(node, And):
        return intersect(_classical_set(node.left, env), _classical_set(node.right, env))
    if isinstance(node, Or):
        return union(_classical_set(node.left, env), _classical_set(node.right, env))
    if isinstance(node, Fuz):
        return _fuzzify_window(node, env)
    if isinstance(node, Defuz):
        raise EvalError("DEFUZ is only allowed at the top level", node.pos)
    if isinstance(node, Superpose):
        raise EvalError("SUPERPOSE is not available in classical mode", node.pos)
    raise TypeError(f"not an expression node: {node!r}")


def eval_quantum(ast: ExprAst, env: Environment) -> QuantumFuzzySet | dict[int, int]:
    """Register simulation; a top-level DEFUZ returns sampled center-of-mass
    counts over ``env.trials`` trials seeded by ``env.seed``."""
    if isinstance(ast, Defuz):
        state = _quantum_state(ast.child, env)
        rng = np.random.default_rng(env.seed)
        return defuzzify(state, rng, env.trials, cap=env.qubit_cap)
    return _quantum_state(ast, env)


def _quantum_state(node: ExprAst, env: Environment) -> QuantumFuzzySet:
    if isinstance(node, Ident):
        return encode(_lookup(node, env), cap=env.qubit_cap)
    if isinstance(node, Not):
        return qnot(_quantum_state(node.child, env))
    if isinstance(node, And):
        return qand(
            _quantum_state(node.left, env),
            _quantum_state(node.right, env),
            cap=env.qubit_cap,
        )
    if isinstance(node, Or):
        return qor(
            _quantum_state(node.left, env),
            _quantum_state(node.right, env),
            cap=env.qubit_cap,
        )
    if isinstance(node, Fuz):
        _fuzzify_window(node, env)  # validates index and radius
        one_hot = np.zeros(env.universe_size)
        one_hot[node.index - 1] = 1.0
        seeded = encode(FuzzySet(one_hot), cap=env.qubit_cap)
        return fuz_isometry(seeded, node.k, cap=env.qubit_cap)
    if isinstance(node, Defuz):
        raise EvalError("DEFUZ is only allowed at the top level", node.pos)
    if isinstance(node, Superpose):
        terms = [(c, _superpose_leaf(t, env)) for c, t in node.terms]
        return superpose(terms, cap=env.qubit_cap)
    raise TypeError(f"not an expression node: {node!r}")


def _superpose_leaf(node: ExprAst, env: Environment) -> FuzzySet:
    """Superposition combines plain encoded sets, so subterms must stay
    leaves; connective outputs live on grown registers and are rejected."""
    if isinstance(node, Ident):
        return _lookup(node, env)
    if isinstance(node, Fuz):
        return _fuzzify_window(node, env)
    pos = getattr(node, "pos", None)
    raise EvalError("SUPERPOSE terms must be identifiers or FUZ leaves", pos)


def _lookup(node: Ident, env: Environment) -> FuzzySet:
    try:
        return env.bindings[node.name]
    except KeyError:
        raise EvalError(f"unbound identifier '{node.name}'", node.pos) from None


def _fuzzify_window(node: Fuz, env: Environment) -> FuzzySet:
    if not 1 <= node.index <= env.universe_size:
        raise EvalError(
            f"FUZ index {node.index} out of range 1..{env.universe_size}",
            node.pos,
        )
    return classical_fuzzify(node.index, node.k, env.universe_size)
