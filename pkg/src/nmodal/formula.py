"""Modal formulas: core AST, surface parser, printer, substitution, closures.

The stored language is deliberately minimal: variables, negation `~`,
conjunction `&` and box `[]`.  Everything else a user may type (`|`, `->`,
`<->`, `<>`, `top`, `bot`) is surface syntax that the parser rewrites away
immediately:

    a | b    =>  ~(~a & ~b)
    a -> b   =>  ~(a & ~b)
    a <-> b  =>  (a -> b) & (b -> a), then rewritten again
    <> a     =>  ~[]~a
    top      =>  ~(p & ~p)
    bot      =>  p & ~p

`top`/`bot` expand through the reserved variable name `p`, which is why
"did the source text use any variable?" is a property of the text, not of
the AST; see is_variable_free().

Formulas are immutable and hashable, so they can key dictionaries and sit in
sets. All functions here are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Var",
    "Neg",
    "And",
    "Box",
    "Formula",
    "Substitution",
    "ParseError",
    "TOP",
    "BOT",
    "parse",
    "is_variable_free",
    "render",
    "node_count",
    "modal_depth",
    "variables",
    "substitute",
    "immediate_subformulas",
    "order_key",
    "SubformulaSet",
    "subformula_closure",
]

_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
RESERVED_WORDS = frozenset({"top", "bot"})


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")
        if self.name in RESERVED_WORDS:
            # 'top'/'bot' are grammar keywords; a variable spelled that way
            # could never survive a render/parse round trip.
            raise ValueError(f"{self.name!r} is a reserved word, not a variable name")


@dataclass(frozen=True, slots=True)
class Neg:
    child: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Box:
    child: "Formula"


Formula = Union[Var, Neg, And, Box]

#: Maps variable names to replacement formulas; absent names are fixed points.
Substitution = Mapping[str, Formula]

_P = Var("p")
BOT: Formula = And(_P, Neg(_P))
TOP: Formula = Neg(BOT)


class ParseError(ValueError):
    """Raised on any syntax error; carries the 0-based source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"[a-z][a-zA-Z0-9_]*|<->|->|<>|\[\]|[~&|()]")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        tokens.append((m.group(), i))
        i = m.end()
    return tokens


class _Parser:
    """Recursive descent over the token list; desugars while building."""

    def __init__(self, tokens: list[tuple[str, int]], length: int):
        self.tokens = tokens
        self.pos = 0
        self.length = length
        self.saw_variable = False

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return self.length

    def take(self) -> str:
        tok = self.peek()
        assert tok is not None
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}", self.here())
        self.pos += 1

    # Binary levels, loosest first.  '<->' and '->' associate to the right,
    # '&' and '|' to the left.
    def iff(self) -> Formula:
        left = self.imp()
        if self.peek() == "<->":
            self.take()
            right = self.iff()
            return And(_implies(left, right), _implies(right, left))
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return _implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            g = self.conj()
            f = Neg(And(Neg(f), Neg(g)))
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Neg(self.unary())
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<>":
            self.take()
            return Neg(Box(Neg(self.unary())))
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.here())
        if tok == "(":
            self.take()
            f = self.iff()
            self.expect(")")
            return f
        if tok == "top":
            self.take()
            return TOP
        if tok == "bot":
            self.take()
            return BOT
        if _NAME_RE.match(tok):
            self.take()
            self.saw_variable = True
            return Var(tok)
        raise ParseError(f"unexpected token {tok!r}", self.here())


def _implies(a: Formula, b: Formula) -> Formula:
    return Neg(And(a, Neg(b)))


def _parse(text: str) -> tuple[Formula, bool]:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 0)
    parser = _Parser(tokens, len(text))
    f = parser.iff()
    if parser.peek() is not None:
        raise ParseError(f"unexpected token {parser.peek()!r}", parser.here())
    return f, parser.saw_variable


def parse(text: str) -> Formula:
    """Parse surface syntax into the core AST (fully desugared)."""
    return _parse(text)[0]


def is_variable_free(text: str) -> bool:
    """True iff the *source text* uses no variable token.

    This is a property of the surface syntax: `[]top` is variable-free even
    though its desugared AST contains the reserved variable `p`.
    """
    return not _parse(text)[1]


def render(f: Formula) -> str:
    """Print with core connectives only and minimal parentheses.

    `&` associates to the left, so only a right-child conjunction or a
    conjunction under a unary operator needs parentheses.
    parse(render(f)) == f for every formula.
    """
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Neg):
        return "~" + _wrap_tight(f.child)
    if isinstance(f, Box):
        return "[]" + _wrap_tight(f.child)
    if isinstance(f, And):
        return render(f.left) + " & " + _wrap_tight(f.right)
    raise TypeError(f"not a formula: {f!r}")


def _wrap_tight(f: Formula) -> str:
    if isinstance(f, And):
        return "(" + render(f) + ")"
    return render(f)


def node_count(f: Formula) -> int:
    if isinstance(f, Var):
        return 1
    if isinstance(f, (Neg, Box)):
        return 1 + node_count(f.child)
    return 1 + node_count(f.left) + node_count(f.right)


def modal_depth(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, Box):
        return 1 + modal_depth(f.child)
    if isinstance(f, Neg):
        return modal_depth(f.child)
    return max(modal_depth(f.left), modal_depth(f.right))


def variables(f: Formula) -> frozenset[str]:
    """Variable names of the (desugared) AST."""
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, (Neg, Box)):
        return variables(f.child)
    return variables(f.left) | variables(f.right)


def substitute(f: Formula, s: Substitution) -> Formula:
    """Simultaneous substitution: a homomorphism on the AST."""
    if isinstance(f, Var):
        return s.get(f.name, f)
    if isinstance(f, Neg):
        return Neg(substitute(f.child, s))
    if isinstance(f, Box):
        return Box(substitute(f.child, s))
    return And(substitute(f.left, s), substitute(f.right, s))


def immediate_subformulas(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Var):
        return ()
    if isinstance(f, (Neg, Box)):
        return (f.child,)
    return (f.left, f.right)


def order_key(f: Formula) -> tuple[int, str]:
    """Deterministic ordering: ascending node count, ties by rendered text."""
    return (node_count(f), render(f))


@dataclass(frozen=True)
class SubformulaSet:
    """A duplicate-free formula tuple, closed under subformulas, in order_key order.

    The constructor validates all three invariants, so holding a value of this
    type is proof the set is usable as a filtration alphabet.
    """

    formulas: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "formulas", tuple(self.formulas))
        seen = set(self.formulas)
        if len(seen) != len(self.formulas):
            raise ValueError("duplicate formulas")
        keys = [order_key(f) for f in self.formulas]
        if keys != sorted(keys):
            raise ValueError("formulas not in canonical order")
        for f in self.formulas:
            for g in immediate_subformulas(f):
                if g not in seen:
                    raise ValueError(f"not subformula-closed: missing {render(g)}")

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __contains__(self, f: object) -> bool:
        return f in self.formulas

    def boxed(self) -> tuple[Box, ...]:
        """The members of shape []g, in set order."""
        return tuple(f for f in self.formulas if isinstance(f, Box))

    def variable_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.formulas if isinstance(f, Var))


def subformula_closure(f: Formula) -> SubformulaSet:
    """All subformulas of f (f included), as a SubformulaSet."""
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        stack.extend(immediate_subformulas(g))
    return SubformulaSet(tuple(sorted(seen, key=order_key)))
