"""Linear-logic formulas: AST, ASCII parser, renderer and negation normal form.

Surface syntax::

    *  tensor        |  par         &  with        +  plus
    -o lollipop      ^  dual (postfix)             !  ?  exponentials (prefix)
    T  top           0  zero        1  one         F  bottom

``-o`` is right-associative and loosest.  ``&``/``+`` share a level, as do
``*``/``|``; the two operators of a level cannot be mixed without
parentheses.  Prefix ``!``/``?`` and postfix ``^`` bind tightest, ``^``
tighter than the prefixes, so ``!A^`` is ``!(A^)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "Dual", "Tensor", "Par", "With", "Plus", "Lollipop", "Bang", "Quest",
    "Top", "Zero", "One", "Bottom", "TOP", "ZERO", "ONE", "BOTTOM",
    "Formula", "FormulaSyntaxError", "parse", "render", "nnf", "dual", "atoms",
    "is_nnf", "FormulaParser",
]

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not IDENT.fullmatch(self.name) or self.name in ("T", "F"):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Dual:
    body: "Formula"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class With:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Plus:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Lollipop:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Bang:
    body: "Formula"


@dataclass(frozen=True)
class Quest:
    body: "Formula"


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


TOP, ZERO, ONE, BOTTOM = Top(), Zero(), One(), Bottom()

Formula = Union[Atom, Dual, Tensor, Par, With, Plus, Lollipop, Bang, Quest, Top, Zero, One, Bottom]
Binary = (Tensor, Par, With, Plus, Lollipop)

_BINARY_SYMBOL = {Tensor: "*", Par: "|", With: "&", Plus: "+", Lollipop: "-o"}
_SYMBOL_BINARY = {v: k for k, v in _BINARY_SYMBOL.items()}
_CONSTANT_TEXT = {Top: "T", Zero: "0", One: "1", Bottom: "F"}
_TEXT_CONSTANT = {"T": TOP, "0": ZERO, "1": ONE, "F": BOTTOM}

# precedence levels; higher binds tighter
_LEVEL = {Lollipop: 1, With: 2, Plus: 2, Tensor: 3, Par: 3}


# -- parsing -----------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; ``offset`` is 1-based."""

    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


_TOKEN = re.compile(r"\s*(?:(-o)|([A-Za-z][A-Za-z0-9_]*)|([01])|([*|&+^!?()])|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'op', 'ident', 'const', 'end'
    text: str
    offset: int  # 1-based


def tokenize(text: str, base: int = 0) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex) + 1 + base
        lollipop, ident, const, op, junk = m.groups()
        if junk is not None:
            raise FormulaSyntaxError(f"unexpected character {junk!r}", start)
        if lollipop:
            tokens.append(Token("op", "-o", start))
        elif ident:
            if ident in ("T", "F"):
                tokens.append(Token("const", ident, start))
            else:
                tokens.append(Token("ident", ident, start))
        elif const:
            tokens.append(Token("const", const, start))
        else:
            tokens.append(Token("op", op, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1 + base))
    return tokens


_PRIMARY_START = frozenset({"atom", "1", "0", "T", "F", "(", "!", "?"})


class FormulaParser:
    """Recursive-descent parser over a token list.

    ``parse_formula`` stops at the first token that cannot extend the
    formula, which lets callers parse juxtaposed formula lists.
    """

    def __init__(self, text: str, base: int = 0):
        self.tokens = tokenize(text, base)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def _next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.peek.kind == "end"

    def parse_formula(self) -> Formula:
        return self._lolli()

    def _lolli(self) -> Formula:
        left = self._level(2)
        if self.peek.text == "-o":
            self._next()
            return Lollipop(left, self._lolli())
        return left

    def _level(self, level: int) -> Formula:
        operand = self._unary if level == 3 else (lambda: self._level(3))
        ops = ("&", "+") if level == 2 else ("*", "|")
        left = operand()
        chosen = None
        while self.peek.kind == "op" and self.peek.text in ops:
            tok = self._next()
            if chosen is None:
                chosen = tok.text
            elif tok.text != chosen:
                raise FormulaSyntaxError(
                    f"cannot mix {chosen!r} and {tok.text!r} without parentheses",
                    tok.offset, frozenset({chosen, "("}))
            left = _SYMBOL_BINARY[tok.text](left, operand())
        return left

    def _unary(self) -> Formula:
        tok = self.peek
        if tok.kind == "op" and tok.text in ("!", "?"):
            self._next()
            body = self._unary()
            return Bang(body) if tok.text == "!" else Quest(body)
        f = self._primary()
        while self.peek.kind == "op" and self.peek.text == "^":
            self._next()
            f = Dual(f)
        return f

    def _primary(self) -> Formula:
        tok = self._next()
        if tok.kind == "ident":
            return Atom(tok.text)
        if tok.kind == "const":
            return _TEXT_CONSTANT[tok.text]
        if tok.kind == "op" and tok.text == "(":
            inner = self._lolli()
            close = self._next()
            if close.text != ")":
                raise FormulaSyntaxError(
                    f"unexpected {_describe(close)}", close.offset,
                    frozenset({")", "-o", "*", "|", "&", "+", "^"}))
            return inner
        raise FormulaSyntaxError(f"unexpected {_describe(tok)}", tok.offset, _PRIMARY_START)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else f"token {tok.text!r}"


def parse(text: str) -> Formula:
    """Parse one formula from ``text``.

    >>> render(parse("A * (B + C)"))
    'A * (B + C)'
    """
    p = FormulaParser(text)
    f = p.parse_formula()
    if not p.at_end():
        tok = p.peek
        raise FormulaSyntaxError(f"unexpected {_describe(tok)}", tok.offset,
                                 frozenset({"end of input", "-o", "*", "|", "&", "+", "^"}))
    return f


# -- rendering ---------------------------------------------------------------

def render(f: Formula) -> str:
    """Canonical text with the fewest parentheses that still re-parse to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if type(f) in _CONSTANT_TEXT:
        return _CONSTANT_TEXT[type(f)]
    if isinstance(f, Dual):
        return _wrap_unless_tight(f.body) + "^"
    if isinstance(f, (Bang, Quest)):
        sym = "!" if isinstance(f, Bang) else "?"
        body = f.body
        text = render(body)
        if isinstance(body, Binary):
            text = f"({text})"
        return sym + text
    kind = type(f)
    sym = _BINARY_SYMBOL[kind]
    if kind is Lollipop:
        left = _paren_if(f.left, lambda g: isinstance(g, Lollipop))
        right = render(f.right)
        return f"{left} -o {right}"
    level = _LEVEL[kind]
    # same operator chains to the left; anything else at this level or looser needs parentheses
    left = _paren_if(f.left, lambda g: isinstance(g, Binary) and type(g) is not kind and _LEVEL[type(g)] <= level
                     or isinstance(g, Lollipop))
    right = _paren_if(f.right, lambda g: isinstance(g, Binary) and _LEVEL[type(g)] <= level)
    return f"{left} {sym} {right}"


def _paren_if(f: Formula, cond) -> str:
    text = render(f)
    return f"({text})" if cond(f) else text


def _wrap_unless_tight(f: Formula) -> str:
    # postfix ^ binds tighter than everything, prefixes included
    text = render(f)
    if isinstance(f, (Atom, Dual, Top, Zero, One, Bottom)):
        return text
    return f"({text})"


# -- normal forms --------------------------------------------------------------

_DUAL_BINARY = {Tensor: Par, Par: Tensor, With: Plus, Plus: With}
_DUAL_CONSTANT = {Top: ZERO, Zero: TOP, One: BOTTOM, Bottom: ONE}


def nnf(f: Formula) -> Formula:
    """Push duals down to atoms and expand ``A -o B`` to ``A^ | B``."""
    return _nnf(f, positive=True)


def dual(f: Formula) -> Formula:
    """The linear negation of ``f``, already in negation normal form."""
    return _nnf(f, positive=False)


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, Atom):
        return f if positive else Dual(f)
    if isinstance(f, Dual):
        return _nnf(f.body, not positive)
    if isinstance(f, Lollipop):
        # A -o B  ==  A^ | B ;  (A -o B)^  ==  A * B^
        left = _nnf(f.left, not positive)
        right = _nnf(f.right, positive)
        return Par(left, right) if positive else Tensor(left, right)
    if isinstance(f, (Tensor, Par, With, Plus)):
        kind = type(f) if positive else _DUAL_BINARY[type(f)]
        return kind(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Bang):
        body = _nnf(f.body, positive)
        return Bang(body) if positive else Quest(body)
    if isinstance(f, Quest):
        body = _nnf(f.body, positive)
        return Quest(body) if positive else Bang(body)
    return f if positive else _DUAL_CONSTANT[type(f)]


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Dual):
        return isinstance(f.body, Atom)
    if isinstance(f, Lollipop):
        return False
    return all(is_nnf(c) for c in children(f))


def children(f: Formula) -> tuple:
    if isinstance(f, Binary):
        return (f.left, f.right)
    if isinstance(f, (Dual, Bang, Quest)):
        return (f.body,)
    return ()


def atoms(f: Formula) -> Iterator[str]:
    """Atom names in left-to-right order, with repetition."""
    if isinstance(f, Atom):
        yield f.name
    for c in children(f):
        yield from atoms(c)
