"""Formula ASTs, concrete syntax, and syntactic transformations.

The connective set is that of propositional modal logic: negation,
conjunction, disjunction, material implication, biconditional, box,
diamond, and strict implication.  Strict implication is pure sugar and is
given meaning only through :func:`desugar`.

Concrete syntax is ASCII (``~ & | -> <-> [] <> |>``); the Unicode glyphs
``¬ ∧ ∨ ⊃ □ ◇`` are accepted on input but never emitted by
:func:`print_formula`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Box",
    "Diamond",
    "StrictImplies",
    "Formula",
    "FormulaSyntaxError",
    "parse",
    "print_formula",
    "desugar",
    "dual_expand",
    "nnf",
    "substitute",
    "subformulas",
    "atoms_of",
    "fresh_atom",
]


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Box:
    operand: "Formula"


@dataclass(frozen=True, slots=True)
class Diamond:
    operand: "Formula"


@dataclass(frozen=True, slots=True)
class StrictImplies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, Box, Diamond, StrictImplies]

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# Unicode input aliases, rewritten to their ASCII spelling by the tokenizer.
_UNICODE_ALIASES = {
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "⊃": "->",
    "□": "[]",
    "◇": "<>",
}


class FormulaSyntaxError(ValueError):
    """Malformed concrete syntax.

    Carries the byte offset of the offending position and the set of
    token spellings that would have been accepted there.
    """

    def __init__(self, text: str, pos: int, expected: tuple[str, ...]):
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = tuple(sorted(expected))
        found = text[pos : pos + 8] or "end of input"
        super().__init__(
            f"syntax error at byte {self.offset}: expected one of "
            f"{', '.join(self.expected)}; found {found!r}"
        )


_Token = tuple[str, str, int]  # (kind, spelling, char position)

_PUNCT = ["<->", "->", "|>", "[]", "<>", "~", "&", "|", "(", ")"]


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        if c in _UNICODE_ALIASES:
            yield (_UNICODE_ALIASES[c], _UNICODE_ALIASES[c], i)
            i += 1
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                yield (punct, punct, i)
                i += len(punct)
                break
        else:
            m = _IDENT_RE.match(text, i)
            if m:
                yield ("ident", m.group(), i)
                i = m.end()
            else:
                raise FormulaSyntaxError(text, i, ("~", "[]", "<>", "(", "identifier"))
    yield ("eof", "", n)


class _Parser:
    """Recursive descent over the grammar:

    formula := iff ; iff := imp ("<->" imp)* ;
    imp := or (("->" | "|>") imp)? ;
    or := and ("|" and)* ; and := unary ("&" unary)* ;
    unary := ("~" | "[]" | "<>")* primary ;
    primary := IDENT | "(" formula ")"

    ``<->`` associates to the left, ``->``/``|>`` to the right.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise FormulaSyntaxError(self.text, tok[2], (kind,))
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        f = self.imp()
        while self.peek()[0] == "<->":
            self.take("<->")
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        kind = self.peek()[0]
        if kind == "->":
            self.take("->")
            return Implies(f, self.imp())
        if kind == "|>":
            self.take("|>")
            return StrictImplies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "|":
            self.take("|")
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.take("&")
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()[0]
        if kind == "~":
            self.take("~")
            return Not(self.unary())
        if kind == "[]":
            self.take("[]")
            return Box(self.unary())
        if kind == "<>":
            self.take("<>")
            return Diamond(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok[0] == "ident":
            self.take("ident")
            return Atom(tok[1])
        if tok[0] == "(":
            self.take("(")
            f = self.formula()
            self.take(")")
            return f
        raise FormulaSyntaxError(self.text, tok[2], ("identifier", "(", "~", "[]", "<>"))


def parse(text: str) -> Formula:
    """Parse concrete syntax into a Formula; whitespace and comments ignored."""
    parser = _Parser(text)
    f = parser.formula()
    parser.take("eof")
    return f


# Precedence levels, tightest binding last.
_PREC_IFF = 1
_PREC_IMP = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_UNARY = 5
_PREC_ATOM = 6

_ASCII_OPS = {"not": "~", "and": "&", "or": "|", "imp": "->", "iff": "<->", "box": "[]", "dia": "<>", "strict": "|>"}
_UNICODE_OPS = {"not": "¬", "and": "∧", "or": "∨", "imp": "⊃", "iff": "<->", "box": "□", "dia": "◇", "strict": "|>"}


def _prec(f: Formula) -> int:
    match f:
        case Atom():
            return _PREC_ATOM
        case Not() | Box() | Diamond():
            return _PREC_UNARY
        case And():
            return _PREC_AND
        case Or():
            return _PREC_OR
        case Implies() | StrictImplies():
            return _PREC_IMP
        case Iff():
            return _PREC_IFF
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula, unicode: bool = False) -> str:
    """Render with minimal parentheses; ``parse(print_formula(f)) == f``.

    With ``unicode=True`` the five aliased connectives are emitted as
    glyphs (``<->`` and ``|>`` have no accepted glyph and stay ASCII).
    """
    ops = _UNICODE_OPS if unicode else _ASCII_OPS

    def wrap(g: Formula, limit: int) -> str:
        s = render(g)
        return f"({s})" if _prec(g) < limit else s

    def render(g: Formula) -> str:
        match g:
            case Atom(name):
                return name
            case Not(x):
                return ops["not"] + wrap(x, _PREC_UNARY)
            case Box(x):
                return ops["box"] + wrap(x, _PREC_UNARY)
            case Diamond(x):
                return ops["dia"] + wrap(x, _PREC_UNARY)
            case And(a, b):
                # left associative: equal precedence needs parens on the right
                return f"{wrap(a, _PREC_AND)} {ops['and']} {wrap(b, _PREC_AND + 1)}"
            case Or(a, b):
                return f"{wrap(a, _PREC_OR)} {ops['or']} {wrap(b, _PREC_OR + 1)}"
            case Implies(a, b):
                # right associative: equal precedence needs parens on the left
                return f"{wrap(a, _PREC_IMP + 1)} {ops['imp']} {wrap(b, _PREC_IMP)}"
            case StrictImplies(a, b):
                return f"{wrap(a, _PREC_IMP + 1)} {ops['strict']} {wrap(b, _PREC_IMP)}"
            case Iff(a, b):
                return f"{wrap(a, _PREC_IFF)} {ops['iff']} {wrap(b, _PREC_IFF + 1)}"
        raise TypeError(f"not a formula: {g!r}")

    return render(f)


def desugar(f: Formula) -> Formula:
    """Replace every ``a |> b`` by ``~<>(a & ~b)``."""
    match f:
        case Atom():
            return f
        case Not(x):
            return Not(desugar(x))
        case Box(x):
            return Box(desugar(x))
        case Diamond(x):
            return Diamond(desugar(x))
        case And(a, b):
            return And(desugar(a), desugar(b))
        case Or(a, b):
            return Or(desugar(a), desugar(b))
        case Implies(a, b):
            return Implies(desugar(a), desugar(b))
        case Iff(a, b):
            return Iff(desugar(a), desugar(b))
        case StrictImplies(a, b):
            return Not(Diamond(And(desugar(a), Not(desugar(b)))))
    raise TypeError(f"not a formula: {f!r}")


def dual_expand(f: Formula) -> Formula:
    """Replace every ``<>a`` by ``~[]~a``.  Input must be sugar-free."""
    match f:
        case Atom():
            return f
        case Not(x):
            return Not(dual_expand(x))
        case Box(x):
            return Box(dual_expand(x))
        case Diamond(x):
            return Not(Box(Not(dual_expand(x))))
        case And(a, b):
            return And(dual_expand(a), dual_expand(b))
        case Or(a, b):
            return Or(dual_expand(a), dual_expand(b))
        case Implies(a, b):
            return Implies(dual_expand(a), dual_expand(b))
        case Iff(a, b):
            return Iff(dual_expand(a), dual_expand(b))
    raise TypeError(f"dual_expand requires sugar-free input: {f!r}")


def nnf(f: Formula) -> Formula:
    """Negation normal form: negations only on atoms, no ->/<-> nodes.

    Input must be sugar-free.  Modalities are pushed through by duality
    (``~[]a`` becomes ``<>~a`` and vice versa); ``<->`` is expanded as the
    conjunction of the two implications.
    """
    match f:
        case Atom():
            return f
        case And(a, b):
            return And(nnf(a), nnf(b))
        case Or(a, b):
            return Or(nnf(a), nnf(b))
        case Implies(a, b):
            return Or(nnf(Not(a)), nnf(b))
        case Iff(a, b):
            return And(nnf(Implies(a, b)), nnf(Implies(b, a)))
        case Box(x):
            return Box(nnf(x))
        case Diamond(x):
            return Diamond(nnf(x))
        case Not(g):
            match g:
                case Atom():
                    return f
                case Not(x):
                    return nnf(x)
                case And(a, b):
                    return Or(nnf(Not(a)), nnf(Not(b)))
                case Or(a, b):
                    return And(nnf(Not(a)), nnf(Not(b)))
                case Implies(a, b):
                    return And(nnf(a), nnf(Not(b)))
                case Iff(a, b):
                    return nnf(Not(And(Implies(a, b), Implies(b, a))))
                case Box(x):
                    return Diamond(nnf(Not(x)))
                case Diamond(x):
                    return Box(nnf(Not(x)))
    raise TypeError(f"nnf requires sugar-free input: {f!r}")


def substitute(f: Formula, name: str, replacement: Formula) -> Formula:
    """Replace every occurrence of the named atom by ``replacement``."""
    match f:
        case Atom(a):
            return replacement if a == name else f
        case Not(x):
            return Not(substitute(x, name, replacement))
        case Box(x):
            return Box(substitute(x, name, replacement))
        case Diamond(x):
            return Diamond(substitute(x, name, replacement))
        case And(a, b):
            return And(substitute(a, name, replacement), substitute(b, name, replacement))
        case Or(a, b):
            return Or(substitute(a, name, replacement), substitute(b, name, replacement))
        case Implies(a, b):
            return Implies(substitute(a, name, replacement), substitute(b, name, replacement))
        case Iff(a, b):
            return Iff(substitute(a, name, replacement), substitute(b, name, replacement))
        case StrictImplies(a, b):
            return StrictImplies(substitute(a, name, replacement), substitute(b, name, replacement))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> frozenset[Formula]:
    """All distinct subtrees of ``f``, including ``f`` itself."""
    acc: set[Formula] = set()

    def walk(g: Formula) -> None:
        if g in acc:
            return
        acc.add(g)
        match g:
            case Atom():
                pass
            case Not(x) | Box(x) | Diamond(x):
                walk(x)
            case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | StrictImplies(a, b):
                walk(a)
                walk(b)

    walk(f)
    return frozenset(acc)


def atoms_of(f: Formula) -> frozenset[str]:
    """Names of all atoms occurring in ``f``."""
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def fresh_atom(avoid: set[str] | frozenset[str]) -> str:
    """Smallest name of the form p0, p1, ... not occurring in ``avoid``."""
    i = 0
    while f"p{i}" in avoid:
        i += 1
    return f"p{i}"
