"""Formulas of the implicational fragment and lambda terms.

Formulas are binary trees over the right-associative lollipop connective
``-o`` with natural-number atoms at the leaves.  Terms are lambda terms with
an explicit integer binder identity on every lambda node; de Bruijn indices
appear only in the postfix wire format.
"""

from __future__ import annotations

import enum
import re
from typing import Iterator, NamedTuple, Union


class Atom(NamedTuple):
    ident: int


class Imp(NamedTuple):
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Imp]


class Var(NamedTuple):
    binder: int


class Lam(NamedTuple):
    binder: int
    body: "Term"


class App(NamedTuple):
    fun: "Term"
    arg: "Term"


Term = Union[Var, Lam, App]


class Polarity(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1

    def flipped(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


class ParseError(ValueError):
    """Malformed input text; ``position`` is a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class OpenTermError(ValueError):
    """A variable occurrence has no enclosing lambda with its binder id."""


# ---------------------------------------------------------------------------
# sizes


def formula_size(f: Formula) -> int:
    """Number of ``-o`` nodes (an atom has size 0)."""
    size = 0
    todo = [f]
    while todo:
        node = todo.pop()
        if type(node) is Imp:
            size += 1
            todo.append(node.left)
            todo.append(node.right)
    return size


def term_size(t: Term) -> int:
    """Number of lambda nodes plus number of application nodes."""
    size = 0
    todo = [t]
    while todo:
        node = todo.pop()
        if type(node) is Lam:
            size += 1
            todo.append(node.body)
        elif type(node) is App:
            size += 1
            todo.append(node.fun)
            todo.append(node.arg)
    return size


# ---------------------------------------------------------------------------
# linearity

def binder_usage(t: Term) -> dict[int, int]:
    """Occurrence count of every lambda binder in ``t``.

    Raises OpenTermError for a variable with no enclosing binder and
    ValueError if two lambda nodes share a binder id.
    """
    counts: dict[int, int] = {}
    scope: list[int] = []
    # (node, entering) pairs; a False entry pops the binder pushed on entry
    todo: list[tuple[Term, bool] | tuple[int, bool]] = [(t, True)]
    while todo:
        node, entering = todo.pop()
        if not entering:
            scope.pop()
            continue
        if type(node) is Var:
            if node.binder not in scope:
                raise OpenTermError(f"unbound variable x{node.binder}")
            counts[node.binder] += 1
        elif type(node) is Lam:
            if node.binder in counts:
                raise ValueError(f"duplicate binder id x{node.binder}")
            counts[node.binder] = 0
            scope.append(node.binder)
            todo.append((node, False))
            todo.append((node.body, True))
        else:
            todo.append((node.arg, True))
            todo.append((node.fun, True))
    return counts


def is_linear(t: Term) -> bool:
    """True iff every lambda binder is referenced exactly once."""
    return all(n == 1 for n in binder_usage(t).values())


def is_affine(t: Term) -> bool:
    """True iff every lambda binder is referenced at most once."""
    return all(n <= 1 for n in binder_usage(t).values())


def is_normal_form(t: Term) -> bool:
    """True iff no application node has a lambda as its function child."""
    todo = [t]
    while todo:
        node = todo.pop()
        if type(node) is Lam:
            todo.append(node.body)
        elif type(node) is App:
            if type(node.fun) is Lam:
                return False
            todo.append(node.fun)
            todo.append(node.arg)
    return True


# ---------------------------------------------------------------------------
# polarity

def polarity_profile(f: Formula) -> dict[int, tuple[int, int]]:
    """Per-atom (positive, negative) occurrence counts.

    The root occurs positively; descending into the left argument of an
    implication flips polarity, descending into the right one preserves it.
    """
    profile: dict[int, tuple[int, int]] = {}
    todo: list[tuple[Formula, Polarity]] = [(f, Polarity.POSITIVE)]
    while todo:
        node, pol = todo.pop()
        if type(node) is Atom:
            pos, neg = profile.get(node.ident, (0, 0))
            if pol is Polarity.POSITIVE:
                profile[node.ident] = (pos + 1, neg)
            else:
                profile[node.ident] = (pos, neg + 1)
        else:
            todo.append((node.left, pol.flipped()))
            todo.append((node.right, pol))
    return profile


def is_balanced(f: Formula) -> bool:
    """True iff every atom occurs exactly once positively and once negatively."""
    return all(counts == (1, 1) for counts in polarity_profile(f).values())


# ---------------------------------------------------------------------------
# formula text

def print_formula(f: Formula) -> str:
    """Canonical text: single spaces around ``-o``, parentheses only around
    an implication used as a left operand."""
    if type(f) is Atom:
        return str(f.ident)
    left = print_formula(f.left)
    if type(f.left) is Imp:
        left = f"({left})"
    return f"{left} -o {print_formula(f.right)}"


_FORMULA_TOKEN = re.compile(r"\s*(?:(\d+)|(-o)|(\()|(\)))")


def _tokenize_formula(s: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(s):
        m = _FORMULA_TOKEN.match(s, pos)
        if m is None:
            rest = s[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {s[bad]!r}", bad)
        nat, arrow, lpar, rpar = m.groups()
        if nat is not None:
            tokens.append(("nat", nat, m.start(1)))
        elif arrow is not None:
            tokens.append(("-o", arrow, m.start(2)))
        elif lpar is not None:
            tokens.append(("(", lpar, m.start(3)))
        else:
            tokens.append((")", rpar, m.start(4)))
        pos = m.end()
    tokens.append(("end", "", len(s)))
    return tokens


def parse_formula(s: str) -> Formula:
    """Parse ``A -o B`` text; ``-o`` is right-associative."""
    tokens = _tokenize_formula(s)
    index = 0

    def peek() -> tuple[str, str, int]:
        return tokens[index]

    def advance() -> tuple[str, str, int]:
        nonlocal index
        tok = tokens[index]
        index += 1
        return tok

    def parse_atom() -> Formula:
        kind, text, pos = advance()
        if kind == "nat":
            return Atom(int(text))
        if kind == "(":
            inner = parse_imp()
            kind, _, pos = advance()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return inner
        raise ParseError(f"expected atom or '(', got {text or 'end of input'!r}", pos)

    def parse_imp() -> Formula:
        left = parse_atom()
        if peek()[0] == "-o":
            advance()
            return Imp(left, parse_imp())
        return left

    result = parse_imp()
    kind, text, pos = peek()
    if kind != "end":
        raise ParseError(f"trailing input {text!r}", pos)
    return result


# ---------------------------------------------------------------------------
# term text

def print_term(t: Term) -> str:
    """Canonical text: ``l(x<k>,<body>)``, ``a(<fun>,<arg>)``, ``x<k>``."""
    if type(t) is Var:
        return f"x{t.binder}"
    if type(t) is Lam:
        return f"l(x{t.binder},{print_term(t.body)})"
    return f"a({print_term(t.fun)},{print_term(t.arg)})"


_TERM_TOKEN = re.compile(r"\s*(?:(x\d+)|([la])\s*\(|(,)|(\)))")


def parse_term(s: str) -> Term:
    """Parse the ``l``/``a``/``x<k>`` term text.

    Rejects a term in which two lambda nodes share a binder id.
    """
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def expect(ch: str) -> None:
        nonlocal pos
        skip_ws()
        if pos >= len(s) or s[pos] != ch:
            raise ParseError(f"expected {ch!r}", pos)
        pos += 1

    def parse_node() -> Term:
        nonlocal pos
        skip_ws()
        m = _TERM_TOKEN.match(s, pos)
        if m is None:
            raise ParseError("expected 'l(', 'a(' or a variable", pos)
        var, con, _, _ = m.group(1), m.group(2), m.group(3), m.group(4)
        if var is not None:
            pos = m.end()
            return Var(int(var[1:]))
        if con == "l":
            pos = m.end()
            skip_ws()
            vm = re.match(r"x(\d+)", s[pos:])
            if vm is None:
                raise ParseError("expected a binder variable", pos)
            binder = int(vm.group(1))
            pos += vm.end()
            expect(",")
            body = parse_node()
            expect(")")
            return Lam(binder, body)
        if con == "a":
            pos = m.end()
            fun = parse_node()
            expect(",")
            arg = parse_node()
            expect(")")
            return App(fun, arg)
        raise ParseError("expected 'l(', 'a(' or a variable", pos)

    term = parse_node()
    skip_ws()
    if pos != len(s):
        raise ParseError(f"trailing input {s[pos]!r}", pos)
    seen: set[int] = set()
    for node in iter_subterms(term):
        if type(node) is Lam:
            if node.binder in seen:
                raise ParseError(f"duplicate binder id x{node.binder}", 0)
            seen.add(node.binder)
    return term


def iter_subterms(t: Term) -> Iterator[Term]:
    todo = [t]
    while todo:
        node = todo.pop()
        yield node
        if type(node) is Lam:
            todo.append(node.body)
        elif type(node) is App:
            todo.append(node.arg)
            todo.append(node.fun)


# ---------------------------------------------------------------------------
# postfix wire format
#
# Tokens, space separated: a decimal integer is a de Bruijn index
# (0 = innermost binder), '@' applies (fun emitted first, then arg),
# '^' wraps the preceding complete tree in a lambda.

def to_postfix(t: Term) -> list[str]:
    tokens: list[str] = []

    def emit(node: Term, scope: list[int]) -> None:
        if type(node) is Var:
            # innermost binder is the most recently pushed scope entry
            for depth, b in enumerate(reversed(scope)):
                if b == node.binder:
                    tokens.append(str(depth))
                    break
            else:
                raise OpenTermError(f"unbound variable x{node.binder}")
        elif type(node) is Lam:
            scope.append(node.binder)
            emit(node.body, scope)
            scope.pop()
            tokens.append("^")
        else:
            emit(node.fun, scope)
            emit(node.arg, scope)
            tokens.append("@")

    emit(t, [])
    return tokens


def from_postfix(tokens: list[str]) -> Term:
    """Inverse of to_postfix; binder ids are reassigned in preorder."""
    stack: list[Term] = []
    for i, tok in enumerate(tokens):
        if tok == "@":
            if len(stack) < 2:
                raise ValueError(f"'@' at token {i} with fewer than two subtrees")
            arg = stack.pop()
            fun = stack.pop()
            stack.append(App(fun, arg))
        elif tok == "^":
            if not stack:
                raise ValueError(f"'^' at token {i} with no subtree")
            # binder id -1 is a placeholder until the preorder renumbering
            stack.append(Lam(-1, stack.pop()))
        else:
            try:
                index = int(tok)
            except ValueError:
                raise ValueError(f"unknown token {tok!r} at position {i}") from None
            if index < 0:
                raise ValueError(f"negative de Bruijn index at position {i}")
            stack.append(Var(-2 - index))  # de Bruijn index stashed in the id
    if len(stack) != 1:
        raise ValueError(f"token stream leaves {len(stack)} trees, expected 1")

    counter = 0

    def assign(node: Term, scope: list[int]) -> Term:
        nonlocal counter
        if type(node) is Var:
            index = -2 - node.binder
            if index >= len(scope):
                raise ValueError(f"unbound de Bruijn index {index}")
            return Var(scope[-1 - index])
        if type(node) is Lam:
            binder = counter
            counter += 1
            scope.append(binder)
            body = assign(node.body, scope)
            scope.pop()
            return Lam(binder, body)
        return App(assign(node.fun, scope), assign(node.arg, scope))

    return assign(stack[0], [])


def canonical_binders(t: Term) -> Term:
    """Rename binder ids to 0,1,2,... in preorder (alpha-normal form)."""
    counter = 0
    mapping: dict[int, int] = {}

    def rename(node: Term) -> Term:
        nonlocal counter
        if type(node) is Var:
            return Var(mapping[node.binder])
        if type(node) is Lam:
            mapping[node.binder] = counter
            counter += 1
            return Lam(mapping[node.binder], rename(node.body))
        return App(rename(node.fun), rename(node.arg))

    return rename(t)
