"""Metavariable store with trail-based reversible bindings.

First-order unification over implicational type expressions.  A
BindingStore replaces logic variables: bindings are recorded on a trail so
an enumeration stream can mark a choice point, explore, and undo back to
it.  Undo also discards metavariables allocated after the mark, keeping
live store size proportional to the current search path.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from lintaut.syntax import Atom, Formula, Imp


class Meta(NamedTuple):
    index: int


class TAtom(NamedTuple):
    ident: int


class TImp(NamedTuple):
    left: "MetaType"
    right: "MetaType"


MetaType = Union[Meta, TAtom, TImp]


class MarkToken(NamedTuple):
    depth: int
    trail_len: int
    alloc_len: int


class BindingStore:
    """bindings[i] is the value of Meta(i), or None while unbound."""

    __slots__ = ("bindings", "trail", "marks")

    def __init__(self) -> None:
        self.bindings: list[MetaType | None] = []
        self.trail: list[int] = []
        self.marks: list[MarkToken] = []

    def fresh_meta(self) -> Meta:
        self.bindings.append(None)
        return Meta(len(self.bindings) - 1)

    def walk(self, t: MetaType) -> MetaType:
        """Follow binding chains at the head only."""
        while type(t) is Meta:
            v = self.bindings[t.index]
            if v is None:
                return t
            t = v
        return t

    def resolve(self, t: MetaType) -> MetaType:
        """Substitute all bindings; unbound metavariables resolve to themselves.

        Terminates only on acyclic stores (guaranteed with the occurs check
        on; guaranteed structurally for linear-term type constraints).
        """
        t = self.walk(t)
        if type(t) is TImp:
            return TImp(self.resolve(t.left), self.resolve(t.right))
        return t

    def _occurs(self, index: int, t: MetaType) -> bool:
        todo = [t]
        seen: set[int] = set()
        while todo:
            x = self.walk(todo.pop())
            if type(x) is Meta:
                if x.index == index:
                    return True
            elif type(x) is TImp:
                if id(x) in seen:
                    continue
                seen.add(id(x))
                todo.append(x.left)
                todo.append(x.right)
        return False

    def _bind(self, index: int, t: MetaType) -> None:
        self.bindings[index] = t
        self.trail.append(index)

    def unify(self, a: MetaType, b: MetaType, occurs_check: bool = False) -> bool:
        """Make a and b resolve to identical trees, or leave the store unchanged.

        With the occurs check off, bindings may become cyclic; comparison
        then follows rational-tree semantics (a visited-pair set keeps the
        decomposition finite).
        """
        top = len(self.trail)
        todo = [(a, b)]
        seen: set[tuple[int, int]] = set()
        while todo:
            x, y = todo.pop()
            x = self.walk(x)
            y = self.walk(y)
            if x is y:
                continue
            tx, ty = type(x), type(y)
            if tx is Meta:
                if ty is Meta and y.index == x.index:
                    continue
                if occurs_check and self._occurs(x.index, y):
                    break
                self._bind(x.index, y)
            elif ty is Meta:
                if occurs_check and self._occurs(y.index, x):
                    break
                self._bind(y.index, x)
            elif tx is TAtom and ty is TAtom:
                if x.ident != y.ident:
                    break
            elif tx is TImp and ty is TImp:
                key = (id(x), id(y))
                if key in seen:
                    continue
                seen.add(key)
                todo.append((x.right, y.right))
                todo.append((x.left, y.left))
            else:
                break
        else:
            return True
        while len(self.trail) > top:
            self.bindings[self.trail.pop()] = None
        return False

    def mark(self) -> MarkToken:
        token = MarkToken(len(self.marks), len(self.trail), len(self.bindings))
        self.marks.append(token)
        return token

    def undo_to(self, token: MarkToken) -> None:
        """Remove every binding and metavariable created after the mark."""
        assert token.depth < len(self.marks) and self.marks[token.depth] == token, \
            "stale mark token"
        del self.marks[token.depth:]
        while len(self.trail) > token.trail_len:
            index = self.trail.pop()
            if index < token.alloc_len:
                self.bindings[index] = None
        del self.bindings[token.alloc_len:]

    def is_empty(self) -> bool:
        return not self.bindings and not self.trail and not self.marks

    def canonicalize(self, t: MetaType) -> Formula:
        """Resolved type tree to Formula, leaves renamed 0,1,2,... by first
        occurrence in left-to-right leaf order.

        Leaves must be all Meta (generation mode) or all TAtom (ground mode).
        """
        naming: dict[MetaType, int] = {}
        kinds: set[type] = set()

        def convert(x: MetaType) -> Formula:
            x = self.walk(x)
            if type(x) is TImp:
                left = convert(x.left)
                return Imp(left, convert(x.right))
            kinds.add(type(x))
            if len(kinds) > 1:
                raise ValueError("mixed Meta and TAtom leaves")
            if x not in naming:
                naming[x] = len(naming)
            return Atom(naming[x])

        return convert(t)
