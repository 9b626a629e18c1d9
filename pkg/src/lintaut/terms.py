"""Staged generators for closed lambda terms.

The families, from coarsest to finest:

  linear_motzkin_skeletons   shape only: n binary, n+1 unary, n+1 leaf nodes
  closed_almost_linear_terms leaves may reference any in-scope binder
  closed_affine_terms        every binder used at most once
  closed_linear_terms        every binder used exactly once
  linear_normal_forms        linear and beta-normal (neutral/normal grammar)
  typed_normal_forms         normal forms paired with their principal types

All streams share one budget discipline: a term of size n spends n units on
application nodes and n + 1 units on lambda nodes.  An application pays its
unit before generating its children and a lambda pays before its body, so
hopeless partial candidates are cut off as early as possible.  Binder slots
live on a stack scanned newest-first at variable leaves; usage flags on the
slots implement the at-most-once (affine) and exactly-once (linear) regimes.

Backtracking is plain depth-first search over suspended generators: usage
flags and type bindings are undone whenever a generator resumes, so a stream
holds O(n) live state no matter how many terms it has already emitted.
Binder ids are assigned in preorder (the k-th lambda of an emitted term gets
id k - 1), which keeps output canonical and repeated runs byte-identical.
"""

from __future__ import annotations

from typing import Iterator, Optional, Tuple

from lintaut.syntax import App, Formula, Lam, OpenTermError, Term, Var
from lintaut.unify import BindingStore, MetaType, TImp

# a Skeleton is None for a leaf, a 1-tuple for a lambda over its body, or a
# 2-tuple for an application of a function shape to an argument shape
Skeleton = Optional[Tuple]


class _Slot:
    """One in-scope binder: its id, a usage flag, and (when typing) a type."""

    __slots__ = ("bid", "used", "ty")

    def __init__(self, bid: int, ty: Optional[MetaType] = None):
        self.bid = bid
        self.used = False
        self.ty = ty


# The binder stack is an immutable cons chain: None when empty, else a pair
# (newest slot, rest of the chain).  Each recursive call receives its own
# view, so a suspended sibling generator (the function side of an
# application, paused mid-yield with its own binders half-built) can never
# leak those binders into the argument side's scope.

def _chain_len(scope) -> int:
    n = 0
    while scope is not None:
        n += 1
        scope = scope[1]
    return n


class GenStats:
    """Peak live-state gauges for the streaming-memory harness."""

    __slots__ = ("peak_bindings", "peak_scope", "emitted")

    def __init__(self):
        self.peak_bindings = 0
        self.peak_scope = 0
        self.emitted = 0

    def note(self, store: BindingStore, scope) -> None:
        if len(store.bindings) > self.peak_bindings:
            self.peak_bindings = len(store.bindings)
        depth = _chain_len(scope)
        if depth > self.peak_scope:
            self.peak_scope = depth


# ---------------------------------------------------------------------------
# skeletons

def linear_motzkin_skeletons(n: int) -> Iterator[Skeleton]:
    """All Motzkin trees with n binary, n+1 unary, and n+1 leaf nodes."""

    def go(apps: int, lams: int) -> Iterator[tuple[Skeleton, int, int]]:
        yield None, apps, lams
        if lams:
            for body, a2, l2 in go(apps, lams - 1):
                yield (body,), a2, l2
        if apps:
            for fun, a2, l2 in go(apps - 1, lams):
                for arg, a3, l3 in go(a2, l2):
                    yield (fun, arg), a3, l3

    for tree, apps, lams in go(n, n + 1):
        if apps == 0 and lams == 0:
            yield tree


def skeleton_of(t: Term) -> Skeleton:
    """Erase binder identities, keeping only the node shape."""
    if type(t) is Var:
        return None
    if type(t) is Lam:
        return (skeleton_of(t.body),)
    return (skeleton_of(t.fun), skeleton_of(t.arg))


# ---------------------------------------------------------------------------
# almost-linear terms: closed, but leaves may reuse binders freely

def closed_almost_linear_terms(n: int) -> Iterator[Term]:
    """All closed terms with n applications and n+1 lambdas."""
    total = n + 1

    def go(apps: int, lams: int, scope) -> Iterator[tuple[Term, int, int]]:
        chain = scope
        while chain is not None:
            bid, chain = chain
            yield Var(bid), apps, lams
        if lams:
            bid = total - lams
            for body, a2, l2 in go(apps, lams - 1, (bid, scope)):
                yield Lam(bid, body), a2, l2
        if apps:
            for fun, a2, l2 in go(apps - 1, lams, scope):
                for arg, a3, l3 in go(a2, l2, scope):
                    yield App(fun, arg), a3, l3

    for term, apps, lams in go(n, total, None):
        if apps == 0 and lams == 0:
            yield term


# ---------------------------------------------------------------------------
# affine and linear terms: usage-flagged binder slots

def _decorated(n: int, linear: bool) -> Iterator[Term]:
    total = n + 1

    def go(apps: int, lams: int, scope) -> Iterator[tuple[Term, int, int]]:
        chain = scope
        while chain is not None:
            slot, chain = chain
            if not slot.used:
                slot.used = True
                yield Var(slot.bid), apps, lams
                slot.used = False
        if lams:
            slot = _Slot(total - lams)
            for body, a2, l2 in go(apps, lams - 1, (slot, scope)):
                if slot.used or not linear:
                    yield Lam(slot.bid, body), a2, l2
        if apps:
            for fun, a2, l2 in go(apps - 1, lams, scope):
                for arg, a3, l3 in go(a2, l2, scope):
                    yield App(fun, arg), a3, l3

    for term, apps, lams in go(n, total, None):
        if apps == 0 and lams == 0:
            yield term


def closed_linear_terms(n: int) -> Iterator[Term]:
    """All closed terms with n applications whose binders are used exactly
    once."""
    return _decorated(n, linear=True)


def closed_affine_terms(n: int) -> Iterator[Term]:
    """The at-most-once variant: the exactly-once check at lambda exit is
    dropped, the n+1-lambda budget is kept.

    With n+1 leaves to bind and n+1 binders each usable at most once, every
    completed term in fact uses each binder exactly once, so this stream
    equals closed_linear_terms(n) as a set; it only explores more dead ends
    on the way.
    """
    return _decorated(n, linear=False)


# ---------------------------------------------------------------------------
# linear normal forms: mutual normal/neutral grammar

def linear_normal_forms(n: int) -> Iterator[Term]:
    """All closed linear terms of size n in beta-normal form."""
    total = n + 1

    def normal(apps: int, lams: int, scope) -> Iterator[tuple[Term, int, int]]:
        if lams:
            slot = _Slot(total - lams)
            for body, a2, l2 in normal(apps, lams - 1, (slot, scope)):
                if slot.used:
                    yield Lam(slot.bid, body), a2, l2
        yield from neutral(apps, lams, scope)

    def neutral(apps: int, lams: int, scope) -> Iterator[tuple[Term, int, int]]:
        chain = scope
        while chain is not None:
            slot, chain = chain
            if not slot.used:
                slot.used = True
                yield Var(slot.bid), apps, lams
                slot.used = False
        if apps:
            for fun, a2, l2 in neutral(apps - 1, lams, scope):
                for arg, a3, l3 in normal(a2, l2, scope):
                    yield App(fun, arg), a3, l3

    for term, apps, lams in normal(n, total, None):
        if apps == 0 and lams == 0:
            yield term


# ---------------------------------------------------------------------------
# typed normal forms: the same grammar with fused principal-type inference

def _typed_stream(
    n: int,
    goal: MetaType,
    store: BindingStore,
    occurs_check: bool,
    shard: Optional[tuple[int, int]],
    stats: Optional[GenStats],
) -> Iterator[Term]:
    total = n + 1

    # `spine` counts the lambdas on the unbroken leading chain and is None
    # once generation has moved past it; a shard (index, count) claims the
    # terms whose leading-lambda count k satisfies k % count == index, which
    # partitions the stream by its first choice points.
    def normal(apps, lams, goal, scope, spine):
        if stats is not None:
            stats.note(store, scope)
        if lams:
            mark = store.mark()
            arg_ty = store.fresh_meta()
            body_ty = store.fresh_meta()
            if store.unify(goal, TImp(arg_ty, body_ty), occurs_check):
                slot = _Slot(total - lams, arg_ty)
                deeper = None if spine is None else spine + 1
                inner = normal(apps, lams - 1, body_ty, (slot, scope), deeper)
                for body, a2, l2 in inner:
                    if slot.used:
                        yield Lam(slot.bid, body), a2, l2
            store.undo_to(mark)
        if spine is None or shard is None or spine % shard[1] == shard[0]:
            yield from neutral(apps, lams, goal, scope)

    def neutral(apps, lams, goal, scope):
        if stats is not None:
            stats.note(store, scope)
        chain = scope
        while chain is not None:
            slot, chain = chain
            if not slot.used:
                mark = store.mark()
                if store.unify(goal, slot.ty, occurs_check):
                    slot.used = True
                    yield Var(slot.bid), apps, lams
                    slot.used = False
                store.undo_to(mark)
        if apps:
            mark = store.mark()
            arg_ty = store.fresh_meta()
            for fun, a2, l2 in neutral(apps - 1, lams, TImp(arg_ty, goal), scope):
                for arg, a3, l3 in normal(a2, l2, arg_ty, scope, None):
                    yield App(fun, arg), a3, l3
            store.undo_to(mark)

    for term, apps, lams in normal(n, total, goal, None, 0):
        if apps == 0 and lams == 0:
            yield term


def typed_normal_forms(
    n: int,
    shard: Optional[tuple[int, int]] = None,
    stats: Optional[GenStats] = None,
) -> Iterator[tuple[Term, Formula]]:
    """All pairs (t, principal type of t) for t in linear_normal_forms(n).

    Inference runs inside the generator: each binder slot carries a type
    metavariable, the variable rule unifies the goal with its slot's type,
    and the application rule splits the goal into argument and result.  The
    emitted formula is canonicalized, so metavariables never escape.

    shard=(index, count) restricts the stream to its index-th partition; the
    union of the count partitions equals the full stream.  stats, when
    given, records peak live-state sizes.
    """
    if shard is not None:
        index, count = shard
        if not 0 <= index < count:
            raise ValueError("shard index out of range")
    store = BindingStore()
    root = store.fresh_meta()
    for term in _typed_stream(n, root, store, False, shard, stats):
        if stats is not None:
            stats.emitted += 1
        yield term, store.canonicalize(root)


# ---------------------------------------------------------------------------
# standalone principal-type inference

def infer_principal_type(t: Term) -> Optional[Formula]:
    """Principal simple type of a closed term, canonicalized; None if the
    term is untypable (the occurs check is on, so self-application fails
    rather than building a cyclic type)."""
    store = BindingStore()
    env: dict[int, MetaType] = {}

    def walk(node: Term) -> Optional[MetaType]:
        if type(node) is Var:
            if node.binder not in env:
                raise OpenTermError(f"unbound variable x{node.binder}")
            return env[node.binder]
        if type(node) is Lam:
            arg_ty = store.fresh_meta()
            env[node.binder] = arg_ty
            body_ty = walk(node.body)
            if body_ty is None:
                return None
            return TImp(arg_ty, body_ty)
        fun_ty = walk(node.fun)
        if fun_ty is None:
            return None
        arg_ty = walk(node.arg)
        if arg_ty is None:
            return None
        result = store.fresh_meta()
        if not store.unify(fun_ty, TImp(arg_ty, result), occurs_check=True):
            return None
        return result

    ty = walk(t)
    if ty is None:
        return None
    return store.canonicalize(ty)
