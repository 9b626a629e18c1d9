"""Committed-choice LJT prover for implicational intuitionistic logic.

prove_ipc returns at most one proof term per formula; the search commits
at the same points the contraction-free sequent calculus allows, so the
result is a function of the input.  prove_lin keeps the proof only when it
is linear, and gen_taut sweeps a whole formula size through prove_lin.

The extracted terms are always in normal form: an application's function
part is a hypothesis fragment, which is a variable or another application.
When the axiom step reuses a hypothesis, its fragment appears twice in
the output, so a raw prove_ipc term can repeat a binder id; the linearity
filter counts variable occurrences over the unfolded tree, which rejects
every such reuse (same verdict as marking binders and failing on a second
visit).
"""

from __future__ import annotations

from typing import Iterator, Optional

from lintaut.formulas import gen_formulas
from lintaut.syntax import App, Atom, Formula, Imp, Lam, Term, Var

# a context is a list of (proof fragment, formula) pairs, newest first
Context = list[tuple[Term, Formula]]


def head_of(f: Formula) -> int:
    """Rightmost atom reached by descending right children."""
    while type(f) is Imp:
        f = f.right
    return f.ident


def prove_ipc(goal: Formula) -> Optional[Term]:
    """Prove the goal in the empty context; None when unprovable.

    Search discipline, with COMMIT marking choice points that are frozen:
      1. axiom: first hypothesis whose formula equals the goal - COMMIT
      2. goal A -o B: push x:A, prove B, wrap Lam(x, .) - COMMIT
      3. goal atom G: fail unless some hypothesis has head_of = G; then
         scan hypotheses S:(A -o B) in context order and take the first
         whose auxiliary proof of A succeeds - COMMIT - replace it by
         App(S,T):B at the front and reprove G.
    The auxiliary, given A and B from S:(A -o B):
      a. A = C -o D: prove A again under fresh y:(D -o B); T = Lam(y, .)
         - COMMIT (no fallthrough to case b)
      b. A atom: first hypothesis (selected one removed) with formula A.
    """
    counter = 0

    def fresh() -> int:
        nonlocal counter
        counter += 1
        return counter - 1

    def prove(goal: Formula, ctx: Context) -> Optional[Term]:
        for proof, f in ctx:
            if f == goal:
                return proof
        if type(goal) is Imp:
            x = fresh()
            body = prove(goal.right, [(Var(x), goal.left)] + ctx)
            return None if body is None else Lam(x, body)
        g = goal.ident
        if not any(head_of(f) == g for _, f in ctx):
            return None
        for i, (s, f) in enumerate(ctx):
            if type(f) is not Imp:
                continue
            rest = ctx[:i] + ctx[i + 1:]
            t = prove_imp(f.left, f.right, rest)
            if t is None:
                continue
            return prove(goal, [(App(s, t), f.right)] + rest)
        return None

    def prove_imp(a: Formula, b: Formula, ctx: Context) -> Optional[Term]:
        if type(a) is Imp:
            y = fresh()
            body = prove(a, [(Var(y), Imp(a.right, b))] + ctx)
            return None if body is None else Lam(y, body)
        for proof, f in ctx:
            if f == a:
                return proof
        return None

    return prove(goal, [])


def extracted_is_linear(t: Term) -> bool:
    """Linearity of a possibly fragment-sharing extracted term.

    True iff every binder id has exactly one Var occurrence in the tree.
    Agrees with syntax.is_linear whenever binder ids are unique.
    """
    var_counts: dict[int, int] = {}
    lam_ids: set[int] = set()
    todo = [t]
    while todo:
        node = todo.pop()
        if type(node) is Var:
            var_counts[node.binder] = var_counts.get(node.binder, 0) + 1
        elif type(node) is Lam:
            lam_ids.add(node.binder)
            todo.append(node.body)
        else:
            todo.append(node.fun)
            todo.append(node.arg)
    assert set(var_counts) <= lam_ids, "extracted term is open"
    return all(var_counts.get(i, 0) == 1 for i in lam_ids)


def prove_lin(goal: Formula) -> Optional[Term]:
    """prove_ipc's term if it exists and is linear, else None."""
    term = prove_ipc(goal)
    if term is not None and extracted_is_linear(term):
        return term
    return None


def gen_taut(n: int) -> Iterator[tuple[Formula, Term]]:
    """All size-n formulas whose committed-choice proof term is linear."""
    for f in gen_formulas(n):
        term = prove_lin(f)
        if term is not None:
            yield f, term
