"""Reverse-mode prover for balanced implicational formulas.

A balanced formula (every atom once positive, once negative) of size 2n+1 is
linearly provable exactly when it is the principal type of some linear
normal form of size n, and by the size-preserving bijection there is at most
one such term.  So instead of proof search in a sequent calculus, this
module runs the typed normal-form generator with its goal type seeded to the
input formula as a ground tree: the generator's own unification steps then
prune the search to candidates compatible with the goal, and the first
completed term is the unique proof.

Unbalanced formulas are out of this prover's domain and map to None without
search; callers can distinguish "inapplicable" from "balanced but unprovable"
through analyze_balance.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from lintaut.syntax import Atom, Formula, Imp, Term, formula_size, is_balanced, polarity_profile
from lintaut.terms import _typed_stream
from lintaut.unify import BindingStore, MetaType, TAtom, TImp


class BalanceReport(NamedTuple):
    balanced: bool
    pair_count: Optional[int]  # distinct atoms, each once per polarity
    n: Optional[int]           # term-size parameter, formula size = 2n+1


def analyze_balance(f: Formula) -> BalanceReport:
    """Balance verdict plus the derived search parameters."""
    if not is_balanced(f):
        return BalanceReport(False, None, None)
    return BalanceReport(True, len(polarity_profile(f)), formula_size(f) // 2)


def _ground(f: Formula) -> MetaType:
    if type(f) is Atom:
        return TAtom(f.ident)
    return TImp(_ground(f.left), _ground(f.right))


def balanced_proof_terms(f: Formula) -> Iterator[Term]:
    """The full goal-seeded search stream; empty for unbalanced input.

    The bijection promises at most one solution, so callers normally take
    the first; the stream form exists so tests can check there is no second.
    """
    report = analyze_balance(f)
    if not report.balanced:
        return
    store = BindingStore()
    # user input is untrusted, so the occurs check stays on here; the pure
    # generation mode in terms.py can rely on structure instead
    yield from _typed_stream(report.n, _ground(f), store, True, None, None)


def prove_balanced(f: Formula) -> Optional[Term]:
    """The unique linear normal form whose principal type is f, or None if
    f is unbalanced (inapplicable) or balanced but unprovable."""
    return next(balanced_proof_terms(f), None)
