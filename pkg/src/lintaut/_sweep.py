"""Compiled formula-sweep kernel for the tautology counts.

Replays the committed-choice prover over every formula of a size without
building Python objects: formulas, contexts and proof terms live in flat
integer arenas, partitions advance in place, and backtracking restores
arena watermarks.  Semantics are locked to ljt.prove_lin; the test suite
cross-validates the two on full sweeps.

Arena encoding
  formula node i: FL[i]/FR[i] = child indices, -1 -1 for a leaf whose atom
    id is FLAB[i]
  context node i: CF[i] formula, CS[i] proof fragment, CN[i] next or -1
  term node i:    TK[i] in {0 var, 1 lam, 2 app}; var/lam keep the binder
    id in TA[i]; lam body in TB[i]; app children in TA[i]/TB[i]
  PTR: next free formula/context/term slot and the fresh binder counter
"""

from __future__ import annotations

import numpy as np
from numba import njit

from lintaut.formulas import TreeSkeleton, gen_trees

ARENA = 1 << 16
STACK = 1 << 16

# PTR slots
_FA, _CA, _TA_, _BID = 0, 1, 2, 3


@njit(cache=True)
def _feq(a, b, FL, FR, FLAB, stack):
    top = 0
    stack[0] = a
    stack[1] = b
    top = 2
    while top > 0:
        y = stack[top - 1]
        x = stack[top - 2]
        top -= 2
        if FL[x] == -1:
            if FL[y] != -1 or FLAB[x] != FLAB[y]:
                return False
        else:
            if FL[y] == -1:
                return False
            stack[top] = FL[x]
            stack[top + 1] = FL[y]
            stack[top + 2] = FR[x]
            stack[top + 3] = FR[y]
            top += 4
    return True


@njit
def _solve(mode, goal, auxb, ctx,
           FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack):
    """mode 0: prove(goal, ctx); mode 1: aux for hypothesis (goal -o auxb).

    Returns a term index or -1; on -1 every arena pointer is restored.
    """
    if (PTR[_FA] >= FL.shape[0] - 1024 or PTR[_CA] >= CF.shape[0] - 1024
            or PTR[_TA_] >= TK.shape[0] - 1024):
        raise RuntimeError("arena overflow")

    fa0 = PTR[_FA]
    ca0 = PTR[_CA]
    ta0 = PTR[_TA_]
    bid0 = PTR[_BID]

    if mode == 1:
        a = goal
        if FL[a] != -1:
            # aux (a): fresh y:(D -o B), prove A, wrap Lam(y, _)
            y = PTR[_BID]
            PTR[_BID] += 1
            fn = PTR[_FA]
            PTR[_FA] += 1
            FL[fn] = FR[a]
            FR[fn] = auxb
            FLAB[fn] = -1
            tv = PTR[_TA_]
            PTR[_TA_] += 1
            TK[tv] = 0
            TA[tv] = y
            cn = PTR[_CA]
            PTR[_CA] += 1
            CF[cn] = fn
            CS[cn] = tv
            CN[cn] = ctx
            e = _solve(0, a, -1, cn,
                       FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack)
            if e == -1:
                PTR[_FA] = fa0
                PTR[_CA] = ca0
                PTR[_TA_] = ta0
                PTR[_BID] = bid0
                return -1
            tl = PTR[_TA_]
            PTR[_TA_] += 1
            TK[tl] = 1
            TA[tl] = y
            TB[tl] = e
            return tl
        # aux (b): first hypothesis whose formula is the atom a
        h = ctx
        while h != -1:
            hf = CF[h]
            if FL[hf] == -1 and FLAB[hf] == FLAB[a]:
                return CS[h]
            h = CN[h]
        return -1

    # clause 1: axiom
    h = ctx
    while h != -1:
        if _feq(CF[h], goal, FL, FR, FLAB, stack):
            return CS[h]
        h = CN[h]

    # clause 2: implication introduction
    if FL[goal] != -1:
        x = PTR[_BID]
        PTR[_BID] += 1
        tv = PTR[_TA_]
        PTR[_TA_] += 1
        TK[tv] = 0
        TA[tv] = x
        cn = PTR[_CA]
        PTR[_CA] += 1
        CF[cn] = FL[goal]
        CS[cn] = tv
        CN[cn] = ctx
        body = _solve(0, FR[goal], -1, cn,
                      FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack)
        if body == -1:
            PTR[_FA] = fa0
            PTR[_CA] = ca0
            PTR[_TA_] = ta0
            PTR[_BID] = bid0
            return -1
        tl = PTR[_TA_]
        PTR[_TA_] += 1
        TK[tl] = 1
        TA[tl] = x
        TB[tl] = body
        return tl

    # clause 3: atom goal
    g = FLAB[goal]
    h = ctx
    found = False
    while h != -1:
        i = CF[h]
        while FL[i] != -1:
            i = FR[i]
        if FLAB[i] == g:
            found = True
            break
        h = CN[h]
    if not found:
        return -1

    p = ctx
    while p != -1:
        pf = CF[p]
        if FL[pf] != -1:
            fa1 = PTR[_FA]
            ca1 = PTR[_CA]
            ta1 = PTR[_TA_]
            bid1 = PTR[_BID]
            # rest = ctx with node p removed, order preserved
            npre = 0
            q = ctx
            while q != p:
                stack[npre] = q
                npre += 1
                q = CN[q]
            if npre >= 512:
                raise RuntimeError("context unexpectedly deep")
            rest = CN[p]
            for k in range(npre - 1, -1, -1):
                src = stack[k]
                cn = PTR[_CA]
                PTR[_CA] += 1
                CF[cn] = CF[src]
                CS[cn] = CS[src]
                CN[cn] = rest
                rest = cn
            t = _solve(1, FL[pf], FR[pf], rest,
                       FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack)
            if t != -1:
                ap = PTR[_TA_]
                PTR[_TA_] += 1
                TK[ap] = 2
                TA[ap] = CS[p]
                TB[ap] = t
                cn = PTR[_CA]
                PTR[_CA] += 1
                CF[cn] = FR[pf]
                CS[cn] = ap
                CN[cn] = rest
                r = _solve(0, goal, -1, cn,
                           FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack)
                if r == -1:
                    PTR[_FA] = fa0
                    PTR[_CA] = ca0
                    PTR[_TA_] = ta0
                    PTR[_BID] = bid0
                return r
            PTR[_FA] = fa1
            PTR[_CA] = ca1
            PTR[_TA_] = ta1
            PTR[_BID] = bid1
        p = CN[p]
    return -1


@njit(cache=True)
def _linear_ok(t, TK, TA, TB, nbinders, counts, lamseen, stack):
    if nbinders > counts.shape[0]:
        raise RuntimeError("binder scratch overflow")
    for i in range(nbinders):
        counts[i] = 0
        lamseen[i] = 0
    top = 0
    stack[top] = t
    top += 1
    while top > 0:
        if top >= stack.shape[0] - 4:
            raise RuntimeError("walk stack overflow")
        top -= 1
        i = stack[top]
        k = TK[i]
        if k == 0:
            b = TA[i]
            counts[b] += 1
            if counts[b] > 1:
                return False
        elif k == 1:
            lamseen[TA[i]] = 1
            stack[top] = TB[i]
            top += 1
        else:
            stack[top] = TA[i]
            stack[top + 1] = TB[i]
            top += 2
    for i in range(nbinders):
        if lamseen[i] == 1 and counts[i] != 1:
            return False
    return True


@njit
def _sweep_shape(nshape, nleaves, leafnodes, leafsign,
                 FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR,
                 stack, rgs, pmax, counts, lamseen, polsum, calls):
    """Count linear tautologies over every leaf partition of one shape.

    A formula accepted by the linear filter is the type of a linear term,
    hence a substitution instance of a balanced principal type, and every
    atom then has equal positive and negative occurrence counts.  That
    per-atom check prunes most partitions before the prover runs; the
    pure-Python reference has no such pruning and full-sweep agreement is
    part of the test suite.
    """
    accepted = 0
    k = nleaves
    for i in range(k):
        rgs[i] = 0
        pmax[i] = 0
        polsum[i] = 0
    while True:
        balanced = True
        for li in range(k):
            polsum[rgs[li]] += leafsign[li]
        for li in range(k):
            if polsum[rgs[li]] != 0:
                balanced = False
            polsum[rgs[li]] = 0
        if balanced:
            for li in range(k):
                FLAB[leafnodes[li]] = rgs[li]
            PTR[_FA] = nshape
            PTR[_CA] = 0
            PTR[_TA_] = 0
            PTR[_BID] = 0
            calls[0] += 1
            r = _solve(0, 0, -1, -1,
                       FL, FR, FLAB, CF, CS, CN, TK, TA, TB, PTR, stack)
            if r != -1 and _linear_ok(r, TK, TA, TB, PTR[_BID],
                                      counts, lamseen, stack):
                accepted += 1
        i = k - 1
        while i > 0 and rgs[i] > pmax[i - 1]:
            i -= 1
        if i == 0:
            return accepted
        rgs[i] += 1
        if rgs[i] > pmax[i - 1]:
            pmax[i] = rgs[i]
        else:
            pmax[i] = pmax[i - 1]
        for j in range(i + 1, k):
            rgs[j] = 0
            pmax[j] = pmax[i]


class SweepState:
    """Preallocated arenas reused across shapes (one enumeration stream)."""

    def __init__(self) -> None:
        self.FL = np.full(ARENA, -1, dtype=np.int64)
        self.FR = np.full(ARENA, -1, dtype=np.int64)
        self.FLAB = np.full(ARENA, -1, dtype=np.int64)
        self.CF = np.zeros(ARENA, dtype=np.int64)
        self.CS = np.zeros(ARENA, dtype=np.int64)
        self.CN = np.zeros(ARENA, dtype=np.int64)
        self.TK = np.zeros(ARENA, dtype=np.int64)
        self.TA = np.zeros(ARENA, dtype=np.int64)
        self.TB = np.zeros(ARENA, dtype=np.int64)
        self.PTR = np.zeros(4, dtype=np.int64)
        self.stack = np.zeros(STACK, dtype=np.int64)
        self.rgs = np.zeros(64, dtype=np.int64)
        self.pmax = np.zeros(64, dtype=np.int64)
        self.counts = np.zeros(1 << 12, dtype=np.int64)
        self.lamseen = np.zeros(1 << 12, dtype=np.int64)
        self.polsum = np.zeros(64, dtype=np.int64)
        self.calls = np.zeros(1, dtype=np.int64)


def load_shape(state: SweepState, tree: TreeSkeleton) -> tuple[int, int, np.ndarray, np.ndarray]:
    """Write one tree shape into the formula arena, preorder, root at 0.

    Returns (node count, leaf count, leaf node ids in left-to-right order,
    leaf polarity signs: +1 at the root, flipped under each Imp left).
    """
    FL, FR, FLAB = state.FL, state.FR, state.FLAB
    leafnodes: list[int] = []
    leafsign: list[int] = []
    next_slot = [0]

    def put(node: TreeSkeleton, sign: int) -> int:
        idx = next_slot[0]
        next_slot[0] += 1
        if node is None:
            FL[idx] = -1
            FR[idx] = -1
            FLAB[idx] = 0
            leafnodes.append(idx)
            leafsign.append(sign)
            return idx
        FL[idx] = put(node[0], -sign)
        FR[idx] = put(node[1], sign)
        FLAB[idx] = -1
        return idx

    root = put(tree, 1)
    assert root == 0
    return (next_slot[0], len(leafnodes),
            np.array(leafnodes, dtype=np.int64),
            np.array(leafsign, dtype=np.int64))


def taut_count(n: int, state: SweepState | None = None) -> int:
    """Number of size-n formulas accepted by the linear filter (compiled)."""
    if n < 0:
        raise ValueError("size must be a natural number")
    if state is None:
        state = SweepState()
    total = 0
    for tree in gen_trees(n):
        nshape, nleaves, leafnodes, leafsign = load_shape(state, tree)
        total += int(_sweep_shape(
            nshape, nleaves, leafnodes, leafsign,
            state.FL, state.FR, state.FLAB,
            state.CF, state.CS, state.CN,
            state.TK, state.TA, state.TB, state.PTR,
            state.stack, state.rgs, state.pmax,
            state.counts, state.lamseen, state.polsum, state.calls))
    return total
