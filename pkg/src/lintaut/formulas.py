"""Streaming enumeration of all implicational formulas of a given size.

A formula of size n is a binary tree with n internal nodes (Catalan many
shapes) whose n+1 leaves are labeled by a set partition (Bell many), with
blocks numbered 0,1,2,... in order of first occurrence.  Total count is
Catalan(n) * Bell(n+1), entry A289679.
"""

from __future__ import annotations

from typing import Iterator, Optional, Tuple

from lintaut.syntax import Atom, Formula, Imp

# a TreeSkeleton is None for a leaf or a (left, right) pair
TreeSkeleton = Optional[Tuple["TreeSkeleton", "TreeSkeleton"]]

RGS = Tuple[int, ...]


def gen_trees(n: int) -> Iterator[TreeSkeleton]:
    """All binary trees with n internal nodes, leaf clause tried first."""
    if n < 0:
        raise ValueError("size must be a natural number")

    def go(budget: int) -> Iterator[tuple[TreeSkeleton, int]]:
        yield None, budget
        if budget >= 1:
            for left, mid in go(budget - 1):
                for right, rem in go(mid):
                    yield (left, right), rem

    for tree, rem in go(n):
        if rem == 0:
            yield tree


def set_partitions(k: int) -> Iterator[RGS]:
    """All restricted growth strings of length k in lexicographic order.

    k=0 yields a single empty string (Bell(0) = 1).
    """
    if k < 0:
        raise ValueError("length must be a natural number")
    if k == 0:
        yield ()
        return
    s = [0] * k
    prefix_max = [0] * k  # prefix_max[i] = max(s[0..i])
    while True:
        yield tuple(s)
        i = k - 1
        while i > 0 and s[i] > prefix_max[i - 1]:
            i -= 1
        if i == 0:
            return
        s[i] += 1
        prefix_max[i] = max(prefix_max[i - 1], s[i])
        for j in range(i + 1, k):
            s[j] = 0
            prefix_max[j] = prefix_max[i]


def tree_leaf_count(tree: TreeSkeleton) -> int:
    if tree is None:
        return 1
    return tree_leaf_count(tree[0]) + tree_leaf_count(tree[1])


def decorate_tree(tree: TreeSkeleton, labels: RGS) -> Formula:
    """Label the tree's leaves left to right with the given atom ids."""
    pos = 0

    def build(node: TreeSkeleton) -> Formula:
        nonlocal pos
        if node is None:
            if pos >= len(labels):
                raise ValueError(f"tree has more than {len(labels)} leaves")
            atom = Atom(labels[pos])
            pos += 1
            return atom
        left = build(node[0])
        return Imp(left, build(node[1]))

    formula = build(tree)
    if pos != len(labels):
        raise ValueError(f"tree has {pos} leaves, got {len(labels)} labels")
    return formula


def gen_formulas(n: int) -> Iterator[Formula]:
    """Every canonical-labeled formula of size n, exactly once."""
    if n < 0:
        raise ValueError("size must be a natural number")
    for tree in gen_trees(n):
        for rgs in set_partitions(n + 1):
            yield decorate_tree(tree, rgs)


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def bell(k: int) -> int:
    # Bell triangle; exact integers, no overflow concerns
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def count_formulas(n: int) -> int:
    """Catalan(n) * Bell(n+1) by closed recurrences, without enumeration."""
    if n < 0:
        raise ValueError("size must be a natural number")
    return catalan(n) * bell(n + 1)
