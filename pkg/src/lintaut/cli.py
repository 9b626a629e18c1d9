"""Command-line interface: gen, prove, count, dataset.

Exit codes: 0 success/proved; 1 not proved; 2 usage error or method
inapplicable; 3 formula parse error; 4 count or dataset validation mismatch.

The environment variable LINTAUT_MAX_SIZE caps the size accepted by any
subcommand; without it only the typed-nf family (and the dataset command,
which emits it) has a default cap of 8, the largest size with a pinned
expected count.
"""

from __future__ import annotations

import argparse
import os
import sys
from itertools import islice
from typing import Iterator, Optional

from lintaut import _sweep, balanced, counts, dataset, formulas, ljt, terms
from lintaut.syntax import (
    ParseError,
    parse_formula,
    print_formula,
    print_term,
    to_postfix,
)

TERM_FAMILIES = ("almost-linear", "linear", "affine", "nf")
PAIR_FAMILIES = ("typed-nf", "theorems-ljt", "theorems-balanced")


def _size_cap(family: Optional[str]) -> Optional[int]:
    env = os.environ.get("LINTAUT_MAX_SIZE")
    if env is not None:
        return int(env)
    if family == "typed-nf":
        return 8
    return None


def _check_cap(size: int, family: Optional[str]) -> Optional[str]:
    if size < 0:
        return "size must be nonnegative"
    cap = _size_cap(family)
    if cap is not None and size > cap:
        return (
            f"size {size} exceeds the safety cap {cap}"
            " (set LINTAUT_MAX_SIZE to raise it)"
        )
    return None


def _render_tree(tree) -> str:
    if tree is None:
        return "*"
    return f"({_render_tree(tree[0])} {_render_tree(tree[1])})"


def _render_skeleton(skel) -> str:
    if skel is None:
        return "*"
    if len(skel) == 1:
        return f"l({_render_skeleton(skel[0])})"
    return f"a({_render_skeleton(skel[0])},{_render_skeleton(skel[1])})"


# ---------------------------------------------------------------------------
# gen

def _gen_lines(family: str, size: int, fmt: str) -> Iterator[str]:
    if family == "trees":
        if fmt == "postfix":
            raise ValueError("postfix format needs a lambda-term family")
        for tree in formulas.gen_trees(size):
            yield _render_tree(tree)
    elif family == "partitions":
        if fmt == "postfix":
            raise ValueError("postfix format needs a lambda-term family")
        for rgs in formulas.set_partitions(size):
            yield " ".join(str(b) for b in rgs)
    elif family == "formulas":
        if fmt == "postfix":
            raise ValueError("postfix format needs a lambda-term family")
        for f in formulas.gen_formulas(size):
            yield print_formula(f)
    elif family == "skeletons":
        if fmt == "postfix":
            raise ValueError("postfix format needs a lambda-term family")
        for skel in terms.linear_motzkin_skeletons(size):
            yield _render_skeleton(skel)
    elif family in TERM_FAMILIES:
        streams = {
            "almost-linear": terms.closed_almost_linear_terms,
            "linear": terms.closed_linear_terms,
            "affine": terms.closed_affine_terms,
            "nf": terms.linear_normal_forms,
        }
        for t in streams[family](size):
            if fmt == "postfix":
                yield " ".join(to_postfix(t))
            elif fmt == "tsv":
                yield f"{print_term(t)}\t{' '.join(to_postfix(t))}"
            else:
                yield print_term(t)
    elif family == "typed-nf":
        for t, f in terms.typed_normal_forms(size):
            if fmt == "postfix":
                yield " ".join(to_postfix(t))
            elif fmt == "tsv":
                yield f"{print_term(t)}\t{print_formula(f)}"
            else:
                yield f"{print_term(t)} : {print_formula(f)}"
    elif family in ("theorems-ljt", "theorems-balanced"):
        if family == "theorems-ljt":
            pairs = ljt.gen_taut(size)
        else:
            pairs = (
                (f, t)
                for f in formulas.gen_formulas(size)
                for t in [balanced.prove_balanced(f)]
                if t is not None
            )
        for f, t in pairs:
            if fmt == "postfix":
                yield " ".join(to_postfix(t))
            elif fmt == "tsv":
                yield f"{print_formula(f)}\t{print_term(t)}"
            else:
                yield f"{print_formula(f)} : {print_term(t)}"
    else:
        raise ValueError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    message = _check_cap(args.size, args.family)
    if message is not None:
        print(message, file=sys.stderr)
        return 2
    lines = _gen_lines(args.family, args.size, args.format)
    if args.limit is not None:
        lines = islice(lines, args.limit)
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        for line in lines:
            out.write(line + "\n")
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    finally:
        if args.out:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# prove

def cmd_prove(args) -> int:
    try:
        goal = parse_formula(args.formula)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    if args.method == "balanced":
        report = balanced.analyze_balance(goal)
        if not report.balanced:
            print("not balanced - method inapplicable")
            return 2
        print(f"balanced: pair_count={report.pair_count} n={report.n}")
        term = balanced.prove_balanced(goal)
        if term is None:
            print("balanced but not provable")
            return 1
    else:
        prover = ljt.prove_lin if args.method == "linear" else ljt.prove_ipc
        term = prover(goal)
        if term is None:
            print("not proved")
            return 1
    print("proved")
    print(f"term: {print_term(term)}")
    print(f"postfix: {' '.join(to_postfix(term))}")
    return 0


# ---------------------------------------------------------------------------
# count

def _plot_counts(family: str, sizes: list[int], observed: list[int], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(s) for s in sizes], observed, color="#4878d0")
    if observed and min(observed) > 0 and max(observed) > 1000:
        ax.set_yscale("log")
    ax.set_xlabel("size")
    ax.set_ylabel("count")
    ax.set_title(f"{family} counts by size")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def cmd_count(args) -> int:
    message = _check_cap(args.max, args.family)
    if message is not None:
        print(message, file=sys.stderr)
        return 2
    sweep_state = None
    if args.family == "theorems-ljt":
        sweep_state = _sweep.SweepState()
    sizes = list(range(args.max + 1))
    observed = []
    mismatches = []
    for n in sizes:
        obs = counts.observed_count(args.family, n, sweep_state)
        observed.append(obs)
        if args.check:
            entry = counts.expected_count(args.family, n)
            if entry is None:
                print(f"{args.family}\t{n}\t{obs}\t-\tunpinned")
            else:
                status = "ok" if obs == entry.expected else "MISMATCH"
                if status == "MISMATCH":
                    mismatches.append((n, obs, entry.expected))
                print(
                    f"{args.family}\t{n}\t{obs}\t{entry.expected}"
                    f"\t{entry.provenance}\t{status}"
                )
        else:
            print(f"{args.family}\t{n}\t{obs}")
    if args.plot:
        _plot_counts(args.family, sizes, observed, args.plot)
    if mismatches:
        for n, obs, exp in mismatches:
            print(
                f"count mismatch: {args.family} size {n}:"
                f" observed {obs} expected {exp}",
                file=sys.stderr,
            )
        return 4
    return 0


# ---------------------------------------------------------------------------
# dataset

def cmd_dataset(args) -> int:
    message = _check_cap(args.size, "typed-nf")
    if message is not None:
        print(message, file=sys.stderr)
        return 2
    out = args.out or f"dataset-n{args.size}.tsv"
    try:
        paths = dataset.write_dataset(
            args.size, out, shards=args.shards, latex_comments=args.latex_comments
        )
    except dataset.DatasetError as exc:
        print(f"dataset validation failed: {exc}", file=sys.stderr)
        return 4
    total = sum(
        1 for path in paths for _ in dataset.read_records(path)
    )
    names = ", ".join(str(p) for p in paths)
    print(f"wrote {total} records to {names}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lintaut",
        description="Enumerate and prove implicational linear-logic theorems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="stream one enumeration family")
    gen.add_argument("family", choices=counts.FAMILIES)
    gen.add_argument("--size", type=int, required=True)
    gen.add_argument("--limit", type=int, default=None)
    gen.add_argument("--format", choices=("text", "tsv", "postfix"), default="text")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    prove = sub.add_parser("prove", help="prove one formula")
    prove.add_argument("formula")
    prove.add_argument("--method", choices=("ljt", "linear", "balanced"), default="linear")
    prove.set_defaults(func=cmd_prove)

    count = sub.add_parser("count", help="count a family per size")
    count.add_argument("family", choices=counts.FAMILIES)
    count.add_argument("--max", type=int, required=True)
    count.add_argument("--check", action="store_true")
    count.add_argument("--plot", default=None, metavar="PATH")
    count.set_defaults(func=cmd_count)

    data = sub.add_parser("dataset", help="emit the typed normal-form dataset")
    data.add_argument("--size", type=int, required=True)
    data.add_argument("--out", default=None)
    data.add_argument("--shards", type=int, default=1)
    data.add_argument("--latex-comments", action="store_true")
    data.set_defaults(func=cmd_dataset)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
