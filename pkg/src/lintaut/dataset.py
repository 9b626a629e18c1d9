"""Theorem/proof-term dataset emission and validation.

Record layout is TSV, UTF-8, LF endings:

    id \t n \t formula \t postfixTerm

ids are dense from 0 in generation order within each output file.  With
--latex-comments every record is followed by two "%"-prefixed comment lines
holding LaTeX \\Tree renderings of the proof term and the formula.

Sharded generation partitions the search by its top-level choice points (the
leading-lambda count of the terms, see terms.typed_normal_forms): shard i of
m owns the terms whose leading-lambda count k satisfies k % m == i.  Shards
run in worker threads with no shared mutable state and their record
CONTENTS, as a set of (n, formula, postfixTerm) triples, equal the 1-shard
output; ids restart from 0 in each file, since a global dense numbering
would serialize the shards.  write_dataset validates the union cardinality
against the expected count before returning.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Iterator, NamedTuple, Optional

from lintaut.syntax import (
    Atom,
    Formula,
    Lam,
    Term,
    Var,
    parse_formula,
    print_formula,
    to_postfix,
)
from lintaut.terms import GenStats, typed_normal_forms
from lintaut.counts import expected_count


class DatasetRecord(NamedTuple):
    id: int
    n: int
    formula: str
    postfix: str


class DatasetError(ValueError):
    """Raised when a written dataset fails validation."""


# ---------------------------------------------------------------------------
# LaTeX tree renderings

def latex_term(t: Term) -> str:
    if type(t) is Var:
        return f"x{t.binder}"
    if type(t) is Lam:
        return f"[.{{$\\lambda$x{t.binder}}} {latex_term(t.body)} ]"
    return f"[.@ {latex_term(t.fun)} {latex_term(t.arg)} ]"


def latex_formula(f: Formula) -> str:
    if type(f) is Atom:
        return str(f.ident)
    return f"[.{{$\\multimap$}} {latex_formula(f.left)} {latex_formula(f.right)} ]"


# ---------------------------------------------------------------------------
# writing

def _write_stream(
    path: Path,
    n: int,
    shard: Optional[tuple[int, int]],
    latex_comments: bool,
    stats: Optional[GenStats],
) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        for i, (term, formula) in enumerate(typed_normal_forms(n, shard, stats)):
            postfix = " ".join(to_postfix(term))
            out.write(f"{i}\t{n}\t{print_formula(formula)}\t{postfix}\n")
            if latex_comments:
                out.write(f"% \\Tree {latex_term(term)}\n")
                out.write(f"% \\Tree {latex_formula(formula)}\n")


def write_dataset(
    n: int,
    out_path: str | Path,
    shards: int = 1,
    latex_comments: bool = False,
    stats: Optional[GenStats] = None,
) -> list[Path]:
    """Write all typed_normal_forms(n) records; return the written files.

    With shards == 1 the single file is exactly out_path; with shards == m
    the files are out_path.0 .. out_path.(m-1).  Validation (record count
    and, across shards, distinctness of contents) runs before returning.
    """
    if shards < 1:
        raise ValueError("shards must be >= 1")
    out_path = Path(out_path)
    if shards == 1:
        _write_stream(out_path, n, None, latex_comments, stats)
        paths = [out_path]
    else:
        paths = [out_path.with_name(f"{out_path.name}.{i}") for i in range(shards)]
        stats_parts = [GenStats() if stats is not None else None for _ in paths]
        workers = [
            threading.Thread(
                target=_write_stream,
                args=(path, n, (i, shards), latex_comments, stats_parts[i]),
            )
            for i, path in enumerate(paths)
        ]
        for w in workers:
            w.start()
        for w in workers:
            w.join()
        if stats is not None:
            for part in stats_parts:
                stats.peak_bindings = max(stats.peak_bindings, part.peak_bindings)
                stats.peak_scope = max(stats.peak_scope, part.peak_scope)
                stats.emitted += part.emitted
    validate_dataset(paths, n)
    return paths


# ---------------------------------------------------------------------------
# reading and validation

def read_records(path: str | Path) -> Iterator[DatasetRecord]:
    with open(path, encoding="utf-8") as fin:
        for line in fin:
            if line.startswith("%"):
                continue
            rid, size, formula, postfix = line.rstrip("\n").split("\t")
            yield DatasetRecord(int(rid), int(size), formula, postfix)


def validate_dataset(paths: list[Path], n: int) -> int:
    """Check the shard union: right cardinality, no duplicate contents."""
    seen: set[tuple[int, str, str]] = set()
    total = 0
    for path in paths:
        for record in read_records(path):
            total += 1
            seen.add((record.n, record.formula, record.postfix))
            parse_formula(record.formula)  # must round-trip
    if len(seen) != total:
        raise DatasetError(f"duplicate records across shards: {total - len(seen)}")
    entry = expected_count("typed-nf", n)
    if entry is not None and total != entry.expected:
        raise DatasetError(
            f"record count {total} != expected {entry.expected} at n={n}"
        )
    return total
