"""Tests for the command-line interface and dataset emission."""

from __future__ import annotations

import pytest

from lintaut import counts
from lintaut.cli import main
from lintaut.counts import CountEntry
from lintaut.dataset import read_records, write_dataset
from lintaut.syntax import (
    from_postfix,
    is_linear,
    is_normal_form,
    parse_formula,
)
from lintaut.terms import infer_principal_type


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# gen

def test_gen_formulas_size2(capsys):
    code, out, _ = run(capsys, "gen", "formulas", "--size", "2")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 10
    assert "0 -o 1 -o 2" in lines
    assert "(0 -o 0) -o 1" in lines


def test_gen_typed_nf_size1(capsys):
    code, out, _ = run(capsys, "gen", "typed-nf", "--size", "1")
    assert code == 0
    assert out.splitlines() == [
        "l(x0,l(x1,a(x1,x0))) : 0 -o (0 -o 1) -o 1",
        "l(x0,l(x1,a(x0,x1))) : (0 -o 1) -o 0 -o 1",
        "l(x0,a(x0,l(x1,x1))) : ((0 -o 0) -o 1) -o 1",
    ]


def test_gen_theorems_ljt_size3(capsys):
    code, out, _ = run(capsys, "gen", "theorems-ljt", "--size", "3")
    assert code == 0
    assert len(out.splitlines()) == 4
    assert "0 -o (0 -o 1) -o 1 : l(x0,l(x1,a(x1,x0)))" in out.splitlines()


def test_gen_theorems_balanced_matches_ljt_count_at_size1(capsys):
    code, out, _ = run(capsys, "gen", "theorems-balanced", "--size", "1")
    assert code == 0
    assert out.splitlines() == ["0 -o 0 : l(x0,x0)"]


def test_gen_limit(capsys):
    code, out, _ = run(capsys, "gen", "nf", "--size", "2", "--limit", "5")
    assert code == 0
    assert len(out.splitlines()) == 5


def test_gen_postfix_format(capsys):
    code, out, _ = run(capsys, "gen", "nf", "--size", "0", "--format", "postfix")
    assert code == 0
    assert out.splitlines() == ["0 ^"]


def test_gen_postfix_rejected_for_formula_family(capsys):
    code, _, err = run(capsys, "gen", "formulas", "--size", "1", "--format", "postfix")
    assert code == 2
    assert "postfix" in err


def test_gen_out_file_deterministic(tmp_path, capsys):
    first = tmp_path / "a.txt"
    second = tmp_path / "b.txt"
    assert run(capsys, "gen", "linear", "--size", "2", "--out", str(first))[0] == 0
    assert run(capsys, "gen", "linear", "--size", "2", "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_bytes().splitlines()) == 60


# ---------------------------------------------------------------------------
# prove

def test_prove_linear_proved(capsys):
    code, out, _ = run(capsys, "prove", "0 -o (0 -o 1) -o 1", "--method", "linear")
    assert code == 0
    assert "term: l(x0,l(x1,a(x1,x0)))" in out
    assert "postfix: 0 1 @ ^ ^" in out


def test_prove_not_proved(capsys):
    code, out, _ = run(capsys, "prove", "0 -o 1 -o 0", "--method", "linear")
    assert code == 1
    assert "not proved" in out


def test_prove_balanced_inapplicable(capsys):
    code, out, _ = run(capsys, "prove", "0 -o 1 -o 0", "--method", "balanced")
    assert code == 2
    assert "inapplicable" in out


def test_prove_balanced_unprovable(capsys):
    code, out, _ = run(capsys, "prove", "(0 -o 0) -o 1 -o 1", "--method", "balanced")
    assert code == 1
    assert "balanced but not provable" in out


def test_prove_parse_error(capsys):
    code, _, err = run(capsys, "prove", "0 -o -o 1")
    assert code == 3
    assert "parse error" in err


def test_prove_ljt_method_accepts_nonlinear(capsys):
    code, out, _ = run(capsys, "prove", "0 -o 1 -o 0", "--method", "ljt")
    assert code == 0
    assert "term: l(x0,l(x1,x0))" in out


# ---------------------------------------------------------------------------
# count

def test_count_check_passes(capsys):
    code, out, _ = run(capsys, "count", "linear", "--max", "3", "--check")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert lines[3].startswith("linear\t3\t1105\t1105\tpublished (A062980)\tok")


def test_count_without_check(capsys):
    code, out, _ = run(capsys, "count", "trees", "--max", "5")
    assert code == 0
    assert out.splitlines()[5] == "trees\t5\t42"


def test_count_mismatch_exits_4(capsys, monkeypatch):
    broken = [CountEntry(0, 1, "pinned"), CountEntry(1, 99, "pinned")]
    monkeypatch.setitem(counts.COUNT_TABLE, "trees", broken)
    code, out, err = run(capsys, "count", "trees", "--max", "1", "--check")
    assert code == 4
    assert "MISMATCH" in out
    assert "count mismatch: trees size 1: observed 1 expected 99" in err


def test_count_plot_writes_figure(tmp_path, capsys):
    target = tmp_path / "counts.png"
    code, _, _ = run(capsys, "count", "nf", "--max", "3", "--plot", str(target))
    assert code == 0
    assert target.stat().st_size > 0


# ---------------------------------------------------------------------------
# dataset

def test_dataset_size1_records(tmp_path, capsys):
    out = tmp_path / "d.tsv"
    code, text, _ = run(capsys, "dataset", "--size", "1", "--out", str(out))
    assert code == 0
    assert "wrote 3 records" in text
    records = list(read_records(out))
    assert [r.id for r in records] == [0, 1, 2]
    assert records[0].formula == "0 -o (0 -o 1) -o 1"
    assert records[0].postfix == "0 1 @ ^ ^"


def test_dataset_shards_disjoint_union(tmp_path, capsys):
    single = tmp_path / "one.tsv"
    sharded = tmp_path / "two.tsv"
    assert run(capsys, "dataset", "--size", "2", "--out", str(single))[0] == 0
    code, text, _ = run(capsys, "dataset", "--size", "2", "--out", str(sharded), "--shards", "2")
    assert code == 0
    assert "wrote 26 records" in text
    base = {(r.n, r.formula, r.postfix) for r in read_records(single)}
    part0 = {(r.n, r.formula, r.postfix) for r in read_records(tmp_path / "two.tsv.0")}
    part1 = {(r.n, r.formula, r.postfix) for r in read_records(tmp_path / "two.tsv.1")}
    assert part0 and part1
    assert not (part0 & part1)
    assert part0 | part1 == base
    assert len(base) == 26


def test_dataset_latex_comments(tmp_path, capsys):
    out = tmp_path / "d.tsv"
    code, _, _ = run(capsys, "dataset", "--size", "1", "--out", str(out), "--latex-comments")
    assert code == 0
    lines = out.read_text().splitlines()
    comments = [line for line in lines if line.startswith("%")]
    assert len(comments) == 6
    assert comments[0] == "% \\Tree [.{$\\lambda$x0} [.{$\\lambda$x1} [.@ x1 x0 ] ] ]"
    assert len(list(read_records(out))) == 3


def test_dataset_records_round_trip(tmp_path):
    write_dataset(3, tmp_path / "d3.tsv")
    records = list(read_records(tmp_path / "d3.tsv"))
    assert len(records) == 367
    for record in records:
        term = from_postfix(record.postfix.split())
        formula = parse_formula(record.formula)
        assert is_linear(term)
        assert is_normal_form(term)
        assert infer_principal_type(term) == formula


def test_dataset_byte_identical_runs(tmp_path, capsys):
    a = tmp_path / "a.tsv"
    b = tmp_path / "b.tsv"
    assert run(capsys, "dataset", "--size", "2", "--out", str(a))[0] == 0
    assert run(capsys, "dataset", "--size", "2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# safety cap

def test_default_cap_guards_typed_nf(capsys):
    code, _, err = run(capsys, "dataset", "--size", "9")
    assert code == 2
    assert "safety cap" in err
    code, _, err = run(capsys, "gen", "typed-nf", "--size", "9")
    assert code == 2
    assert "safety cap" in err


def test_env_cap_applies_everywhere(capsys, monkeypatch):
    monkeypatch.setenv("LINTAUT_MAX_SIZE", "2")
    code, _, err = run(capsys, "gen", "linear", "--size", "3")
    assert code == 2
    assert "safety cap 2" in err
    assert run(capsys, "gen", "linear", "--size", "2")[0] == 0


def test_negative_size_rejected(capsys):
    code, _, err = run(capsys, "gen", "linear", "--size", "-1")
    assert code == 2
    assert "nonnegative" in err
