"""Tests for the reverse-mode balanced prover."""

from __future__ import annotations

from itertools import islice

import pytest

from lintaut.balanced import BalanceReport, analyze_balance, balanced_proof_terms, prove_balanced
from lintaut.formulas import gen_formulas
from lintaut.syntax import (
    is_linear,
    is_normal_form,
    parse_formula,
    parse_term,
    print_term,
)
from lintaut.terms import infer_principal_type, typed_normal_forms

NF_COUNTS = [1, 3, 26, 367]


def test_analyze_balance_positive():
    f = parse_formula("0 -o (0 -o 1) -o 1")
    assert analyze_balance(f) == BalanceReport(True, 2, 1)


def test_analyze_balance_missing_polarity():
    assert not analyze_balance(parse_formula("0 -o 1 -o 0")).balanced


def test_analyze_balance_single_atom():
    assert not analyze_balance(parse_formula("0")).balanced


def test_prove_flip():
    t = prove_balanced(parse_formula("0 -o (0 -o 1) -o 1"))
    assert t == parse_term("l(x0,l(x1,a(x1,x0)))")


def test_prove_apply_to_identity():
    t = prove_balanced(parse_formula("((0 -o 0) -o 1) -o 1"))
    assert t == parse_term("l(x0,a(x0,l(x1,x1)))")


def test_unbalanced_input_is_inapplicable():
    # this formula pairs no atom: 0 occurs twice positively, 1 twice
    # negatively, so the balance gate rejects it before any search
    f = parse_formula("(0 -o 1) -o (1 -o 0)")
    assert not analyze_balance(f).balanced
    assert prove_balanced(f) is None


def test_balanced_but_unprovable():
    f = parse_formula("(0 -o 0) -o 1 -o 1")
    assert analyze_balance(f).balanced
    assert prove_balanced(f) is None


def test_sweep_counts():
    assert sum(1 for f in gen_formulas(3) if prove_balanced(f)) == 3
    assert sum(1 for f in gen_formulas(5) if prove_balanced(f)) == 26


def test_even_size_sweep_accepts_nothing():
    assert sum(1 for f in gen_formulas(2) if prove_balanced(f)) == 0


def test_uniqueness_at_sizes_3_and_5():
    for size in (3, 5):
        for f in gen_formulas(size):
            assert len(list(islice(balanced_proof_terms(f), 2))) <= 1


def test_round_trip_against_typed_normal_forms():
    for n in range(4):
        for t, f in typed_normal_forms(n):
            assert prove_balanced(f) == t


def test_soundness_of_returned_terms():
    for f in gen_formulas(5):
        t = prove_balanced(f)
        if t is None:
            continue
        assert is_linear(t)
        assert is_normal_form(t)
        assert infer_principal_type(t) == f


def test_prover_is_pure():
    f = parse_formula("0 -o (0 -o 1) -o 1")
    assert print_term(prove_balanced(f)) == print_term(prove_balanced(f))


@pytest.mark.nightly
def test_uniqueness_at_size_7():
    for f in gen_formulas(7):
        assert len(list(islice(balanced_proof_terms(f), 2))) <= 1
