"""Tests for the staged lambda-term generators."""

from __future__ import annotations

import pytest

from lintaut.syntax import (
    App,
    Lam,
    OpenTermError,
    Var,
    binder_usage,
    canonical_binders,
    formula_size,
    is_balanced,
    is_linear,
    is_normal_form,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    term_size,
)
from lintaut.terms import (
    GenStats,
    closed_affine_terms,
    closed_almost_linear_terms,
    closed_linear_terms,
    infer_principal_type,
    linear_motzkin_skeletons,
    linear_normal_forms,
    skeleton_of,
    typed_normal_forms,
)

SKELETON_COUNTS = [1, 6, 70, 1050, 18018, 336336]
LINEAR_COUNTS = [1, 5, 60, 1105, 27120, 828250]
NF_COUNTS = [1, 3, 26, 367, 7142, 176766]

# no published counts exist for these two; the values are pinned from this
# package's own first brute-force computation (cross-checked below against an
# independent decoration-counting oracle)
ALMOST_LINEAR_COUNTS = [1, 9, 284, 15810]
AFFINE_COUNTS = [1, 5, 60, 1105]


def skeleton_nodes(skel):
    """(binary, unary, leaf) node counts of a skeleton."""
    if skel is None:
        return 0, 0, 1
    if len(skel) == 1:
        b, u, l = skeleton_nodes(skel[0])
        return b, u + 1, l
    b1, u1, l1 = skeleton_nodes(skel[0])
    b2, u2, l2 = skeleton_nodes(skel[1])
    return b1 + b2 + 1, u1 + u2, l1 + l2


def count_closed_decorations(skel, depth=0):
    """Independent oracle: the number of ways to point each leaf of the
    skeleton at some enclosing unary node."""
    if skel is None:
        return depth
    if len(skel) == 1:
        return count_closed_decorations(skel[0], depth + 1)
    left = count_closed_decorations(skel[0], depth)
    right = count_closed_decorations(skel[1], depth)
    return left * right


# ---------------------------------------------------------------------------
# skeletons

def test_skeleton_counts():
    for n in range(5):
        assert sum(1 for _ in linear_motzkin_skeletons(n)) == SKELETON_COUNTS[n]


def test_skeleton_n0_is_unary_over_leaf():
    assert list(linear_motzkin_skeletons(0)) == [(None,)]


def test_skeleton_shape_and_uniqueness():
    for n in range(4):
        seen = list(linear_motzkin_skeletons(n))
        assert len(seen) == len(set(seen))
        for skel in seen:
            assert skeleton_nodes(skel) == (n, n + 1, n + 1)


# ---------------------------------------------------------------------------
# almost-linear terms

def test_almost_linear_counts_pinned():
    for n in range(4):
        assert (
            sum(1 for _ in closed_almost_linear_terms(n))
            == ALMOST_LINEAR_COUNTS[n]
        )


def test_almost_linear_counts_against_decoration_oracle():
    for n in range(4):
        expected = sum(
            count_closed_decorations(skel)
            for skel in linear_motzkin_skeletons(n)
        )
        assert ALMOST_LINEAR_COUNTS[n] == expected


def test_almost_linear_terms_are_closed_with_full_budgets():
    for n in range(4):
        for t in closed_almost_linear_terms(n):
            binder_usage(t)  # raises on open terms
            assert term_size(t) == 2 * n + 1


def test_almost_linear_contains_known_witness():
    fig = parse_term("a(a(l(x0,a(l(x1,x0),x0)),l(x2,x2)),l(x3,x3))")
    assert fig in set(closed_almost_linear_terms(3))


# ---------------------------------------------------------------------------
# linear and affine terms

def test_linear_counts():
    for n in range(5):
        assert sum(1 for _ in closed_linear_terms(n)) == LINEAR_COUNTS[n]


def test_linear_n0_is_identity():
    assert list(closed_linear_terms(0)) == [Lam(0, Var(0))]


def test_linear_terms_are_linear_and_closed():
    for n in range(4):
        for t in closed_linear_terms(n):
            assert is_linear(t)
            assert term_size(t) == 2 * n + 1


def test_affine_counts_pinned():
    for n in range(4):
        assert sum(1 for _ in closed_affine_terms(n)) == AFFINE_COUNTS[n]


def test_affine_superset_of_linear():
    # with n+1 leaves to bind and n+1 at-most-once binders the pigeonhole
    # forces every binder to be used, so the sets coincide exactly
    for n in range(4):
        linear = set(closed_linear_terms(n))
        affine = set(closed_affine_terms(n))
        assert linear <= affine
        assert linear == affine


def test_chain_inclusions():
    for n in range(4):
        nf = set(linear_normal_forms(n))
        linear = set(closed_linear_terms(n))
        affine = set(closed_affine_terms(n))
        almost = set(closed_almost_linear_terms(n))
        assert nf <= linear <= affine <= almost


def test_skeleton_membership():
    for n in range(4):
        skeletons = set(linear_motzkin_skeletons(n))
        for t in closed_almost_linear_terms(n):
            assert skeleton_of(t) in skeletons


def test_emitted_terms_use_canonical_binder_ids():
    for n in range(3):
        for t in closed_almost_linear_terms(n):
            assert canonical_binders(t) == t
        for t in closed_linear_terms(n):
            assert canonical_binders(t) == t


# ---------------------------------------------------------------------------
# normal forms

def test_nf_counts():
    for n in range(5):
        assert sum(1 for _ in linear_normal_forms(n)) == NF_COUNTS[n]


def test_nf_n1_exact_set():
    got = {print_term(t) for t in linear_normal_forms(1)}
    assert got == {
        "l(x0,l(x1,a(x0,x1)))",
        "l(x0,l(x1,a(x1,x0)))",
        "l(x0,a(x0,l(x1,x1)))",
    }


def test_nf_terms_are_normal():
    redex = parse_term("l(x0,a(l(x1,x1),x0))")
    for n in range(4):
        for t in linear_normal_forms(n):
            assert is_normal_form(t)
            assert t != redex


def test_nf_equals_filtered_linear():
    for n in range(4):
        filtered = {t for t in closed_linear_terms(n) if is_normal_form(t)}
        assert set(linear_normal_forms(n)) == filtered


# ---------------------------------------------------------------------------
# typed normal forms

def test_typed_counts_and_term_sets():
    for n in range(5):
        pairs = list(typed_normal_forms(n))
        assert len(pairs) == NF_COUNTS[n]
        assert {t for t, _ in pairs} == set(linear_normal_forms(n))


def test_typed_n0():
    assert [
        (print_term(t), print_formula(f)) for t, f in typed_normal_forms(0)
    ] == [("l(x0,x0)", "0 -o 0")]


def test_typed_n1_contains_known_pair():
    pairs = {(print_term(t), print_formula(f)) for t, f in typed_normal_forms(1)}
    assert ("l(x0,l(x1,a(x1,x0)))", "0 -o (0 -o 1) -o 1") in pairs


def test_typed_n3_contains_known_pair():
    # a 4-lambda, 3-application witness, hence n=3
    want = (
        "l(x0,a(a(a(x0,l(x1,x1)),l(x2,x2)),l(x3,x3)))",
        "((0 -o 0) -o (1 -o 1) -o (2 -o 2) -o 3) -o 3",
    )
    pairs = {(print_term(t), print_formula(f)) for t, f in typed_normal_forms(3)}
    assert want in pairs


def test_eureka_sizes_balance_injectivity():
    for n in range(5):
        seen_terms = set()
        seen_types = set()
        for t, f in typed_normal_forms(n):
            assert term_size(t) == 2 * n + 1
            assert formula_size(f) == 2 * n + 1
            assert is_balanced(f)
            seen_terms.add(t)
            seen_types.add(f)
        assert len(seen_terms) == len(seen_types) == NF_COUNTS[n]


def test_infer_agreement():
    for n in range(4):
        for t, f in typed_normal_forms(n):
            assert infer_principal_type(t) == f


def test_shard_union_equals_full_stream():
    full = set(typed_normal_forms(3))
    for ways in (2, 3):
        shards = [set(typed_normal_forms(3, shard=(i, ways))) for i in range(ways)]
        for i in range(ways):
            for j in range(i + 1, ways):
                assert not (shards[i] & shards[j])
        union = set()
        for part in shards:
            union |= part
        assert union == full


def test_shard_index_validation():
    with pytest.raises(ValueError):
        next(typed_normal_forms(2, shard=(2, 2)))
    with pytest.raises(ValueError):
        next(typed_normal_forms(2, shard=(-1, 2)))


def test_stats_peak_state_is_linear_in_n():
    peaks = []
    for n in range(1, 5):
        stats = GenStats()
        count = sum(1 for _ in typed_normal_forms(n, stats=stats))
        assert stats.emitted == count == NF_COUNTS[n]
        assert stats.peak_scope <= n + 1
        assert stats.peak_bindings <= 4 * (n + 2)
        peaks.append(stats.peak_bindings)
    # growth is additive, not multiplicative: stream length grows 26x to
    # 7142 here while peak live state grows by 3 slots per extra unit of n
    assert peaks == [peaks[0] + 3 * i for i in range(len(peaks))]


def test_typed_stream_is_deterministic():
    first = [(print_term(t), print_formula(f)) for t, f in typed_normal_forms(3)]
    second = [(print_term(t), print_formula(f)) for t, f in typed_normal_forms(3)]
    assert first == second


# ---------------------------------------------------------------------------
# principal-type inference

def test_infer_identity():
    assert print_formula(infer_principal_type(parse_term("l(x0,x0)"))) == "0 -o 0"


def test_infer_figure_term():
    t = parse_term("l(x0,l(x1,a(x1,x0)))")
    assert print_formula(infer_principal_type(t)) == "0 -o (0 -o 1) -o 1"


def test_infer_self_application_fails_occurs_check():
    t = Lam(0, App(Var(0), Var(0)))
    assert infer_principal_type(t) is None


def test_infer_nonlinear_simply_typable_term():
    # the K combinator is affine, not linear, yet simply typable
    t = Lam(0, Lam(1, Var(0)))
    assert print_formula(infer_principal_type(t)) == "0 -o 1 -o 0"


def test_infer_open_term_is_a_contract_violation():
    with pytest.raises(OpenTermError):
        infer_principal_type(App(Var(7), Var(7)))


# ---------------------------------------------------------------------------
# nightly stretch

@pytest.mark.nightly
def test_nf_count_n5():
    assert sum(1 for _ in linear_normal_forms(5)) == NF_COUNTS[5]


@pytest.mark.nightly
def test_typed_count_n6():
    assert sum(1 for _ in typed_normal_forms(6)) == 5304356
