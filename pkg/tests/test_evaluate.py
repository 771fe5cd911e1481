import random

import pytest

from tracelift.cochains import (
    build_Psi0,
    build_Psi_n1,
    build_S,
    build_S_even,
    build_S_tilde,
    evaluate,
    expand_inner,
    split_adjacency,
)
from tracelift.combinatorics import enumerate_a_even
from tracelift.context import random_matrix_context
from tracelift.cohomology import sample_args
from tracelift.naive import naive_evaluate


def ctx_for(n, seed=3, commuting=False):
    return random_matrix_context(random.Random(seed), n, 3, commuting=commuting)


def test_evaluate_is_antisymmetric_in_arguments():
    ctx = ctx_for(2)
    desc = build_Psi0(2, 1)
    rng = random.Random(0)
    args = sample_args(ctx, 3, rng)
    swapped = (args[1], args[0], args[2])
    assert evaluate(desc, ctx, swapped) == -evaluate(desc, ctx, args)


def test_evaluate_matches_naive_on_q_descriptors():
    ctx = ctx_for(2)
    desc = build_Psi_n1(2)
    rng = random.Random(1)
    for _ in range(3):
        args = sample_args(ctx, 3, rng)
        assert evaluate(desc, ctx, args) == naive_evaluate(desc, ctx, args)


@pytest.mark.parametrize("n,l", [(1, 1), (2, 1)])
def test_evaluate_matches_naive_on_plain_descriptors(n, l):
    ctx = ctx_for(n, seed=9)
    desc = build_S_even(n, l)
    rng = random.Random(2)
    args = sample_args(ctx, desc.arity, rng)
    assert evaluate(desc, ctx, args) == naive_evaluate(desc, ctx, args)


def test_inner_expansion_preserves_values():
    ctx = ctx_for(2)
    desc = build_Psi0(2, 1)
    ec = expand_inner(desc)
    rng = random.Random(4)
    for _ in range(3):
        args = sample_args(ctx, 3, rng)
        assert ec.evaluate(ctx, args) == evaluate(desc, ctx, args)


def test_adjacency_split_partitions_value():
    ctx = ctx_for(2, seed=6)
    ec = expand_inner(build_Psi0(2, 1))
    tilde, rem = split_adjacency(ec)
    assert len(tilde.words) + len(rem.words) == len(ec.words)
    rng = random.Random(5)
    args = sample_args(ctx, 3, rng)
    assert tilde.evaluate(ctx, args) + rem.evaluate(ctx, args) == ec.evaluate(ctx, args)


def test_expand_inner_doubles_per_derivation_slot():
    desc = build_S(enumerate_a_even(2, 1)[0])
    assert len(expand_inner(desc).words) == 4


def test_wrapped_words_are_symbolic_only():
    ctx = ctx_for(2)
    desc = build_S_tilde(enumerate_a_even(2, 1)[0])
    rng = random.Random(7)
    args = sample_args(ctx, 4, rng)
    with pytest.raises(ValueError):
        evaluate(desc, ctx, args)


def test_arity_mismatch_rejected():
    ctx = ctx_for(2)
    desc = build_Psi0(2, 1)
    with pytest.raises(ValueError):
        evaluate(desc, ctx, (ctx.sample(random.Random(0)),))
