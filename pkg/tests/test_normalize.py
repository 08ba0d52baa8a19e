"""The successive-approximation normalization: worked examples and the
valuation-step lemma."""

import random

import pytest

from drwitt import (
    Context,
    Form,
    FormMatrix,
    Weight,
    base_change,
    congruent_matrices,
    curvature,
    frobenius_pullback,
    horizontal_check,
    normalize,
    normalize_step,
)
from drwitt.context import PreconditionError
from drwitt.forms import INF
from drwitt.generate import random_basechange, random_frobenius_structured, tF_image_connection
from drwitt.lifts import FrobeniusLift


def mono(ctx, c, pairs, I=()):
    return Form.monomial(ctx, c, Weight.make(pairs, ctx.p), I)


def test_normalize_step_trivial_when_no_frac():
    ctx = Context(p=3, n=1, m=3)
    N = FormMatrix([[mono(ctx, 1, [(1, 0)], (1,))]])
    bc, out = normalize_step(N)
    assert out == N and bc.matrix == FormMatrix.identity(ctx, 1)


def test_normalize_step_1x1_example():
    ctx = Context(p=3, n=1, m=3)
    N = FormMatrix([[mono(ctx, 3, [(1, 1)], (1,))]])
    bc, out = normalize_step(N)
    # U = 1 - 9 x^{1/3} (stored as its canonical residue)
    expected_U = FormMatrix([[Form.one(ctx) + mono(ctx, 18, [(1, 1)])]])
    assert bc.matrix == expected_U
    assert out.frac_part().is_zero()  # N' dies mod Fil^3 entirely here
    assert out.is_zero()


def test_normalize_step_requires_valuation_one():
    ctx = Context(p=3, n=1, m=3)
    N = FormMatrix([[mono(ctx, 1, [(1, 1)], (1,))]])  # frac part with v_p = 0
    with pytest.raises(PreconditionError):
        normalize_step(N)


def test_normalize_1x1_example():
    ctx = Context(p=3, n=1, m=3)
    N = FormMatrix([[mono(ctx, 3, [(1, 1)], (1,))]])
    out, cum, iters = normalize(N)
    assert iters == 1
    assert out.is_zero()
    assert congruent_matrices(base_change(N, cum), out)


def test_normalize_already_integral_weight():
    ctx = Context(p=3, n=1, m=3)
    N = FormMatrix([[mono(ctx, 1, [(2, 0)], (1,))]])
    out, cum, iters = normalize(N)
    assert iters == 0 and out == N
    assert cum.matrix == FormMatrix.identity(ctx, 1)


def test_valuation_step_lemma_random():
    rng = random.Random(123)
    ctx = Context(p=2, n=2, m=3)
    done = 0
    while done < 8:
        N, _ = random_frobenius_structured(ctx, rng, rng.randint(1, 3))
        s = N.frac_part().vp()
        if s is INF or s < 1:
            continue
        done += 1
        _, out = normalize_step(N)
        s2 = out.frac_part().vp()
        assert s2 is INF or s2 >= s + 1


def test_normalize_roundtrip_to_classical():
    rng = random.Random(5)
    ctx = Context(p=3, n=2, m=3)
    lift = FrobeniusLift.canonical(ctx)
    N0 = tF_image_connection(ctx, rng, 2, lift)
    bc = random_basechange(ctx, rng, 2)
    N = frobenius_pullback(base_change(N0, bc))
    out, cum, iters = normalize(N)
    assert iters <= ctx.m
    assert out.frac_part().is_zero()
    assert curvature(out).is_zero()
    target = frobenius_pullback(N0)
    G = (bc.matrix.frobenius() @ cum.matrix).truncated()
    assert horizontal_check(out, target, G)
